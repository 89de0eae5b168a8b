#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qswap/protocol.hpp"
#include "qswap/reports.hpp"

using namespace qswap;
using nlohmann::ordered_json;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Normalizes any scalar/array/matrix JSON value to the string the CSV
// writer uses, so both encodings can be compared field for field.
std::string normalize(const ordered_json& v) {
    if (v.is_number()) return g17(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        // array of numbers -> "a;b;c"
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ";";
            out += normalize(v[i]);
        }
        return out;
    }
    if (v.is_object() && v.contains("entries")) {
        std::string out;
        for (std::size_t i = 0; i < v["entries"].size(); ++i) {
            if (i) out += ";";
            out += g17(v["entries"][i][0].get<double>()) + " " +
                   g17(v["entries"][i][1].get<double>());
        }
        return out;
    }
    return v.dump();
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

// CSV blocks separated by blank lines; each block is header + rows.
std::vector<std::vector<std::map<std::string, std::string>>> csv_blocks(const std::string& text) {
    std::vector<std::vector<std::map<std::string, std::string>>> blocks;
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
    for (const std::string& line : split_lines(text)) {
        if (line.empty()) {
            if (!header.empty()) blocks.push_back(rows);
            header.clear();
            rows.clear();
            continue;
        }
        if (header.empty()) {
            header = csv_split(line);
            continue;
        }
        const std::vector<std::string> cells = csv_split(line);
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i)
            row[header[i]] = cells[i];
        rows.push_back(std::move(row));
    }
    if (!header.empty()) blocks.push_back(rows);
    return blocks;
}

// Renormalize a CSV float cell so "0.25" and "0.25000..." compare equal.
std::string norm_num(const std::string& s) {
    if (s.empty()) return s;
    return g17(std::strtod(s.c_str(), nullptr));
}

std::string norm_numlist(const std::string& s, char sep = ';') {
    std::string out, cur;
    for (char c : s + sep) {
        if (c == sep) {
            if (!out.empty()) out += sep;
            out += norm_num(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

std::string norm_matrix(const std::string& s) {
    std::string out, cur;
    for (char c : s + ';') {
        if (c == ';') {
            const std::size_t sp = cur.find(' ');
            if (!out.empty()) out += ';';
            out += norm_num(cur.substr(0, sp)) + " " + norm_num(cur.substr(sp + 1));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("json output is deterministic and schema-shaped") {
    const ExperimentReport report = run_experiment_2();
    const std::string a = to_json(report);
    const std::string b = to_json(run_experiment_2());
    CHECK(a == b);

    const ordered_json doc = ordered_json::parse(a);
    std::vector<std::string> top;
    for (auto it = doc.begin(); it != doc.end(); ++it) top.push_back(it.key());
    CHECK(top == std::vector<std::string>{"experiment", "rows", "summary"});

    REQUIRE(doc["rows"].size() == 4);
    std::vector<std::string> row_keys;
    for (auto it = doc["rows"][0].begin(); it != doc["rows"][0].end(); ++it)
        row_keys.push_back(it.key());
    CHECK(row_keys == std::vector<std::string>{"outcome", "probability", "heralded_state",
                                               "schmidt", "entropy_bits", "concurrence",
                                               "correlators"});
    std::vector<std::string> summary_keys;
    for (auto it = doc["summary"].begin(); it != doc["summary"].end(); ++it)
        summary_keys.push_back(it.key());
    CHECK(summary_keys == std::vector<std::string>{"rho14_avg", "frobenius_to_premeasurement",
                                                   "mixed_concurrence"});
    CHECK(doc["summary"]["rho14_avg"]["rows"] == 4);
    CHECK(doc["summary"]["rho14_avg"]["entries"].size() == 16);

    // floats carry 17 significant digits and round-trip exactly
    CHECK(doc["rows"][0]["probability"].get<double>() == report.rows[0].probability);
    CHECK(doc["rows"][0]["entropy_bits"].get<double>() == *report.rows[0].entropy_bits);
}

TEST_CASE("monte carlo json is byte-stable for a fixed seed") {
    const std::string a = to_json(monte_carlo_experiment(2, 2000, 9));
    const std::string b = to_json(monte_carlo_experiment(2, 2000, 9));
    CHECK(a == b);
    const ordered_json doc = ordered_json::parse(a);
    CHECK(doc["seed"] == 9);
    CHECK(doc["trials"] == 2000);
    CHECK(doc["outcomes"].size() == 4);
}

TEST_CASE("experiment report: csv and json carry the same fields") {
    std::vector<ExperimentReport> reports = {run_experiment_1(), run_experiment_2()};
    // a protocol report with metrics exercises the third CSV block
    const ParseResult pr = parse(
        "prepare singlet(1,2); prepare singlet(3,4); measure bell on (2,3); report "
        "entropy(1|4); report rdm(1,4); report schmidt(1|4);");
    REQUIRE(pr.ok());
    reports.push_back(interpret(*pr.program));

    for (const ExperimentReport& report : reports) {
        const ordered_json doc = ordered_json::parse(to_json(report));
        const auto blocks = csv_blocks(to_csv(report));
        REQUIRE(blocks.size() >= 2);

        const auto& rows = blocks[0];
        REQUIRE(rows.size() == doc["rows"].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const ordered_json& jr = doc["rows"][i];
            CHECK(rows[i].at("outcome") == jr["outcome"].get<std::string>());
            CHECK(norm_num(rows[i].at("probability")) == normalize(jr["probability"]));
            CHECK(rows[i].at("heralded_state") == jr["heralded_state"].get<std::string>());
            CHECK(norm_numlist(rows[i].at("schmidt")) == normalize(jr["schmidt"]));
            CHECK(norm_num(rows[i].at("entropy_bits")) == normalize(jr["entropy_bits"]));
            CHECK(norm_num(rows[i].at("concurrence")) == normalize(jr["concurrence"]));
            CHECK(norm_num(rows[i].at("corr_zz")) == normalize(jr["correlators"]["zz"]));
            CHECK(norm_num(rows[i].at("corr_xx")) == normalize(jr["correlators"]["xx"]));
            CHECK(norm_num(rows[i].at("corr_yy")) == normalize(jr["correlators"]["yy"]));
        }

        const auto& summary = blocks[1];
        REQUIRE(summary.size() == 1);
        CHECK(norm_matrix(summary[0].at("rho14_avg")) == normalize(doc["summary"]["rho14_avg"]));
        CHECK(norm_num(summary[0].at("frobenius_to_premeasurement")) ==
              normalize(doc["summary"]["frobenius_to_premeasurement"]));
        CHECK(norm_num(summary[0].at("mixed_concurrence")) ==
              normalize(doc["summary"]["mixed_concurrence"]));

        // metric rows, when present
        if (blocks.size() > 2) {
            std::size_t csv_metrics = blocks[2].size(), json_metrics = 0;
            for (const auto& jr : doc["rows"])
                if (jr.contains("metrics")) json_metrics += jr["metrics"].size();
            CHECK(csv_metrics == json_metrics);
            std::size_t at = 0;
            for (std::size_t r = 0; r < doc["rows"].size(); ++r) {
                if (!doc["rows"][r].contains("metrics")) continue;
                for (const auto& jm : doc["rows"][r]["metrics"]) {
                    const auto& cm = blocks[2][at++];
                    CHECK(cm.at("row") == std::to_string(r));
                    CHECK(cm.at("metric") == jm["metric"].get<std::string>());
                    const std::string jv = normalize(jm["value"]);
                    std::string cv = cm.at("value");
                    if (cv.find(' ') != std::string::npos)
                        cv = norm_matrix(cv);
                    else if (cv.find(';') != std::string::npos)
                        cv = norm_numlist(cv);
                    else
                        cv = norm_num(cv);
                    CHECK(cv == jv);
                }
            }
        }
    }
}

TEST_CASE("monte carlo report: csv and json parity over random runs") {
    RngStream rng(61, 0);
    for (int it = 0; it < 40; ++it) {
        const std::uint64_t seed = rng.next_u64() % 100000;
        const std::uint64_t trials = 1 + rng.next_u64() % 3000;
        const int id = 1 + static_cast<int>(rng.next_u64() % 2);
        const MonteCarloReport mc = monte_carlo_experiment(id, trials, seed);
        const ordered_json doc = ordered_json::parse(to_json(mc));
        const auto blocks = csv_blocks(to_csv(mc));
        REQUIRE(blocks.size() == 2);
        REQUIRE(blocks[0].size() == 1);
        CHECK(blocks[0][0].at("seed") == std::to_string(seed));
        CHECK(blocks[0][0].at("trials") == std::to_string(trials));
        CHECK(norm_num(blocks[0][0].at("max_abs_deviation")) ==
              normalize(doc["max_abs_deviation"]));
        CHECK(norm_num(blocks[0][0].at("max_sigma_multiple")) ==
              normalize(doc["max_sigma_multiple"]));
        REQUIRE(blocks[1].size() == doc["outcomes"].size());
        for (std::size_t i = 0; i < blocks[1].size(); ++i) {
            CHECK(blocks[1][i].at("outcome") == doc["outcomes"][i]["outcome"].get<std::string>());
            CHECK(blocks[1][i].at("count") ==
                  std::to_string(doc["outcomes"][i]["count"].get<std::uint64_t>()));
            CHECK(norm_num(blocks[1][i].at("frequency")) ==
                  normalize(doc["outcomes"][i]["frequency"]));
            CHECK(norm_num(blocks[1][i].at("probability")) ==
                  normalize(doc["outcomes"][i]["probability"]));
        }
    }
}

TEST_CASE("bell decomposition: csv and json parity") {
    const std::vector<BellTerm> terms = bell_decompose_initial();
    const ordered_json doc = ordered_json::parse(to_json(terms));
    const auto blocks = csv_blocks(to_csv(terms));
    REQUIRE(blocks.size() == 1);
    REQUIRE(blocks[0].size() == doc["terms"].size());
    for (std::size_t i = 0; i < blocks[0].size(); ++i) {
        CHECK(blocks[0][i].at("pair_23") == doc["terms"][i]["pair_23"].get<std::string>());
        CHECK(blocks[0][i].at("pair_14") == doc["terms"][i]["pair_14"].get<std::string>());
        CHECK(norm_num(blocks[0][i].at("coeff_re")) ==
              normalize(doc["terms"][i]["coefficient"][0]));
        CHECK(norm_num(blocks[0][i].at("coeff_im")) ==
              normalize(doc["terms"][i]["coefficient"][1]));
    }
}

TEST_CASE("no-signaling report: csv and json parity, with sweep") {
    const NoSignalingReport r = no_signaling_report();
    const SweepInfo sweep{4242, no_signaling_sweep(7, 4242)};
    const ordered_json doc = ordered_json::parse(to_json(r, sweep));
    const auto blocks = csv_blocks(to_csv(r, sweep));
    REQUIRE(blocks.size() == 4);

    REQUIRE(blocks[0].size() == 3);
    CHECK(norm_matrix(blocks[0][0].at("entries")) == normalize(doc["rho14_initial"]));
    CHECK(norm_matrix(blocks[0][1].at("entries")) == normalize(doc["rho14_after_spin"]));
    CHECK(norm_matrix(blocks[0][2].at("entries")) == normalize(doc["rho14_after_bell"]));

    CHECK(norm_num(blocks[1][0].at("initial_vs_spin")) ==
          normalize(doc["distances"]["initial_vs_spin"]));
    CHECK(norm_num(blocks[1][0].at("spin_vs_bell")) ==
          normalize(doc["distances"]["spin_vs_bell"]));
    CHECK(norm_num(blocks[2][0].at("conc_initial")) ==
          normalize(doc["mixed_concurrence"]["initial"]));

    REQUIRE(blocks[3].size() == doc["sweep"]["distances"].size());
    CHECK(doc["sweep"]["seed"] == 4242);
    for (std::size_t i = 0; i < blocks[3].size(); ++i)
        CHECK(norm_num(blocks[3][i].at("distance")) ==
              normalize(doc["sweep"]["distances"][i]));
}

TEST_CASE("tables render without truncation") {
    const std::string t1 = to_table(run_experiment_1());
    CHECK(t1.find("|-->") != std::string::npos);
    CHECK(t1.find("0.25") != std::string::npos);
    const std::string t2 = to_table(run_experiment_2());
    CHECK(t2.find("Ψ+") != std::string::npos);
    const std::string t3 = to_table(bell_decompose_initial());
    CHECK(t3.find("Φ-") != std::string::npos);
    const std::string t4 = to_table(no_signaling_report());
    CHECK(t4.find("0.25") != std::string::npos);
    const std::string t5 = to_table(monte_carlo_experiment(1, 100, 3));
    CHECK(t5.find("100 trials") != std::string::npos);
}
