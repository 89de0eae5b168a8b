#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

using nlohmann::ordered_json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args) {
    const std::string err_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                                 "/qswap_cli_err.txt";
    const std::string cmd = std::string(QSWAP_CLI_PATH) + " " + args + " 2>" + err_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(err_path);
    std::ostringstream errbuf;
    errbuf << err.rdbuf();
    res.err = errbuf.str();
    return res;
}

std::string write_temp_script(const std::string& name, const std::string& body) {
    const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                             "/" + name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("exp2 json has four quarter-probability, one-ebit rows") {
    const CliResult res = run_cli("exp2 --format json");
    REQUIRE(res.exit_code == 0);
    CHECK(res.err.empty());
    const ordered_json doc = ordered_json::parse(res.out);
    REQUIRE(doc["rows"].size() == 4);
    for (const auto& row : doc["rows"]) {
        CHECK(row["probability"].get<double>() == doctest::Approx(0.25).epsilon(1e-10));
        CHECK(row["entropy_bits"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("json is the default when stdout is a pipe") {
    const CliResult res = run_cli("exp1");
    REQUIRE(res.exit_code == 0);
    REQUIRE_FALSE(res.out.empty());
    CHECK(res.out.front() == '{');
}

TEST_CASE("csv output starts with the documented header") {
    const CliResult res = run_cli("exp1 --format csv");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.rfind("outcome,probability,heralded_state,schmidt,", 0) == 0);
}

TEST_CASE("running the bundled script matches the canned experiment") {
    const CliResult canned = run_cli("exp1 --format json");
    const CliResult scripted =
        run_cli(std::string("run ") + QSWAP_PROTO_DIR + "/experiment1.qproto --format json");
    REQUIRE(canned.exit_code == 0);
    REQUIRE(scripted.exit_code == 0);
    const ordered_json a = ordered_json::parse(canned.out);
    const ordered_json b = ordered_json::parse(scripted.out);
    CHECK(a["rows"] == b["rows"]);
    CHECK(a["summary"] == b["summary"]);
    CHECK(a["experiment"] == 1);
    CHECK(b["experiment"] == 0);
}

TEST_CASE("parse failure exits 3 and points at line 1") {
    const std::string path = write_temp_script("cli_bad.qproto", "measure");
    const CliResult res = run_cli("run " + path);
    CHECK(res.exit_code == 3);
    CHECK(res.out.empty());
    CHECK(res.err.find("line 1") != std::string::npos);
}

TEST_CASE("validation failure exits 3 with the semantic message") {
    const std::string path =
        write_temp_script("cli_undeclared.qproto", "measure spin(z) on 9;\n");
    const CliResult res = run_cli("run " + path);
    CHECK(res.exit_code == 3);
    CHECK(res.err.find("undeclared particle 9") != std::string::npos);
    CHECK(res.err.find("line 1") != std::string::npos);
}

TEST_CASE("usage problems exit 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("--bogus").exit_code == 2);
    CHECK(run_cli("exp1 --format yaml").exit_code == 2);
    CHECK(run_cli("sample exp3 --trials 5").exit_code == 2);
    CHECK(run_cli("sample exp1").exit_code == 2);  // --trials is required
    CHECK(run_cli("run /nonexistent/file.qproto").exit_code == 2);
}

TEST_CASE("help exits 0") {
    const CliResult res = run_cli("--help");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("exp1") != std::string::npos);
}

TEST_CASE("sampling is reproducible byte for byte") {
    const std::string args = "sample exp2 --trials 3000 --seed 11 --format json";
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const ordered_json doc = ordered_json::parse(a.out);
    CHECK(doc["trials"] == 3000);
    std::uint64_t total = 0;
    for (const auto& o : doc["outcomes"]) total += o["count"].get<std::uint64_t>();
    CHECK(total == 3000);
}

TEST_CASE("run --mode sampled emits a monte carlo report") {
    const CliResult res = run_cli(std::string("run ") + QSWAP_PROTO_DIR +
                                  "/experiment2.qproto --mode sampled --trials 500 --seed 3 "
                                  "--format json");
    REQUIRE(res.exit_code == 0);
    const ordered_json doc = ordered_json::parse(res.out);
    CHECK(doc["seed"] == 3);
    CHECK(doc["trials"] == 500);
    CHECK(doc["outcomes"].size() == 4);
}

TEST_CASE("nosignal sweep rows land under the bound") {
    const CliResult res = run_cli("nosignal --sweep 3 --format json");
    REQUIRE(res.exit_code == 0);
    const ordered_json doc = ordered_json::parse(res.out);
    CHECK(doc["sweep"]["count"] == 3);
    for (const auto& d : doc["sweep"]["distances"]) CHECK(d.get<double>() < 1e-9);
}

TEST_CASE("decompose emits the four diagonal terms") {
    const CliResult res = run_cli("decompose --format json");
    REQUIRE(res.exit_code == 0);
    const ordered_json doc = ordered_json::parse(res.out);
    REQUIRE(doc["terms"].size() == 4);
    for (const auto& t : doc["terms"]) {
        CHECK(t["pair_23"] == t["pair_14"]);
        CHECK(std::abs(std::abs(t["coefficient"][0].get<double>()) - 0.5) < 1e-10);
    }
}

TEST_CASE("table format renders on request") {
    const CliResult res = run_cli("exp1 --format table");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("experiment 1") != std::string::npos);
    CHECK(res.out.find("{") == std::string::npos);
}
