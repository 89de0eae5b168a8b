#include "qswap/reports.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace qswap {

namespace {

// 17 significant digits: enough to reproduce any double exactly.
std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Shortest representation that round-trips; for tables.
std::string shortest(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    return out + "\"";
}

std::string matrix_json(const CMat& m, int indent) {
    const std::string pad(indent, ' ');
    std::string out = "{\n";
    out += pad + "  \"rows\": " + std::to_string(m.rows) + ",\n";
    out += pad + "  \"cols\": " + std::to_string(m.cols) + ",\n";
    out += pad + "  \"entries\": [";
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        if (i) out += ", ";
        out += "[" + g17(m.a[i].real()) + ", " + g17(m.a[i].imag()) + "]";
    }
    out += "]\n" + pad + "}";
    return out;
}

// Row-major "re im" pairs, ';'-separated; the CSV twin of matrix_json.
std::string matrix_csv(const CMat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        if (i) out += ";";
        out += g17(m.a[i].real()) + " " + g17(m.a[i].imag());
    }
    return out;
}

std::string vector_csv(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += g17(v[i]);
    }
    return out;
}

std::string doubles_json(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += g17(v[i]);
    }
    return out + "]";
}

std::string metric_value_json(const MetricValue& value, int indent) {
    if (const double* d = std::get_if<double>(&value)) return g17(*d);
    if (const auto* v = std::get_if<std::vector<double>>(&value)) return doubles_json(*v);
    return matrix_json(std::get<DensityMatrix>(value).matrix(), indent);
}

std::string metric_value_csv(const MetricValue& value) {
    if (const double* d = std::get_if<double>(&value)) return g17(*d);
    if (const auto* v = std::get_if<std::vector<double>>(&value)) return vector_csv(*v);
    return matrix_csv(std::get<DensityMatrix>(value).matrix());
}

std::string metric_value_table(const MetricValue& value) {
    if (const double* d = std::get_if<double>(&value)) return shortest(*d);
    if (const auto* v = std::get_if<std::vector<double>>(&value)) {
        std::string out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (i) out += ", ";
            out += shortest((*v)[i]);
        }
        return out;
    }
    const CMat& m = std::get<DensityMatrix>(value).matrix();
    std::string out;
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) out += " ";
            const cplx z = m(i, j);
            out += shortest(z.real()) + (z.imag() < 0 ? "-" : "+") +
                   shortest(std::abs(z.imag())) + "i";
        }
    }
    return out;
}

void table_matrix(std::ostringstream& os, const CMat& m, const std::string& pad) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        os << pad << "[";
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) os << "  ";
            const cplx z = m(i, j);
            os << shortest(z.real()) << (z.imag() < 0 ? "-" : "+") << shortest(std::abs(z.imag()))
               << "i";
        }
        os << "]\n";
    }
}

std::string pad_to(const std::string& s, std::size_t width) {
    std::string out = s;
    while (out.size() < width) out += ' ';
    return out;
}

}  // namespace

// ---------------------------------------------------------------- experiment

std::string to_json(const ExperimentReport& report) {
    std::string out = "{\n";
    out += "  \"experiment\": " + std::to_string(report.experiment_id) + ",\n";
    out += "  \"rows\": [\n";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        const OutcomeRow& row = report.rows[r];
        out += "    {\n";
        out += "      \"outcome\": " + json_escape(row.outcome) + ",\n";
        out += "      \"probability\": " + g17(row.probability);
        if (row.heralded) out += ",\n      \"heralded_state\": " + json_escape(row.heralded_desc);
        if (!row.schmidt_coefficients.empty())
            out += ",\n      \"schmidt\": " + doubles_json(row.schmidt_coefficients);
        if (row.entropy_bits) out += ",\n      \"entropy_bits\": " + g17(*row.entropy_bits);
        if (row.concurrence) out += ",\n      \"concurrence\": " + g17(*row.concurrence);
        if (row.corr_zz)
            out += ",\n      \"correlators\": {\"zz\": " + g17(*row.corr_zz) +
                   ", \"xx\": " + g17(*row.corr_xx) + ", \"yy\": " + g17(*row.corr_yy) + "}";
        if (!row.metrics.empty()) {
            out += ",\n      \"metrics\": [\n";
            for (std::size_t m = 0; m < row.metrics.size(); ++m) {
                out += "        {\"metric\": " + json_escape(row.metrics[m].first) +
                       ", \"value\": " + metric_value_json(row.metrics[m].second, 8) + "}";
                if (m + 1 < row.metrics.size()) out += ",";
                out += "\n";
            }
            out += "      ]";
        }
        out += "\n    }";
        if (r + 1 < report.rows.size()) out += ",";
        out += "\n";
    }
    out += "  ]";
    if (report.summary) {
        const ReportSummary& s = *report.summary;
        out += ",\n  \"summary\": {\n";
        out += "    \"rho14_avg\": " + matrix_json(s.rho_avg.matrix(), 4) + ",\n";
        out += "    \"frobenius_to_premeasurement\": " + g17(s.frobenius_to_premeasurement);
        if (s.mixed_conc) out += ",\n    \"mixed_concurrence\": " + g17(*s.mixed_conc);
        out += "\n  }";
    }
    out += "\n}\n";
    return out;
}

std::string to_csv(const ExperimentReport& report) {
    std::string out =
        "outcome,probability,heralded_state,schmidt,entropy_bits,concurrence,corr_zz,corr_xx,"
        "corr_yy\n";
    bool any_metrics = false;
    for (const OutcomeRow& row : report.rows) {
        out += csv_quote(row.outcome) + "," + g17(row.probability) + ",";
        out += (row.heralded ? csv_quote(row.heralded_desc) : std::string()) + ",";
        out += (row.schmidt_coefficients.empty()
                    ? std::string()
                    : csv_quote(vector_csv(row.schmidt_coefficients))) +
               ",";
        out += (row.entropy_bits ? g17(*row.entropy_bits) : std::string()) + ",";
        out += (row.concurrence ? g17(*row.concurrence) : std::string()) + ",";
        out += (row.corr_zz ? g17(*row.corr_zz) : std::string()) + ",";
        out += (row.corr_xx ? g17(*row.corr_xx) : std::string()) + ",";
        out += (row.corr_yy ? g17(*row.corr_yy) : std::string()) + "\n";
        any_metrics = any_metrics || !row.metrics.empty();
    }
    if (report.summary) {
        const ReportSummary& s = *report.summary;
        out += "\nrho14_avg,frobenius_to_premeasurement,mixed_concurrence\n";
        out += csv_quote(matrix_csv(s.rho_avg.matrix())) + "," +
               g17(s.frobenius_to_premeasurement) + "," +
               (s.mixed_conc ? g17(*s.mixed_conc) : std::string()) + "\n";
    }
    if (any_metrics) {
        out += "\nrow,metric,value\n";
        for (std::size_t r = 0; r < report.rows.size(); ++r)
            for (const auto& [name, value] : report.rows[r].metrics)
                out += std::to_string(r) + "," + csv_quote(name) + "," +
                       csv_quote(metric_value_csv(value)) + "\n";
    }
    return out;
}

std::string to_table(const ExperimentReport& report) {
    std::ostringstream os;
    if (report.experiment_id != 0)
        os << "experiment " << report.experiment_id;
    else
        os << "protocol run";
    if (!report.kept_labels.empty()) {
        os << "   unmeasured particles:";
        for (int lbl : report.kept_labels) os << " " << lbl;
    }
    os << "\n";

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"outcome", "prob", "heralded", "schmidt", "entropy", "concurrence", "E(z,z)",
                     "E(x,x)", "E(y,y)"});
    for (const OutcomeRow& row : report.rows) {
        std::vector<std::string> c;
        c.push_back(row.outcome.empty() ? "(none)" : row.outcome);
        c.push_back(shortest(row.probability));
        c.push_back(row.heralded ? row.heralded_desc : "");
        std::string sch;
        for (std::size_t i = 0; i < row.schmidt_coefficients.size(); ++i) {
            if (i) sch += ", ";
            sch += shortest(row.schmidt_coefficients[i]);
        }
        c.push_back(sch);
        c.push_back(row.entropy_bits ? shortest(*row.entropy_bits) : "");
        c.push_back(row.concurrence ? shortest(*row.concurrence) : "");
        c.push_back(row.corr_zz ? shortest(*row.corr_zz) : "");
        c.push_back(row.corr_xx ? shortest(*row.corr_xx) : "");
        c.push_back(row.corr_yy ? shortest(*row.corr_yy) : "");
        cells.push_back(std::move(c));
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) os << pad_to(row[i], width[i] + 2);
        os << "\n";
    }

    for (std::size_t r = 0; r < report.rows.size(); ++r)
        for (const auto& [name, value] : report.rows[r].metrics)
            os << "  row " << r << "  " << name << " = " << metric_value_table(value) << "\n";

    if (report.summary) {
        const ReportSummary& s = *report.summary;
        os << "outcome-averaged reduced state:\n";
        table_matrix(os, s.rho_avg.matrix(), "  ");
        os << "frobenius distance to pre-measurement state: "
           << shortest(s.frobenius_to_premeasurement) << "\n";
        if (s.mixed_conc) os << "mixed concurrence: " << shortest(*s.mixed_conc) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- decompose

std::string to_json(const std::vector<BellTerm>& terms) {
    std::string out = "{\n  \"terms\": [\n";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out += "    {\"pair_23\": " + json_escape(bell_name(terms[i].on_23)) +
               ", \"pair_14\": " + json_escape(bell_name(terms[i].on_14)) + ", \"coefficient\": [" +
               g17(terms[i].coefficient.real()) + ", " + g17(terms[i].coefficient.imag()) + "]}";
        if (i + 1 < terms.size()) out += ",";
        out += "\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string to_csv(const std::vector<BellTerm>& terms) {
    std::string out = "pair_23,pair_14,coeff_re,coeff_im\n";
    for (const BellTerm& t : terms)
        out += csv_quote(bell_name(t.on_23)) + "," + csv_quote(bell_name(t.on_14)) + "," +
               g17(t.coefficient.real()) + "," + g17(t.coefficient.imag()) + "\n";
    return out;
}

std::string to_table(const std::vector<BellTerm>& terms) {
    std::ostringstream os;
    os << "Bell-basis expansion of the two-singlet state over pairs (2,3) x (1,4)\n";
    for (const BellTerm& t : terms) {
        const cplx c = t.coefficient;
        os << "  " << bell_name(t.on_23) << " (2,3)  x  " << bell_name(t.on_14) << " (1,4)   "
           << shortest(c.real()) << (c.imag() < 0 ? "-" : "+") << shortest(std::abs(c.imag()))
           << "i\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- no-signaling

std::string to_json(const NoSignalingReport& r, const std::optional<SweepInfo>& sweep) {
    std::string out = "{\n";
    out += "  \"rho14_initial\": " + matrix_json(r.initial.matrix(), 2) + ",\n";
    out += "  \"rho14_after_spin\": " + matrix_json(r.after_spin.matrix(), 2) + ",\n";
    out += "  \"rho14_after_bell\": " + matrix_json(r.after_bell.matrix(), 2) + ",\n";
    out += "  \"distances\": {\"initial_vs_spin\": " + g17(r.dist_initial_spin) +
           ", \"initial_vs_bell\": " + g17(r.dist_initial_bell) +
           ", \"spin_vs_bell\": " + g17(r.dist_spin_bell) + "},\n";
    out += "  \"mixed_concurrence\": {\"initial\": " + g17(r.conc_initial) +
           ", \"after_spin\": " + g17(r.conc_spin) + ", \"after_bell\": " + g17(r.conc_bell) + "}";
    if (sweep) {
        double worst = 0.0;
        for (double d : sweep->distances) worst = std::max(worst, d);
        out += ",\n  \"sweep\": {\"seed\": " + std::to_string(sweep->seed) +
               ", \"count\": " + std::to_string(sweep->distances.size()) +
               ", \"max_distance\": " + g17(worst) +
               ", \"distances\": " + doubles_json(sweep->distances) + "}";
    }
    out += "\n}\n";
    return out;
}

std::string to_csv(const NoSignalingReport& r, const std::optional<SweepInfo>& sweep) {
    std::string out = "matrix,entries\n";
    out += "\"rho14_initial\"," + csv_quote(matrix_csv(r.initial.matrix())) + "\n";
    out += "\"rho14_after_spin\"," + csv_quote(matrix_csv(r.after_spin.matrix())) + "\n";
    out += "\"rho14_after_bell\"," + csv_quote(matrix_csv(r.after_bell.matrix())) + "\n";
    out += "\ninitial_vs_spin,initial_vs_bell,spin_vs_bell\n";
    out += g17(r.dist_initial_spin) + "," + g17(r.dist_initial_bell) + "," +
           g17(r.dist_spin_bell) + "\n";
    out += "\nconc_initial,conc_after_spin,conc_after_bell\n";
    out += g17(r.conc_initial) + "," + g17(r.conc_spin) + "," + g17(r.conc_bell) + "\n";
    if (sweep) {
        out += "\nsweep_seed,sweep_index,distance\n";
        for (std::size_t i = 0; i < sweep->distances.size(); ++i)
            out += std::to_string(sweep->seed) + "," + std::to_string(i) + "," +
                   g17(sweep->distances[i]) + "\n";
    }
    return out;
}

std::string to_table(const NoSignalingReport& r, const std::optional<SweepInfo>& sweep) {
    std::ostringstream os;
    os << "reduced state of particles 1,4\n";
    os << "before any measurement:\n";
    table_matrix(os, r.initial.matrix(), "  ");
    os << "averaged over spin-z outcomes on 2,3:\n";
    table_matrix(os, r.after_spin.matrix(), "  ");
    os << "averaged over Bell outcomes on 2,3:\n";
    table_matrix(os, r.after_bell.matrix(), "  ");
    os << "frobenius distances: initial/spin " << shortest(r.dist_initial_spin)
       << "   initial/bell " << shortest(r.dist_initial_bell) << "   spin/bell "
       << shortest(r.dist_spin_bell) << "\n";
    os << "mixed concurrences:  initial " << shortest(r.conc_initial) << "   after spin "
       << shortest(r.conc_spin) << "   after bell " << shortest(r.conc_bell) << "\n";
    if (sweep) {
        double worst = 0.0;
        for (double d : sweep->distances) worst = std::max(worst, d);
        os << "random-basis sweep: " << sweep->distances.size() << " bases (seed " << sweep->seed
           << "), max distance " << shortest(worst) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- monte carlo

std::string to_json(const MonteCarloReport& r) {
    std::string out = "{\n";
    out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
    out += "  \"trials\": " + std::to_string(r.trials) + ",\n";
    out += "  \"outcomes\": [\n";
    for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
        const MonteCarloOutcome& o = r.outcomes[i];
        out += "    {\"outcome\": " + json_escape(o.outcome) +
               ", \"count\": " + std::to_string(o.count) + ", \"frequency\": " + g17(o.frequency) +
               ", \"probability\": " + g17(o.probability) + "}";
        if (i + 1 < r.outcomes.size()) out += ",";
        out += "\n";
    }
    out += "  ],\n";
    out += "  \"max_abs_deviation\": " + g17(r.max_abs_deviation) + ",\n";
    out += "  \"max_sigma_multiple\": " + g17(r.max_sigma_multiple) + "\n";
    out += "}\n";
    return out;
}

std::string to_csv(const MonteCarloReport& r) {
    std::string out = "seed,trials,max_abs_deviation,max_sigma_multiple\n";
    out += std::to_string(r.seed) + "," + std::to_string(r.trials) + "," +
           g17(r.max_abs_deviation) + "," + g17(r.max_sigma_multiple) + "\n";
    out += "\noutcome,count,frequency,probability\n";
    for (const MonteCarloOutcome& o : r.outcomes)
        out += csv_quote(o.outcome) + "," + std::to_string(o.count) + "," + g17(o.frequency) +
               "," + g17(o.probability) + "\n";
    return out;
}

std::string to_table(const MonteCarloReport& r) {
    std::ostringstream os;
    os << "monte carlo: " << r.trials << " trials, seed " << r.seed << "\n";
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"outcome", "count", "frequency", "probability"});
    for (const MonteCarloOutcome& o : r.outcomes)
        cells.push_back({o.outcome.empty() ? "(none)" : o.outcome, std::to_string(o.count),
                         shortest(o.frequency), shortest(o.probability)});
    std::vector<std::size_t> width(4, 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < 4; ++i) os << pad_to(row[i], width[i] + 2);
        os << "\n";
    }
    os << "max |frequency - probability| = " << shortest(r.max_abs_deviation) << " ("
       << shortest(r.max_sigma_multiple) << " sigma)\n";
    return os.str();
}

}  // namespace qswap
