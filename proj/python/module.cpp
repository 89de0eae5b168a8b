#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qswap/protocol.hpp"
#include "qswap/reports.hpp"

namespace py = pybind11;
using namespace qswap;

namespace {

std::vector<std::vector<cplx>> matrix_rows(const CMat& m) {
    std::vector<std::vector<cplx>> rows(m.rows, std::vector<cplx>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) rows[i][j] = m(i, j);
    return rows;
}

py::dict row_to_dict(const OutcomeRow& row) {
    py::dict d;
    d["outcome"] = row.outcome;
    d["probability"] = row.probability;
    if (row.heralded) {
        d["heralded_state"] = row.heralded_desc;
        d["heralded_amplitudes"] = row.heralded->amplitudes();
    }
    if (!row.schmidt_coefficients.empty()) d["schmidt"] = row.schmidt_coefficients;
    if (row.entropy_bits) d["entropy_bits"] = *row.entropy_bits;
    if (row.concurrence) d["concurrence"] = *row.concurrence;
    if (row.corr_zz) {
        py::dict corr;
        corr["zz"] = *row.corr_zz;
        corr["xx"] = *row.corr_xx;
        corr["yy"] = *row.corr_yy;
        d["correlators"] = corr;
    }
    if (!row.metrics.empty()) {
        py::list metrics;
        for (const auto& [name, value] : row.metrics) {
            py::dict m;
            m["metric"] = name;
            if (const double* s = std::get_if<double>(&value))
                m["value"] = *s;
            else if (const auto* v = std::get_if<std::vector<double>>(&value))
                m["value"] = *v;
            else
                m["value"] = matrix_rows(std::get<DensityMatrix>(value).matrix());
            metrics.append(m);
        }
        d["metrics"] = metrics;
    }
    return d;
}

py::dict report_to_dict(const ExperimentReport& report) {
    py::dict d;
    d["experiment"] = report.experiment_id;
    d["kept_labels"] = report.kept_labels;
    py::list rows;
    for (const OutcomeRow& row : report.rows) rows.append(row_to_dict(row));
    d["rows"] = rows;
    if (report.summary) {
        py::dict s;
        s["rho_avg"] = matrix_rows(report.summary->rho_avg.matrix());
        s["frobenius_to_premeasurement"] = report.summary->frobenius_to_premeasurement;
        if (report.summary->mixed_conc) s["mixed_concurrence"] = *report.summary->mixed_conc;
        d["summary"] = s;
    }
    return d;
}

py::dict mc_to_dict(const MonteCarloReport& mc) {
    py::dict d;
    d["seed"] = mc.seed;
    d["trials"] = mc.trials;
    py::list outcomes;
    for (const MonteCarloOutcome& o : mc.outcomes) {
        py::dict e;
        e["outcome"] = o.outcome;
        e["count"] = o.count;
        e["frequency"] = o.frequency;
        e["probability"] = o.probability;
        outcomes.append(e);
    }
    d["outcomes"] = outcomes;
    d["max_abs_deviation"] = mc.max_abs_deviation;
    d["max_sigma_multiple"] = mc.max_sigma_multiple;
    return d;
}

ProtocolProgram parse_or_raise(const std::string& text) {
    const ParseResult r = parse(text);
    if (!r.ok()) {
        const ParseError& e = *r.error;
        throw py::value_error("line " + std::to_string(e.line) + ", column " +
                              std::to_string(e.column) + ": " + e.message);
    }
    return *r.program;
}

}  // namespace

PYBIND11_MODULE(_qswap, m) {
    m.doc() = "Exact simulator for the two-singlet swapping experiments";

    py::enum_<Spin>(m, "Spin").value("PLUS", Spin::Plus).value("MINUS", Spin::Minus);

    py::enum_<BellKind>(m, "BellKind")
        .value("PSI_PLUS", BellKind::PsiPlus)
        .value("PSI_MINUS", BellKind::PsiMinus)
        .value("PHI_PLUS", BellKind::PhiPlus)
        .value("PHI_MINUS", BellKind::PhiMinus);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<std::vector<int>, CVec>(), py::arg("labels"), py::arg("amplitudes"))
        .def_property_readonly("labels", &StateVector::labels)
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.amplitudes(); })
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def("__repr__", [](const StateVector& s) {
            return "<StateVector on " + std::to_string(s.num_qubits()) + " qubit(s)>";
        });

    py::class_<SpinDirection>(m, "SpinDirection")
        .def_static("make", &SpinDirection::make, py::arg("x"), py::arg("y"), py::arg("z"))
        .def_static("normalized", &SpinDirection::normalized, py::arg("x"), py::arg("y"),
                    py::arg("z"))
        .def_static("x_axis", &SpinDirection::x_axis)
        .def_static("y_axis", &SpinDirection::y_axis)
        .def_static("z_axis", &SpinDirection::z_axis)
        .def_readonly("x", &SpinDirection::x)
        .def_readonly("y", &SpinDirection::y)
        .def_readonly("z", &SpinDirection::z);

    py::class_<MeasurementBasis>(m, "MeasurementBasis")
        .def_readonly("targets", &MeasurementBasis::targets)
        .def_readonly("vectors", &MeasurementBasis::vectors)
        .def_readonly("labels", &MeasurementBasis::labels);

    py::class_<OutcomeRecord>(m, "OutcomeRecord")
        .def_readonly("label", &OutcomeRecord::label)
        .def_readonly("probability", &OutcomeRecord::probability)
        .def_readonly("post_state", &OutcomeRecord::post_state);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_static("make", &DensityMatrix::make, py::arg("labels"), py::arg("matrix_rows"))
        .def_property_readonly("labels", &DensityMatrix::labels)
        .def_property_readonly("matrix",
                               [](const DensityMatrix& r) { return matrix_rows(r.matrix()); });

    py::class_<SchmidtDecomposition>(m, "SchmidtDecomposition")
        .def_readonly("coefficients", &SchmidtDecomposition::coefficients)
        .def_readonly("left_vectors", &SchmidtDecomposition::left_vectors)
        .def_readonly("right_vectors", &SchmidtDecomposition::right_vectors)
        .def_readonly("part_a", &SchmidtDecomposition::part_a)
        .def_readonly("part_b", &SchmidtDecomposition::part_b);

    // state construction
    m.def("basis_ket", py::overload_cast<const std::vector<Spin>&>(&basis_ket));
    m.def("basis_ket",
          py::overload_cast<const std::vector<Spin>&, const std::vector<int>&>(&basis_ket),
          py::arg("pattern"), py::arg("labels"));
    m.def("singlet", &singlet, py::arg("label_a"), py::arg("label_b"));
    m.def("bell_state", &bell_state, py::arg("kind"), py::arg("label_a"), py::arg("label_b"));
    m.def("two_singlet_state", &two_singlet_state);
    m.def("tensor",
          [](const StateVector& a, const StateVector& b) { return tensor(a, b); });
    m.def("equal_up_to_global_phase", &equal_up_to_global_phase, py::arg("a"), py::arg("b"),
          py::arg("tol") = 1e-10);
    m.def("phase_insensitive_distance", &phase_insensitive_distance);

    // measurement
    m.def("spin_basis", &spin_basis, py::arg("target"), py::arg("direction"));
    m.def("bell_basis", &bell_basis, py::arg("label_a"), py::arg("label_b"));
    m.def("product_basis", &product_basis);
    m.def("measure", &measure, py::arg("state"), py::arg("basis"));

    // diagnostics
    m.def("reduced_density", &reduced_density, py::arg("state"), py::arg("keep"));
    m.def("mixed_from_records", &mixed_from_records, py::arg("records"), py::arg("keep"));
    m.def("schmidt", &schmidt, py::arg("state"), py::arg("part_a"), py::arg("part_b"));
    m.def("entanglement_entropy", &entanglement_entropy);
    m.def("pure_concurrence", &pure_concurrence);
    m.def("mixed_concurrence", &mixed_concurrence);
    m.def("correlator",
          [](const StateVector& s, int p, const SpinDirection& a, int q, const SpinDirection& b) {
              return correlator(s, p, a, q, b);
          });
    m.def("is_product", &is_product, py::arg("state"), py::arg("part_a"), py::arg("part_b"),
          py::arg("tol") = 1e-9);

    // experiments
    m.def("run_experiment_1", []() { return report_to_dict(run_experiment_1()); });
    m.def("run_experiment_2", []() { return report_to_dict(run_experiment_2()); });
    m.def("bell_decompose_initial", []() {
        py::list out;
        for (const BellTerm& t : bell_decompose_initial()) {
            py::dict d;
            d["pair_23"] = bell_name(t.on_23);
            d["pair_14"] = bell_name(t.on_14);
            d["coefficient"] = t.coefficient;
            out.append(d);
        }
        return out;
    });
    m.def("no_signaling_report", []() {
        const NoSignalingReport r = no_signaling_report();
        py::dict d;
        d["rho14_initial"] = matrix_rows(r.initial.matrix());
        d["rho14_after_spin"] = matrix_rows(r.after_spin.matrix());
        d["rho14_after_bell"] = matrix_rows(r.after_bell.matrix());
        py::dict dist;
        dist["initial_vs_spin"] = r.dist_initial_spin;
        dist["initial_vs_bell"] = r.dist_initial_bell;
        dist["spin_vs_bell"] = r.dist_spin_bell;
        d["distances"] = dist;
        py::dict conc;
        conc["initial"] = r.conc_initial;
        conc["after_spin"] = r.conc_spin;
        conc["after_bell"] = r.conc_bell;
        d["mixed_concurrence"] = conc;
        return d;
    });
    m.def("no_signaling_sweep", &no_signaling_sweep, py::arg("count"),
          py::arg("seed") = kDefaultSeed);
    m.def(
        "monte_carlo_experiment",
        [](int id, std::uint64_t trials, std::uint64_t seed) {
            return mc_to_dict(monte_carlo_experiment(id, trials, seed));
        },
        py::arg("experiment_id"), py::arg("trials"), py::arg("seed") = kDefaultSeed);

    // protocol scripts
    m.def("run_protocol", [](const std::string& text) {
        return report_to_dict(interpret(parse_or_raise(text)));
    });
    m.def(
        "sample_protocol",
        [](const std::string& text, std::uint64_t trials, std::uint64_t seed) {
            return mc_to_dict(monte_carlo_program(parse_or_raise(text), trials, seed));
        },
        py::arg("text"), py::arg("trials"), py::arg("seed") = kDefaultSeed);
    m.def("validate_protocol", [](const std::string& text) {
        py::list out;
        for (const SemanticError& e : validate(parse_or_raise(text)))
            out.append(py::make_tuple(e.pos.line, e.pos.column, e.message));
        return out;
    });
    m.def("pretty_print_protocol", [](const std::string& text) {
        return pretty_print(parse_or_raise(text));
    });

    // report rendering, shared with the CLI
    m.def("experiment_json", [](int id) {
        return to_json(id == 1 ? run_experiment_1() : run_experiment_2());
    });

    m.attr("DEFAULT_SEED") = kDefaultSeed;
}
