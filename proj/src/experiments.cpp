#include "qswap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qswap {

namespace {

constexpr BellKind kAllBellKinds[] = {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                                      BellKind::PhiMinus};

std::vector<int> complement_labels(const std::vector<int>& all, const std::vector<int>& keep) {
    std::vector<int> rest;
    for (int lbl : all)
        if (std::find(keep.begin(), keep.end(), lbl) == keep.end()) rest.push_back(lbl);
    return rest;
}

std::string format_amplitudes(const CVec& v) {
    std::string out = "[";
    char buf[64];
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi", v[i].real(), v[i].imag());
        out += buf;
    }
    return out + "]";
}

}  // namespace

std::string describe_pure_state(const StateVector& s) {
    constexpr double kMatchTol = 1e-9;
    const std::size_t n = s.num_qubits();
    if (n <= 3) {
        for (std::size_t pattern = 0; pattern < s.dim(); ++pattern) {
            std::vector<Spin> bits;
            for (std::size_t i = 0; i < n; ++i)
                bits.push_back(((pattern >> (n - 1 - i)) & 1u) ? Spin::Minus : Spin::Plus);
            const StateVector ket = basis_ket(bits, s.labels());
            if (phase_insensitive_distance(s, ket) < kMatchTol) {
                std::string out = "|";
                for (Spin b : bits) out += (b == Spin::Plus ? '+' : '-');
                return out + ">";
            }
        }
    }
    if (n == 2) {
        for (BellKind k : kAllBellKinds) {
            const StateVector bell = bell_state(k, s.labels()[0], s.labels()[1]);
            if (phase_insensitive_distance(s, bell) < kMatchTol) return bell_name(k);
        }
    }
    return format_amplitudes(s.amplitudes());
}

OutcomeRow build_outcome_row(std::string outcome, double probability,
                             const std::optional<StateVector>& full_post,
                             const std::vector<int>& keep) {
    OutcomeRow row;
    row.outcome = std::move(outcome);
    row.probability = probability;
    if (!full_post || keep.empty()) return row;

    const StateVector& post = *full_post;
    const std::vector<int> rest = complement_labels(post.labels(), keep);
    if (rest.empty()) {
        row.heralded = phase_canonical(post);
    } else {
        // After a projective measurement the state factorizes across the
        // measured/unmeasured cut, so the top Schmidt vector is the
        // heralded state.
        const SchmidtDecomposition cut = schmidt(post, keep, rest);
        if (cut.coefficients[0] < 1.0 - 1e-9) return row;  // not heralded as a pure state
        row.heralded = phase_canonical(StateVector(keep, cut.left_vectors[0]));
    }
    row.heralded_desc = describe_pure_state(*row.heralded);

    if (keep.size() >= 2) {
        const std::vector<int> first = {keep[0]};
        const std::vector<int> others(keep.begin() + 1, keep.end());
        const SchmidtDecomposition sd = schmidt(*row.heralded, first, others);
        row.schmidt_coefficients = sd.coefficients;
        row.entropy_bits = entanglement_entropy(sd);
    }
    if (keep.size() == 2) {
        row.concurrence = pure_concurrence(*row.heralded);
        const SpinDirection x = SpinDirection::x_axis(), y = SpinDirection::y_axis(),
                            z = SpinDirection::z_axis();
        row.corr_zz = correlator(*row.heralded, keep[0], z, keep[1], z);
        row.corr_xx = correlator(*row.heralded, keep[0], x, keep[1], x);
        row.corr_yy = correlator(*row.heralded, keep[0], y, keep[1], y);
    }
    return row;
}

ExperimentReport build_measurement_report(int experiment_id, const StateVector& initial,
                                          const std::vector<OutcomeRecord>& records,
                                          const std::vector<int>& keep) {
    ExperimentReport report;
    report.experiment_id = experiment_id;
    report.kept_labels = keep;
    for (const OutcomeRecord& rec : records)
        report.rows.push_back(build_outcome_row(rec.label, rec.probability, rec.post_state, keep));
    if (!keep.empty()) {
        ReportSummary summary{mixed_from_records(records, keep), 0.0, std::nullopt};
        summary.frobenius_to_premeasurement =
            frobenius_distance(summary.rho_avg.matrix(), reduced_density(initial, keep).matrix());
        if (keep.size() == 2) summary.mixed_conc = mixed_concurrence(summary.rho_avg);
        report.summary = std::move(summary);
    }
    return report;
}

ExperimentReport run_experiment_1() {
    const StateVector initial = two_singlet_state();
    const MeasurementBasis zz = product_basis(
        {spin_basis(2, SpinDirection::z_axis()), spin_basis(3, SpinDirection::z_axis())});
    return build_measurement_report(1, initial, measure(initial, zz), {1, 4});
}

ExperimentReport run_experiment_2() {
    const StateVector initial = two_singlet_state();
    return build_measurement_report(2, initial, measure(initial, bell_basis(2, 3)), {1, 4});
}

std::vector<BellTerm> bell_decompose_initial() {
    const StateVector initial = two_singlet_state();
    const CVec& psi = initial.amplitudes();
    std::vector<BellTerm> terms;
    for (BellKind j : kAllBellKinds) {
        const CVec v23 = bell_amplitudes(j);
        for (BellKind k : kAllBellKinds) {
            const CVec v14 = bell_amplitudes(k);
            cplx coeff{0.0};
            for (std::size_t b1 = 0; b1 < 2; ++b1)
                for (std::size_t b2 = 0; b2 < 2; ++b2)
                    for (std::size_t b3 = 0; b3 < 2; ++b3)
                        for (std::size_t b4 = 0; b4 < 2; ++b4)
                            coeff += std::conj(v23[b2 * 2 + b3] * v14[b1 * 2 + b4]) *
                                     psi[b1 * 8 + b2 * 4 + b3 * 2 + b4];
            if (std::abs(coeff) > 1e-12) terms.push_back({j, k, coeff});
        }
    }
    return terms;
}

CorrespondenceResult correspondence_check(const ExperimentReport& report) {
    if (report.experiment_id != 1 && report.experiment_id != 2)
        throw std::invalid_argument("correspondence_check: expects a canned experiment report");
    constexpr double kTol = 1e-10;

    std::vector<std::pair<std::string, StateVector>> expected;
    if (report.experiment_id == 1) {
        expected.emplace_back("++", basis_ket({Spin::Minus, Spin::Minus}, {1, 4}));
        expected.emplace_back("+-", basis_ket({Spin::Minus, Spin::Plus}, {1, 4}));
        expected.emplace_back("-+", basis_ket({Spin::Plus, Spin::Minus}, {1, 4}));
        expected.emplace_back("--", basis_ket({Spin::Plus, Spin::Plus}, {1, 4}));
    } else {
        for (BellKind k : kAllBellKinds) expected.emplace_back(bell_name(k), bell_state(k, 1, 4));
    }

    CorrespondenceResult result;
    result.ok = report.rows.size() == expected.size();
    std::vector<bool> used(expected.size(), false);
    for (const OutcomeRow& row : report.rows) {
        CorrespondenceWitness w;
        w.outcome = row.outcome;
        auto it = std::find_if(expected.begin(), expected.end(),
                               [&](const auto& e) { return e.first == row.outcome; });
        if (it == expected.end() || !row.heralded) {
            w.expected = it == expected.end() ? "?" : describe_pure_state(it->second);
            w.distance = 2.0;
            result.ok = false;
            result.witnesses.push_back(std::move(w));
            continue;
        }
        const std::size_t slot = static_cast<std::size_t>(it - expected.begin());
        w.expected = describe_pure_state(it->second);
        w.distance = phase_insensitive_distance(*row.heralded, it->second);
        w.matched = !used[slot] && w.distance < kTol;
        used[slot] = true;
        result.ok = result.ok && w.matched;
        result.witnesses.push_back(std::move(w));
    }
    for (bool u : used) result.ok = result.ok && u;
    return result;
}

NoSignalingReport no_signaling_report() {
    const StateVector initial = two_singlet_state();
    const std::vector<int> keep = {1, 4};
    const MeasurementBasis zz = product_basis(
        {spin_basis(2, SpinDirection::z_axis()), spin_basis(3, SpinDirection::z_axis())});

    NoSignalingReport out{reduced_density(initial, keep),
                          mixed_from_records(measure(initial, zz), keep),
                          mixed_from_records(measure(initial, bell_basis(2, 3)), keep),
                          0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    out.dist_initial_spin = frobenius_distance(out.initial.matrix(), out.after_spin.matrix());
    out.dist_initial_bell = frobenius_distance(out.initial.matrix(), out.after_bell.matrix());
    out.dist_spin_bell = frobenius_distance(out.after_spin.matrix(), out.after_bell.matrix());
    out.conc_initial = mixed_concurrence(out.initial);
    out.conc_spin = mixed_concurrence(out.after_spin);
    out.conc_bell = mixed_concurrence(out.after_bell);
    return out;
}

MeasurementBasis random_joint_basis(const std::vector<int>& targets, RngStream& rng) {
    const std::size_t dim = std::size_t{1} << targets.size();
    std::vector<CVec> cols(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        CVec v(dim);
        double nn = 0.0;
        do {
            for (cplx& z : v) z = cplx{rng.normal(), rng.normal()};
            // modified Gram-Schmidt against the accepted columns
            for (std::size_t i = 0; i < j; ++i) {
                const cplx proj = inner(cols[i], v);
                for (std::size_t k = 0; k < dim; ++k) v[k] -= proj * cols[i][k];
            }
            nn = vec_norm(v);
        } while (nn < 1e-6);
        for (cplx& z : v) z /= nn;
        cols[j] = std::move(v);
    }
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < dim; ++j) labels.push_back("u" + std::to_string(j));
    return MeasurementBasis::make(targets, std::move(cols), std::move(labels));
}

std::vector<double> no_signaling_sweep(std::size_t count, std::uint64_t seed) {
    const StateVector initial = two_singlet_state();
    const DensityMatrix before = reduced_density(initial, {1, 4});
    std::vector<double> distances;
    distances.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        RngStream rng(seed, i);
        const MeasurementBasis basis = random_joint_basis({2, 3}, rng);
        const DensityMatrix after = mixed_from_records(measure(initial, basis), {1, 4});
        distances.push_back(frobenius_distance(before.matrix(), after.matrix()));
    }
    return distances;
}

namespace {

MonteCarloReport tally(const std::vector<std::string>& labels,
                       const std::vector<double>& probabilities,
                       const std::vector<std::uint64_t>& counts, std::uint64_t trials,
                       std::uint64_t seed) {
    MonteCarloReport report;
    report.seed = seed;
    report.trials = trials;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        MonteCarloOutcome o;
        o.outcome = labels[i];
        o.count = counts[i];
        o.frequency = static_cast<double>(counts[i]) / static_cast<double>(trials);
        o.probability = probabilities[i];
        const double dev = std::abs(o.frequency - o.probability);
        report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
        const double sigma =
            std::sqrt(o.probability * (1.0 - o.probability) / static_cast<double>(trials));
        if (dev > 0.0 && sigma > 0.0)
            report.max_sigma_multiple = std::max(report.max_sigma_multiple, dev / sigma);
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

}  // namespace

MonteCarloReport monte_carlo_experiment(int experiment_id, std::uint64_t trials,
                                        std::uint64_t seed) {
    if (experiment_id != 1 && experiment_id != 2)
        throw std::invalid_argument("monte_carlo_experiment: id must be 1 or 2");
    if (trials == 0) throw std::invalid_argument("monte_carlo_experiment: trials must be >= 1");
    const StateVector initial = two_singlet_state();
    const MeasurementBasis basis =
        experiment_id == 1
            ? product_basis({spin_basis(2, SpinDirection::z_axis()),
                             spin_basis(3, SpinDirection::z_axis())})
            : bell_basis(2, 3);
    const std::vector<OutcomeRecord> records = measure(initial, basis);

    std::vector<std::uint64_t> counts(records.size(), 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t);
        counts[sample(records, rng)]++;
    }
    std::vector<std::string> labels;
    std::vector<double> probs;
    for (const OutcomeRecord& r : records) {
        labels.push_back(r.label);
        probs.push_back(r.probability);
    }
    return tally(labels, probs, counts, trials, seed);
}

}  // namespace qswap
