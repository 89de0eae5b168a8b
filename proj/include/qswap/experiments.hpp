#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qswap/analysis.hpp"

namespace qswap {

constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Extra per-branch values requested by protocol report statements.
using MetricValue = std::variant<double, std::vector<double>, DensityMatrix>;

// One measurement outcome with the diagnostics of the unmeasured qubits.
// Pair diagnostics (concurrence, correlators) are filled only when exactly
// two qubits stay unmeasured.
struct OutcomeRow {
    std::string outcome;
    double probability = 0.0;
    std::optional<StateVector> heralded;  // pure state on the kept labels
    std::string heralded_desc;
    std::vector<double> schmidt_coefficients;
    std::optional<double> entropy_bits;
    std::optional<double> concurrence;
    std::optional<double> corr_zz, corr_xx, corr_yy;
    std::vector<std::pair<std::string, MetricValue>> metrics;
};

struct ReportSummary {
    DensityMatrix rho_avg;                   // outcome-averaged reduced state
    double frobenius_to_premeasurement = 0.0;
    std::optional<double> mixed_conc;
};

struct ExperimentReport {
    int experiment_id = 0;  // 1 or 2 for the canned runs, 0 for protocol scripts
    std::vector<int> kept_labels;
    std::vector<OutcomeRow> rows;
    std::optional<ReportSummary> summary;
};

// Shared row/summary construction so canned runs and interpreted scripts
// produce identical numbers for identical measurements.
OutcomeRow build_outcome_row(std::string outcome, double probability,
                             const std::optional<StateVector>& full_post,
                             const std::vector<int>& keep);
ExperimentReport build_measurement_report(int experiment_id, const StateVector& initial,
                                          const std::vector<OutcomeRecord>& records,
                                          const std::vector<int>& keep);

// Short display name of a small pure state: a computational ket, a Bell
// state, or an amplitude list.
std::string describe_pure_state(const StateVector& s);

// Spin-z measurement on particles 2 and 3 of the two-singlet state.
ExperimentReport run_experiment_1();
// Bell-operator measurement on particles 2 and 3 of the two-singlet state.
ExperimentReport run_experiment_2();

struct BellTerm {
    BellKind on_23;
    BellKind on_14;
    cplx coefficient;
};

// Expansion of the two-singlet state in the basis
// {|bell_j>_23 x |bell_k>_14}; only terms with |coefficient| > 1e-12.
std::vector<BellTerm> bell_decompose_initial();

struct CorrespondenceWitness {
    std::string outcome;
    std::string expected;
    double distance = 0.0;  // phase-insensitive
    bool matched = false;
};

struct CorrespondenceResult {
    bool ok = false;
    std::vector<CorrespondenceWitness> witnesses;
};

// Checks that the outcome -> heralded-state map of a canned experiment is
// the expected bijection; distances are phase-insensitive, threshold 1e-10.
CorrespondenceResult correspondence_check(const ExperimentReport& report);

struct NoSignalingReport {
    DensityMatrix initial;     // reduced state of particles 1,4 before measuring
    DensityMatrix after_spin;  // ensemble average after the spin-z experiment
    DensityMatrix after_bell;  // ensemble average after the Bell experiment
    double dist_initial_spin = 0.0;
    double dist_initial_bell = 0.0;
    double dist_spin_bell = 0.0;
    double conc_initial = 0.0;
    double conc_spin = 0.0;
    double conc_bell = 0.0;
};

NoSignalingReport no_signaling_report();

// Haar-ish random joint basis: complex Gaussian matrix orthonormalized by
// modified Gram-Schmidt; outcome labels "u0", "u1", ...
MeasurementBasis random_joint_basis(const std::vector<int>& targets, RngStream& rng);

// Frobenius distance of the outcome-averaged reduced state on {1,4} from
// the pre-measurement one, for `count` random joint bases on {2,3}.
std::vector<double> no_signaling_sweep(std::size_t count, std::uint64_t seed);

struct MonteCarloOutcome {
    std::string outcome;
    std::uint64_t count = 0;
    double frequency = 0.0;
    double probability = 0.0;  // analytic
};

struct MonteCarloReport {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::vector<MonteCarloOutcome> outcomes;
    double max_abs_deviation = 0.0;
    double max_sigma_multiple = 0.0;
};

MonteCarloReport monte_carlo_experiment(int experiment_id, std::uint64_t trials,
                                        std::uint64_t seed = kDefaultSeed);

}  // namespace qswap
