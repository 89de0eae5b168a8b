#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qswap/rng.hpp"
#include "qswap/states.hpp"

namespace qswap {

// Unit vector on the Bloch sphere.
struct SpinDirection {
    double x = 0.0, y = 0.0, z = 1.0;

    // Throws if (x,y,z) is not unit length within 1e-10.
    static SpinDirection make(double x, double y, double z);
    // Rescales any vector with norm in [1e-6, 1e6]; throws outside that range.
    static SpinDirection normalized(double x, double y, double z);

    static SpinDirection x_axis() { return {1.0, 0.0, 0.0}; }
    static SpinDirection y_axis() { return {0.0, 1.0, 0.0}; }
    static SpinDirection z_axis() { return {0.0, 0.0, 1.0}; }
};

// n.sigma as a 2x2 matrix.
CMat spin_operator(const SpinDirection& dir);

// Complete orthonormal basis on an ordered subset of qubits. Basis vectors
// are 2^k-dimensional with targets[0] as the most significant bit of the
// sub-index.
struct MeasurementBasis {
    std::vector<int> targets;
    std::vector<CVec> vectors;
    std::vector<std::string> labels;

    static MeasurementBasis make(std::vector<int> targets, std::vector<CVec> vectors,
                                 std::vector<std::string> labels);
};

// Eigenbasis of the spin component along `dir` for a single qubit.
// Up eigenvector (cos(t/2), e^{i p} sin(t/2)) labeled "+", down
// (-e^{-i p} sin(t/2), cos(t/2)) labeled "-", for dir =
// (sin t cos p, sin t sin p, cos t).
MeasurementBasis spin_basis(int target, const SpinDirection& dir);

// Joint Bell-operator eigenbasis on the ordered pair (a, b); outcome
// labels are the Bell-state names.
MeasurementBasis bell_basis(int label_a, int label_b);

// Joint basis for simultaneous measurements: targets concatenate, vectors
// tensor, labels concatenate.
MeasurementBasis product_basis(const std::vector<MeasurementBasis>& parts);

// One measurement branch. post_state is absent when the branch probability
// is below kProbFloor (renormalizing a near-null vector is meaningless).
struct OutcomeRecord {
    std::string label;
    double probability = 0.0;
    std::optional<StateVector> post_state;  // on all qubits of the input state
};

constexpr double kProbFloor = 1e-12;

// Projective measurement: for each basis vector b, probability
// ||(P_b x I)|psi>||^2 and the renormalized projection. Records come back
// in basis order and their probabilities sum to 1.
std::vector<OutcomeRecord> measure(const StateVector& state, const MeasurementBasis& basis);

// Inverse-CDF draw from the records' probabilities using one uniform
// variate; returns the chosen index. Throws if probabilities do not sum
// to 1 within 1e-8 or any is negative.
std::size_t sample(const std::vector<OutcomeRecord>& records, RngStream& rng);

}  // namespace qswap
