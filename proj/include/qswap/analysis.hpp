#pragma once

#include <vector>

#include "qswap/measurement.hpp"
#include "qswap/states.hpp"

namespace qswap {

// Hermitian, unit-trace, positive-semidefinite matrix on a set of labeled
// qubits; the same bit convention as StateVector applies to its indices.
class DensityMatrix {
public:
    static DensityMatrix make(std::vector<int> labels, CMat matrix);

    std::size_t num_qubits() const { return labels_.size(); }
    const std::vector<int>& labels() const { return labels_; }
    const CMat& matrix() const { return m_; }
    std::size_t bit_position(int label) const;

    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kEigenFloor = -1e-10;

private:
    DensityMatrix(std::vector<int> labels, CMat m) : labels_(std::move(labels)), m_(std::move(m)) {}
    std::vector<int> labels_;
    CMat m_;
};

// Partial trace of |psi><psi| keeping the given labels.
DensityMatrix reduced_density(const StateVector& state, const std::vector<int>& keep);

// Outcome-averaged reduced state: sum_k p_k tr_rest |post_k><post_k|.
DensityMatrix mixed_from_records(const std::vector<OutcomeRecord>& records,
                                 const std::vector<int>& keep);

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // nonnegative, descending, squares sum to 1
    std::vector<CVec> left_vectors;    // orthonormal, on part_a
    std::vector<CVec> right_vectors;   // orthonormal, on part_b
    std::vector<int> part_a;
    std::vector<int> part_b;
};

// Reshape the amplitudes into a 2^|A| x 2^|B| matrix (rows indexed by the
// A bits in ascending label order, columns by the B bits) and take its SVD.
SchmidtDecomposition schmidt(const StateVector& state, const std::vector<int>& part_a,
                             const std::vector<int>& part_b);

// Shannon entropy of the squared coefficients, in bits. Coefficients below
// 1e-12 count as exact zeros.
double entanglement_entropy(const SchmidtDecomposition& sd);

std::size_t schmidt_rank(const SchmidtDecomposition& sd);

// 2|ad - bc| for a two-qubit pure state (a,b,c,d).
double pure_concurrence(const StateVector& state);

// Wootters concurrence of a two-qubit density matrix:
// max(0, l1-l2-l3-l4), l_i the descending square roots of the eigenvalues
// of rho (sy x sy) rho* (sy x sy).
double mixed_concurrence(const DensityMatrix& rho);

// <(a.sigma)_p (b.sigma)_q>, identity on every other qubit.
double correlator(const StateVector& state, int label_p, const SpinDirection& a, int label_q,
                  const SpinDirection& b);
double correlator(const DensityMatrix& rho, int label_p, const SpinDirection& a, int label_q,
                  const SpinDirection& b);

// True when the second Schmidt coefficient across the bipartition is <= tol.
bool is_product(const StateVector& state, const std::vector<int>& part_a,
                const std::vector<int>& part_b, double tol);

}  // namespace qswap
