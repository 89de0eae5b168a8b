#pragma once

#include <string>
#include <vector>

#include "qswap/linalg.hpp"

namespace qswap {

// Bit convention used everywhere: the particle with the smallest label is
// the most significant bit of the amplitude index; |+> encodes bit 0 and
// |-> encodes bit 1. So for labels (1,2,3,4), |b1 b2 b3 b4> sits at index
// b1*8 + b2*4 + b3*2 + b4.

enum class Spin : int { Plus = 0, Minus = 1 };

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

const char* bell_name(BellKind k);  // "Ψ+", "Ψ-", "Φ+", "Φ-"

// Normalized pure state on a set of labeled qubits. Labels are held in
// ascending order; amplitudes follow the bit convention above.
class StateVector {
public:
    StateVector(std::vector<int> labels, CVec amplitudes);

    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<int>& labels() const { return labels_; }
    const CVec& amplitudes() const { return amps_; }

    // Position of `label` counted from the most significant bit; throws
    // std::invalid_argument for an unknown label.
    std::size_t bit_position(int label) const;
    bool has_label(int label) const;

private:
    std::vector<int> labels_;
    CVec amps_;
};

constexpr double kNormTolerance = 1e-10;

// |pattern> as a computational ket; labels default to 1..n.
StateVector basis_ket(const std::vector<Spin>& pattern);
StateVector basis_ket(const std::vector<Spin>& pattern, const std::vector<int>& labels);

// (1/sqrt2)(|+>_a |->_b  -  |->_a |+>_b). Antisymmetric: swapping the
// argument order negates the state.
StateVector singlet(int label_a, int label_b);

StateVector bell_state(BellKind kind, int label_a, int label_b);

// The four Bell amplitudes over an ordered pair (first argument = MSB).
CVec bell_amplitudes(BellKind kind);

// Two independent singlets: singlet(1,2) tensor singlet(3,4).
StateVector two_singlet_state();

// Tensor product of states on disjoint label sets; the result is laid out
// on the merged ascending labels.
StateVector tensor(const StateVector& a, const StateVector& b);

cplx overlap(const StateVector& a, const StateVector& b);  // <a|b>

// Multiplies by the unit phase that makes the first amplitude with
// magnitude > 1e-12 real and positive.
StateVector phase_canonical(const StateVector& s);

// min over unit phases c of ||a - c b|| = sqrt(2 - 2|<a|b>|).
double phase_insensitive_distance(const StateVector& a, const StateVector& b);

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

}  // namespace qswap
