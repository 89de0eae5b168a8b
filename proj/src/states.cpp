#include "qswap/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qswap {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool strictly_ascending(const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i]) return false;
    return true;
}

}  // namespace

const char* bell_name(BellKind k) {
    switch (k) {
        case BellKind::PsiPlus: return "Ψ+";
        case BellKind::PsiMinus: return "Ψ-";
        case BellKind::PhiPlus: return "Φ+";
        case BellKind::PhiMinus: return "Φ-";
    }
    throw std::invalid_argument("bell_name: bad kind");
}

StateVector::StateVector(std::vector<int> labels, CVec amplitudes)
    : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
    if (labels_.empty()) throw std::invalid_argument("StateVector: no labels");
    if (!strictly_ascending(labels_))
        throw std::invalid_argument("StateVector: labels must be distinct ascending");
    if (amps_.size() != (std::size_t{1} << labels_.size()))
        throw std::invalid_argument("StateVector: amplitude count != 2^n");
    if (!all_finite(amps_)) throw std::invalid_argument("StateVector: non-finite amplitude");
    const double n2 = norm_sq(amps_);
    if (std::abs(n2 - 1.0) > kNormTolerance)
        throw std::invalid_argument("StateVector: not normalized");
}

std::size_t StateVector::bit_position(int label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        throw std::invalid_argument("unknown particle label " + std::to_string(label));
    return static_cast<std::size_t>(it - labels_.begin());
}

bool StateVector::has_label(int label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

StateVector basis_ket(const std::vector<Spin>& pattern) {
    std::vector<int> labels(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) labels[i] = static_cast<int>(i) + 1;
    return basis_ket(pattern, labels);
}

StateVector basis_ket(const std::vector<Spin>& pattern, const std::vector<int>& labels) {
    if (pattern.empty()) throw std::invalid_argument("basis_ket: empty pattern");
    if (pattern.size() != labels.size())
        throw std::invalid_argument("basis_ket: pattern/label count mismatch");
    const std::size_t n = pattern.size();
    // pattern[i] belongs to labels[i]; amplitudes are laid out over the
    // sorted labels.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return labels[a] < labels[b];
    });
    std::vector<int> sorted(n);
    std::size_t index = 0;
    for (std::size_t rank = 0; rank < n; ++rank) {
        sorted[rank] = labels[order[rank]];
        index = (index << 1) | static_cast<std::size_t>(pattern[order[rank]]);
    }
    CVec amps(std::size_t{1} << n, cplx{0.0});
    amps[index] = 1.0;
    return StateVector(std::move(sorted), std::move(amps));
}

namespace {

// Two-qubit amplitudes given over an ordered pair (first = MSB), relaid
// onto ascending labels.
StateVector pair_state(int a, int b, const CVec& over_ab) {
    if (a == b) throw std::invalid_argument("pair state: duplicate labels");
    if (a < b) return StateVector({a, b}, over_ab);
    CVec sw(4);
    sw[0] = over_ab[0];
    sw[1] = over_ab[2];
    sw[2] = over_ab[1];
    sw[3] = over_ab[3];
    return StateVector({b, a}, std::move(sw));
}

}  // namespace

StateVector singlet(int label_a, int label_b) {
    return pair_state(label_a, label_b, {0.0, kInvSqrt2, -kInvSqrt2, 0.0});
}

CVec bell_amplitudes(BellKind kind) {
    switch (kind) {
        case BellKind::PsiPlus: return {0.0, kInvSqrt2, kInvSqrt2, 0.0};
        case BellKind::PsiMinus: return {0.0, kInvSqrt2, -kInvSqrt2, 0.0};
        case BellKind::PhiPlus: return {kInvSqrt2, 0.0, 0.0, kInvSqrt2};
        case BellKind::PhiMinus: return {kInvSqrt2, 0.0, 0.0, -kInvSqrt2};
    }
    throw std::invalid_argument("bell_amplitudes: bad kind");
}

StateVector bell_state(BellKind kind, int label_a, int label_b) {
    return pair_state(label_a, label_b, bell_amplitudes(kind));
}

StateVector two_singlet_state() { return tensor(singlet(1, 2), singlet(3, 4)); }

StateVector tensor(const StateVector& a, const StateVector& b) {
    for (int lbl : b.labels())
        if (a.has_label(lbl))
            throw std::invalid_argument("tensor: label " + std::to_string(lbl) + " on both sides");

    CVec flat = tensor(a.amplitudes(), b.amplitudes());

    if (a.labels().back() < b.labels().front()) {
        // Already in ascending layout; keep the raw Kronecker product so the
        // construction is entrywise identical to tensor() on amplitudes.
        std::vector<int> labels = a.labels();
        labels.insert(labels.end(), b.labels().begin(), b.labels().end());
        return StateVector(std::move(labels), std::move(flat));
    }

    const std::size_t na = a.num_qubits(), nb = b.num_qubits(), n = na + nb;
    std::vector<int> merged(n);
    std::merge(a.labels().begin(), a.labels().end(), b.labels().begin(), b.labels().end(),
               merged.begin());
    // flat index = idx_a * 2^nb + idx_b, so a's bit p sits at flat bit
    // n-1-p (counted from the LSB) and b's bit p at nb-1-p.
    std::vector<std::size_t> shift(n);
    for (std::size_t k = 0; k < n; ++k) {
        const int lbl = merged[k];
        if (a.has_label(lbl))
            shift[k] = n - 1 - a.bit_position(lbl);
        else
            shift[k] = nb - 1 - b.bit_position(lbl);
    }
    CVec out(flat.size());
    for (std::size_t src = 0; src < flat.size(); ++src) {
        std::size_t dst = 0;
        for (std::size_t k = 0; k < n; ++k) dst = (dst << 1) | ((src >> shift[k]) & 1u);
        out[dst] = flat[src];
    }
    return StateVector(std::move(merged), std::move(out));
}

cplx overlap(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("overlap: dimension mismatch");
    return inner(a.amplitudes(), b.amplitudes());
}

StateVector phase_canonical(const StateVector& s) {
    for (const cplx& z : s.amplitudes()) {
        const double mag = std::abs(z);
        if (mag > 1e-12) {
            const cplx rot = std::conj(z) / mag;
            CVec amps = s.amplitudes();
            for (cplx& w : amps) w *= rot;
            return StateVector(s.labels(), std::move(amps));
        }
    }
    return s;  // unreachable for normalized states
}

double phase_insensitive_distance(const StateVector& a, const StateVector& b) {
    const double ov = std::abs(overlap(a, b));
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * ov));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("equal_up_to_global_phase: size mismatch");
    const StateVector ca = phase_canonical(a);
    const StateVector cb = phase_canonical(b);
    double d2 = 0.0;
    for (std::size_t i = 0; i < ca.dim(); ++i) d2 += std::norm(ca.amplitudes()[i] - cb.amplitudes()[i]);
    return std::sqrt(d2) <= tol;
}

}  // namespace qswap
