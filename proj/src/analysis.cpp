#include "qswap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qswap {

namespace {

std::vector<int> sorted_unique(std::vector<int> v, const char* what) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw std::invalid_argument(std::string(what) + ": duplicate label");
    return v;
}

// Scatter table: value index -> full-state index bits, for the given
// (ascending) bit positions out of n.
std::vector<std::size_t> scatter_table(const std::vector<std::size_t>& positions, std::size_t n) {
    const std::size_t dim = std::size_t{1} << positions.size();
    std::vector<std::size_t> table(dim, 0);
    for (std::size_t v = 0; v < dim; ++v)
        for (std::size_t i = 0; i < positions.size(); ++i)
            if ((v >> (positions.size() - 1 - i)) & 1u)
                table[v] |= std::size_t{1} << (n - 1 - positions[i]);
    return table;
}

}  // namespace

DensityMatrix DensityMatrix::make(std::vector<int> labels, CMat matrix) {
    labels = sorted_unique(std::move(labels), "DensityMatrix");
    if (labels.empty()) throw std::invalid_argument("DensityMatrix: no labels");
    const std::size_t dim = std::size_t{1} << labels.size();
    if (matrix.rows != dim || matrix.cols != dim)
        throw std::invalid_argument("DensityMatrix: dimension != 2^n");
    if (!all_finite(matrix)) throw std::invalid_argument("DensityMatrix: non-finite entry");
    if (hermiticity_defect(matrix) > kHermTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    cplx tr{0.0};
    for (std::size_t i = 0; i < dim; ++i) tr += matrix(i, i);
    if (std::abs(tr - 1.0) > kTraceTol) throw std::invalid_argument("DensityMatrix: trace != 1");
    const EighResult eg = eigh(matrix, kHermTol);
    if (eg.values.back() < kEigenFloor)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    return DensityMatrix(std::move(labels), std::move(matrix));
}

std::size_t DensityMatrix::bit_position(int label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        throw std::invalid_argument("unknown particle label " + std::to_string(label));
    return static_cast<std::size_t>(it - labels_.begin());
}

DensityMatrix reduced_density(const StateVector& state, const std::vector<int>& keep_in) {
    const std::vector<int> keep = sorted_unique(keep_in, "reduced_density");
    if (keep.empty()) throw std::invalid_argument("reduced_density: empty keep set");
    const std::size_t n = state.num_qubits();

    std::vector<std::size_t> kpos;
    for (int lbl : keep) kpos.push_back(state.bit_position(lbl));
    std::vector<bool> kept_bit(n, false);
    for (std::size_t p : kpos) kept_bit[p] = true;
    std::vector<std::size_t> rpos;
    for (std::size_t p = 0; p < n; ++p)
        if (!kept_bit[p]) rpos.push_back(p);

    const std::vector<std::size_t> kscatter = scatter_table(kpos, n);
    const std::vector<std::size_t> rscatter = scatter_table(rpos, n);
    const std::size_t dim = kscatter.size();

    const CVec& psi = state.amplitudes();
    CMat rho(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            cplx acc{0.0};
            for (std::size_t rbits : rscatter)
                acc += psi[kscatter[i] | rbits] * std::conj(psi[kscatter[j] | rbits]);
            rho(i, j) = acc;
        }
    return DensityMatrix::make(keep, std::move(rho));
}

DensityMatrix mixed_from_records(const std::vector<OutcomeRecord>& records,
                                 const std::vector<int>& keep) {
    if (records.empty()) throw std::invalid_argument("mixed_from_records: no records");
    CMat acc;
    std::vector<int> labels;
    bool first = true;
    for (const OutcomeRecord& rec : records) {
        if (!rec.post_state) continue;  // probability below the floor
        const DensityMatrix part = reduced_density(*rec.post_state, keep);
        if (first) {
            labels = part.labels();
            acc = CMat(part.matrix().rows, part.matrix().cols);
            first = false;
        }
        for (std::size_t i = 0; i < acc.a.size(); ++i)
            acc.a[i] += rec.probability * part.matrix().a[i];
    }
    if (first) throw std::invalid_argument("mixed_from_records: no surviving branch");
    return DensityMatrix::make(std::move(labels), std::move(acc));
}

SchmidtDecomposition schmidt(const StateVector& state, const std::vector<int>& part_a_in,
                             const std::vector<int>& part_b_in) {
    const std::vector<int> pa = sorted_unique(part_a_in, "schmidt");
    const std::vector<int> pb = sorted_unique(part_b_in, "schmidt");
    if (pa.empty() || pb.empty()) throw std::invalid_argument("schmidt: empty side");
    std::vector<int> both = pa;
    both.insert(both.end(), pb.begin(), pb.end());
    std::sort(both.begin(), both.end());
    if (both != state.labels())
        throw std::invalid_argument("schmidt: bipartition must cover the labels exactly");

    const std::size_t n = state.num_qubits();
    std::vector<std::size_t> apos, bpos;
    for (int lbl : pa) apos.push_back(state.bit_position(lbl));
    for (int lbl : pb) bpos.push_back(state.bit_position(lbl));
    const std::vector<std::size_t> ascatter = scatter_table(apos, n);
    const std::vector<std::size_t> bscatter = scatter_table(bpos, n);

    CMat m(ascatter.size(), bscatter.size());
    for (std::size_t i = 0; i < ascatter.size(); ++i)
        for (std::size_t j = 0; j < bscatter.size(); ++j)
            m(i, j) = state.amplitudes()[ascatter[i] | bscatter[j]];

    SvdResult sv = svd(m);
    SchmidtDecomposition out;
    out.part_a = pa;
    out.part_b = pb;
    out.coefficients = std::move(sv.values);
    const std::size_t k = out.coefficients.size();
    out.left_vectors.reserve(k);
    out.right_vectors.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        CVec l(sv.u.rows), r(sv.v.rows);
        for (std::size_t i = 0; i < sv.u.rows; ++i) l[i] = sv.u(i, c);
        // m = u diag v^dagger, so the local vectors on side B are the
        // conjugated columns of v: state = sum_k c_k left_k (x) right_k.
        for (std::size_t i = 0; i < sv.v.rows; ++i) r[i] = std::conj(sv.v(i, c));
        out.left_vectors.push_back(std::move(l));
        out.right_vectors.push_back(std::move(r));
    }
    return out;
}

double entanglement_entropy(const SchmidtDecomposition& sd) {
    double h = 0.0;
    for (double c : sd.coefficients) {
        if (c <= 1e-12) continue;
        const double p = c * c;
        h -= p * std::log2(p);
    }
    return h;
}

std::size_t schmidt_rank(const SchmidtDecomposition& sd) {
    std::size_t r = 0;
    for (double c : sd.coefficients)
        if (c > 1e-12) ++r;
    return r;
}

double pure_concurrence(const StateVector& state) {
    if (state.num_qubits() != 2) throw std::invalid_argument("pure_concurrence: need 2 qubits");
    const CVec& v = state.amplitudes();
    return 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]);
}

namespace {

CMat sigma_y_pair() {
    CMat sy(2, 2);
    sy(0, 1) = cplx{0.0, -1.0};
    sy(1, 0) = cplx{0.0, 1.0};
    return tensor(sy, sy);
}

// Hermitian square root via the spectral decomposition, negative dust
// clamped to zero.
CMat psd_sqrt(const CMat& m) {
    const EighResult eg = eigh(m, 1e-8);
    CMat out(m.rows, m.cols);
    for (std::size_t k = 0; k < eg.values.size(); ++k) {
        const double lam = std::max(0.0, eg.values[k]);
        const double s = std::sqrt(lam);
        if (s == 0.0) continue;
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                out(i, j) += s * eg.vectors(i, k) * std::conj(eg.vectors(j, k));
    }
    return out;
}

CMat hermitize(const CMat& m) {
    CMat out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

}  // namespace

double mixed_concurrence(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) throw std::invalid_argument("mixed_concurrence: need 2 qubits");
    const CMat yy = sigma_y_pair();
    const CMat rho_tilde = matmul(matmul(yy, conjugate(rho.matrix())), yy);
    // Eigenvalues of rho*rho_tilde equal those of sqrt(rho) rho_tilde
    // sqrt(rho), which is Hermitian PSD.
    const CMat root = psd_sqrt(rho.matrix());
    const CMat m = hermitize(matmul(matmul(root, rho_tilde), root));
    const EighResult eg = eigh(m, 1e-8);
    // The square root amplifies spectral dust near zero, so clamp relative
    // to the leading eigenvalue before taking roots.
    const double floor = 1e-14 * std::max(0.0, eg.values.front());
    std::vector<double> lam;
    for (double v : eg.values) lam.push_back(v <= floor ? 0.0 : std::sqrt(v));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

namespace {

// Apply a 2x2 operator on the qubit at bit position pos (from the MSB).
CVec apply_single_qubit(const CVec& psi, std::size_t n, std::size_t pos, const CMat& op) {
    CVec out(psi.size());
    const std::size_t stride = std::size_t{1} << (n - 1 - pos);
    for (std::size_t idx = 0; idx < psi.size(); ++idx) {
        const std::size_t bit = (idx / stride) & 1u;
        const std::size_t base = idx & ~stride;
        out[idx] = op(bit, 0) * psi[base] + op(bit, 1) * psi[base | stride];
    }
    return out;
}

}  // namespace

double correlator(const StateVector& state, int label_p, const SpinDirection& a, int label_q,
                  const SpinDirection& b) {
    if (label_p == label_q) throw std::invalid_argument("correlator: identical qubits");
    const std::size_t n = state.num_qubits();
    CVec phi = apply_single_qubit(state.amplitudes(), n, state.bit_position(label_p), spin_operator(a));
    phi = apply_single_qubit(phi, n, state.bit_position(label_q), spin_operator(b));
    return inner(state.amplitudes(), phi).real();
}

double correlator(const DensityMatrix& rho, int label_p, const SpinDirection& a, int label_q,
                  const SpinDirection& b) {
    if (label_p == label_q) throw std::invalid_argument("correlator: identical qubits");
    const std::size_t pp = rho.bit_position(label_p);
    const std::size_t pq = rho.bit_position(label_q);
    CMat op(1, 1);
    op(0, 0) = 1.0;
    for (std::size_t pos = 0; pos < rho.num_qubits(); ++pos) {
        if (pos == pp)
            op = tensor(op, spin_operator(a));
        else if (pos == pq)
            op = tensor(op, spin_operator(b));
        else
            op = tensor(op, CMat::identity(2));
    }
    // tr(rho O)
    cplx tr{0.0};
    const CMat& r = rho.matrix();
    for (std::size_t i = 0; i < r.rows; ++i)
        for (std::size_t j = 0; j < r.cols; ++j) tr += r(i, j) * op(j, i);
    return tr.real();
}

bool is_product(const StateVector& state, const std::vector<int>& part_a,
                const std::vector<int>& part_b, double tol) {
    const SchmidtDecomposition sd = schmidt(state, part_a, part_b);
    if (sd.coefficients.size() < 2) return true;
    return sd.coefficients[1] <= tol;
}

}  // namespace qswap
