#include "qswap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qswap {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool all_finite(const CVec& v) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool all_finite(const CMat& m) { return all_finite(m.a); }

CVec tensor(const CVec& x, const CVec& y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("tensor: empty operand");
    CVec out(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
    return out;
}

CMat tensor(const CMat& x, const CMat& y) {
    if (x.a.empty() || y.a.empty()) throw std::invalid_argument("tensor: empty operand");
    CMat out(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            for (std::size_t k = 0; k < y.rows; ++k)
                for (std::size_t l = 0; l < y.cols; ++l)
                    out(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
    return out;
}

CMat dagger(const CMat& m) {
    CMat out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

CMat conjugate(const CMat& m) {
    CMat out = m;
    for (cplx& z : out.a) z = std::conj(z);
    return out;
}

CVec apply(const CMat& m, const CVec& v) {
    if (m.cols != v.size()) throw std::invalid_argument("apply: dimension mismatch");
    CVec out(m.rows, cplx{0.0});
    for (std::size_t i = 0; i < m.rows; ++i) {
        cplx acc{0.0};
        for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CMat matmul(const CMat& x, const CMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matmul: dimension mismatch");
    CMat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const cplx xv = x(i, k);
            if (xv == cplx{0.0}) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out(i, j) += xv * y(k, j);
        }
    return out;
}

CMat outer(const CVec& x, const CVec& y) {
    CMat out(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * std::conj(y[j]);
    return out;
}

cplx inner(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner: dimension mismatch");
    cplx acc{0.0};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm_sq(const CVec& v) {
    double acc = 0.0;
    for (const cplx& z : v) acc += std::norm(z);
    return acc;
}

double vec_norm(const CVec& v) { return std::sqrt(norm_sq(v)); }

double frobenius_norm(const CMat& m) { return vec_norm(m.a); }

double frobenius_distance(const CMat& x, const CMat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("frobenius_distance: shape mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) acc += std::norm(x.a[i] - y.a[i]);
    return std::sqrt(acc);
}

double hermiticity_defect(const CMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("hermiticity_defect: not square");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

namespace {

// 2x2 rotation that diagonalizes the Hermitian block [[app, apq], [conj(apq), aqq]].
// The unitary acts on indices (p,q) as
//   [ c            s          ]
//   [ -s e^{-i*ph}  c e^{-i*ph} ]
// with ph = arg(apq).
struct JacobiRot {
    double c = 1.0;
    double s = 0.0;
    cplx phase{1.0};  // e^{-i*ph}
};

JacobiRot make_rotation(double app, double aqq, cplx apq) {
    JacobiRot r;
    const double b = std::abs(apq);
    if (b == 0.0) return r;
    r.phase = std::conj(apq) / b;
    const double tau = (aqq - app) / (2.0 * b);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    return r;
}

double off_diagonal_norm(const CMat& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (i != j) acc += std::norm(m(i, j));
    return std::sqrt(acc);
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return idx;
}

}  // namespace

EighResult eigh(const CMat& m, double tol_herm) {
    if (m.rows != m.cols || m.rows == 0) throw std::invalid_argument("eigh: not square");
    if (!all_finite(m)) throw std::invalid_argument("eigh: non-finite entries");
    if (hermiticity_defect(m) > tol_herm) throw std::invalid_argument("eigh: not Hermitian");

    const std::size_t n = m.rows;
    CMat h = m;
    // Symmetrize before iterating; the defect is below tol_herm.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cplx avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = avg;
            h(j, i) = std::conj(avg);
        }
    CMat vmat = CMat::identity(n);

    const double scale = std::max(1.0, frobenius_norm(h));
    const double stop = 1e-15 * scale;
    for (int sweep = 0; sweep < 60 && off_diagonal_norm(h) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(h(p, q)) <= stop / n) continue;
                const JacobiRot r = make_rotation(h(p, p).real(), h(q, q).real(), h(p, q));
                // h <- U^dagger h U, columns first then rows
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hp = h(k, p), hq = h(k, q);
                    h(k, p) = r.c * hp - r.s * r.phase * hq;
                    h(k, q) = r.s * hp + r.c * r.phase * hq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hp = h(p, k), hq = h(q, k);
                    h(p, k) = r.c * hp - r.s * std::conj(r.phase) * hq;
                    h(q, k) = r.s * hp + r.c * std::conj(r.phase) * hq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vp = vmat(k, p), vq = vmat(k, q);
                    vmat(k, p) = r.c * vp - r.s * r.phase * vq;
                    vmat(k, q) = r.s * vp + r.c * r.phase * vq;
                }
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = h(i, i).real();
    const std::vector<std::size_t> order = descending_order(values);

    EighResult out;
    out.values.resize(n);
    out.vectors = CMat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = values[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vmat(i, order[k]);
    }
    return out;
}

namespace {

// One-sided Jacobi on the columns of a (rows >= cols assumed by caller).
SvdResult svd_tall(const CMat& m) {
    const std::size_t rows = m.rows, cols = m.cols;
    CMat a = m;
    CMat vmat = CMat::identity(cols);

    bool rotated = true;
    for (int sweep = 0; sweep < 60 && rotated; ++sweep) {
        rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq{0.0};
                for (std::size_t k = 0; k < rows; ++k) {
                    app += std::norm(a(k, p));
                    aqq += std::norm(a(k, q));
                    apq += std::conj(a(k, p)) * a(k, q);
                }
                if (std::norm(apq) <= 1e-30 * app * aqq || std::abs(apq) < 1e-300) continue;
                rotated = true;
                const JacobiRot r = make_rotation(app, aqq, apq);
                for (std::size_t k = 0; k < rows; ++k) {
                    const cplx xp = a(k, p), xq = a(k, q);
                    a(k, p) = r.c * xp - r.s * r.phase * xq;
                    a(k, q) = r.s * xp + r.c * r.phase * xq;
                }
                for (std::size_t k = 0; k < cols; ++k) {
                    const cplx vp = vmat(k, p), vq = vmat(k, q);
                    vmat(k, p) = r.c * vp - r.s * r.phase * vq;
                    vmat(k, q) = r.s * vp + r.c * r.phase * vq;
                }
            }
        }
    }

    std::vector<double> values(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double nsq = 0.0;
        for (std::size_t k = 0; k < rows; ++k) nsq += std::norm(a(k, j));
        values[j] = std::sqrt(nsq);
    }
    const std::vector<std::size_t> order = descending_order(values);

    SvdResult out;
    out.values.resize(cols);
    out.u = CMat(rows, cols);
    out.v = CMat(cols, cols);
    const double cutoff = 1e-14 * std::max(1.0, values.empty() ? 0.0 : values[order[0]]);
    std::size_t completed = 0;
    for (std::size_t k = 0; k < cols; ++k) {
        const std::size_t src = order[k];
        out.values[k] = values[src];
        for (std::size_t i = 0; i < cols; ++i) out.v(i, k) = vmat(i, src);
        if (values[src] > cutoff) {
            for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = a(i, src) / values[src];
        } else {
            completed++;
        }
    }
    if (completed > 0) {
        // Fill columns for vanished singular values by Gram-Schmidt against
        // the ones already present.
        for (std::size_t k = 0; k < cols; ++k) {
            if (out.values[k] > cutoff) continue;
            for (std::size_t e = 0; e < rows; ++e) {
                CVec cand(rows, cplx{0.0});
                cand[e] = 1.0;
                for (std::size_t j = 0; j < cols; ++j) {
                    if (j == k || (out.values[j] <= cutoff && j > k)) continue;
                    cplx proj{0.0};
                    for (std::size_t i = 0; i < rows; ++i) proj += std::conj(out.u(i, j)) * cand[i];
                    for (std::size_t i = 0; i < rows; ++i) cand[i] -= proj * out.u(i, j);
                }
                const double nn = vec_norm(cand);
                if (nn > 0.5) {
                    for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = cand[i] / nn;
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace

SvdResult svd(const CMat& m) {
    if (m.rows == 0 || m.cols == 0) throw std::invalid_argument("svd: empty matrix");
    if (!all_finite(m)) throw std::invalid_argument("svd: non-finite entries");
    if (m.rows >= m.cols) return svd_tall(m);
    SvdResult t = svd_tall(dagger(m));
    SvdResult out;
    out.values = std::move(t.values);
    out.u = std::move(t.v);
    out.v = std::move(t.u);
    return out;
}

std::vector<double> singular_values(const CMat& m) { return svd(m).values; }

}  // namespace qswap
