#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qswap {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense row-major complex matrix. Everything in this project is tiny
// (dim <= 2^8), so no blocking, no sparsity, no BLAS.
struct CMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    CVec a;  // rows*cols entries, row-major

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static CMat identity(std::size_t n);
};

bool all_finite(const CVec& v);
bool all_finite(const CMat& m);

// Kronecker product; entry (i*dim(y)+j) = x[i]*y[j].
CVec tensor(const CVec& x, const CVec& y);
CMat tensor(const CMat& x, const CMat& y);

CMat dagger(const CMat& m);
CMat conjugate(const CMat& m);
CVec apply(const CMat& m, const CVec& v);
CMat matmul(const CMat& x, const CMat& y);
CMat outer(const CVec& x, const CVec& y);  // |x><y|

cplx inner(const CVec& x, const CVec& y);  // <x|y>, conjugate-linear in x
double norm_sq(const CVec& v);
double vec_norm(const CVec& v);

double frobenius_norm(const CMat& m);
double frobenius_distance(const CMat& x, const CMat& y);

// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_defect(const CMat& m);

struct EighResult {
    std::vector<double> values;  // real eigenvalues, descending; ties keep prior order
    CMat vectors;                // column k is the eigenvector of values[k]
};

// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
// Throws std::invalid_argument if m is not square or not Hermitian
// within tol_herm.
EighResult eigh(const CMat& m, double tol_herm = 1e-10);

struct SvdResult {
    std::vector<double> values;  // min(rows, cols) singular values, descending
    CMat u;                      // rows x k
    CMat v;                      // cols x k, so that m = u diag(values) v^dagger
};

// One-sided (Hestenes) Jacobi SVD. Columns for numerically zero singular
// values are completed to an orthonormal set.
SvdResult svd(const CMat& m);
std::vector<double> singular_values(const CMat& m);

}  // namespace qswap
