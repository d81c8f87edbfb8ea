// SPDX-License-Identifier: MIT
// Dense complex matrices (row-major, double precision) and the elementary
// transforms the rest of the library is built on: kron, dagger, re/im parts,
// blockwise application. Everything here is a pure value operation.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "opdiam/errors.hpp"

namespace opdiam {

using cplx = std::complex<double>;

// Default tolerances (overridable per call): atol for structural checks such
// as hermiticity and positive semidefiniteness, rtol for spectral residuals.
inline constexpr double kAtol = 1e-10;
inline constexpr double kRtol = 1e-9;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    // Matrix unit E_ij (1 at row i, column j).
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
        ComplexMatrix m(n, n);
        m(i, j) = 1.0;
        return m;
    }
    // Column vector from entries.
    static ComplexMatrix column(const std::vector<cplx>& entries) {
        ComplexMatrix m(entries.size(), 1);
        m.a_ = entries;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return a_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

    ComplexMatrix dagger() const;    // conjugate transpose
    ComplexMatrix transpose() const; // plain transpose
    ComplexMatrix conj() const;      // entrywise conjugate

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const; // entrywise max modulus

    // max|A - A*| <= atol, the structural hermiticity check.
    bool is_hermitian(double atol = kAtol) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx scalar);

ComplexMatrix dagger(const ComplexMatrix& a);

// Kronecker product with first-factor-outer indexing:
// kron(A, B)[i*rB + k, j*cB + l] = A(i,j) * B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Hermitian/anti-Hermitian split: re_part(A) = (A + A*)/2,
// im_part(A) = (A - A*)/(2i); both Hermitian and A = re + i*im exactly.
ComplexMatrix re_part(const ComplexMatrix& a);
ComplexMatrix im_part(const ComplexMatrix& a);

// Apply f to each inner block of a square block matrix X in M_k(M_n): X is
// (k*n) x (k*n), block (u,v) is n x n, and the result is the block matrix of
// images. All images must share one square dimension m; the result is
// (k*m) x (k*m).
ComplexMatrix block_apply(const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
                          const ComplexMatrix& x, std::size_t inner_dim);

// Extract the square inner block (u, v) of a block matrix with n x n blocks.
ComplexMatrix block_at(const ComplexMatrix& x, std::size_t inner_dim, std::size_t u,
                       std::size_t v);

// Hilbert-Schmidt inner product tr(A* B).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// <Av, v> for a unit column vector v (no normalization applied).
cplx rayleigh(const ComplexMatrix& a, const ComplexMatrix& v);

} // namespace opdiam
