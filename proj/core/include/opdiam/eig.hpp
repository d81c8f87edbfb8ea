// SPDX-License-Identifier: MIT
// Spectral primitives: a cyclic Jacobi eigensolver for complex Hermitian
// matrices, the operator norm via sqrt(lambda_max(A*A)), an SVD assembled
// from it, and the polar factor used by the ascent optimizers.

#pragma once

#include <vector>

#include "opdiam/matrix.hpp"

namespace opdiam {

struct EigenDecomposition {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // columns are orthonormal eigenvectors, same order
};

// Cyclic Jacobi rotations; off-diagonal Frobenius threshold 1e-12 * ||A||_F,
// at most 100 sweeps. Deterministic for a fixed input. Throws NonSquare, and
// NonHermitian when max|A - A*| > atol.
EigenDecomposition hermitian_eig(const ComplexMatrix& a, double atol = kAtol);

// Largest singular value: sqrt of lambda_max(A* A).
double operator_norm(const ComplexMatrix& a);

struct Svd {
    ComplexMatrix u;           // rows(a) x rank-extended square
    std::vector<double> sigma; // descending, length min(rows, cols)
    ComplexMatrix v;           // cols(a) x cols(a); a = u diag(sigma) v*
};

// Full SVD built from hermitian_eig of A*A; U is completed to a square
// unitary so the polar factor below is always defined.
Svd svd(const ComplexMatrix& a);

// Unitary factor U of the polar decomposition A = U P (A square). For
// singular A the factor is completed deterministically.
ComplexMatrix polar_unitary(const ComplexMatrix& a);

// Extremal eigenvalues of a Hermitian matrix without the full decomposition;
// deterministic power iteration, flag-grade accuracy (~1e-8 relative). Used
// only to classify Choi matrices too large for the Jacobi path.
struct ExtremalEigs {
    double min;
    double max;
};
ExtremalEigs hermitian_extremal_eigs(const ComplexMatrix& a, int iters = 512);

// Modified Gram-Schmidt over columns. Returns the orthonormalized columns of
// the input that survive the relative drop tolerance; `kept` (optional)
// receives the surviving source indices.
ComplexMatrix gram_schmidt_columns(const ComplexMatrix& a, double drop_tol = 1e-10,
                                   std::vector<std::size_t>* kept = nullptr);

// Inverse of a square matrix by Gauss-Jordan elimination with partial
// pivoting. Throws DimensionMismatch when a pivot falls below
// pivot_tol * max|A| (numerically singular input).
ComplexMatrix inverse(const ComplexMatrix& a, double pivot_tol = 1e-12);

} // namespace opdiam
