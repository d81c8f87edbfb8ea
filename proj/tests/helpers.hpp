// SPDX-License-Identifier: MIT
// Shared draw/measure helpers for the test suites. Everything is seeded
// through opdiam::Rng so a failing case reproduces bit-for-bit.

#pragma once

#include <cstdint>
#include <vector>

#include "opdiam/eig.hpp"
#include "opdiam/matrix.hpp"
#include "opdiam/rng.hpp"

namespace testutil {

inline opdiam::ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    opdiam::Rng rng(seed);
    const opdiam::ComplexMatrix g = rng.ginibre(n, n);
    opdiam::ComplexMatrix h = g + g.dagger();
    h *= opdiam::cplx(0.5);
    return h;
}

inline opdiam::ComplexMatrix random_unit_column(std::size_t n, std::uint64_t seed) {
    opdiam::Rng rng(seed);
    opdiam::ComplexMatrix v = rng.ginibre(n, 1);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(v(i, 0));
    v *= opdiam::cplx(1.0 / std::sqrt(norm2));
    return v;
}

inline double max_abs_diff(const opdiam::ComplexMatrix& a, const opdiam::ComplexMatrix& b) {
    return (a - b).max_abs();
}

// max|U*U - I|, zero exactly when the columns are orthonormal.
inline double unitarity_error(const opdiam::ComplexMatrix& u) {
    return max_abs_diff(u.dagger() * u, opdiam::ComplexMatrix::identity(u.cols()));
}

inline opdiam::ComplexMatrix diag(const std::vector<opdiam::cplx>& entries) {
    opdiam::ComplexMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

} // namespace testutil
