// SPDX-License-Identifier: MIT

#include "opdiam/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opdiam {

namespace {

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& a, double atol) {
    if (!a.is_square())
        throw NonSquare("hermitian_eig: " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()));
    if (!a.is_hermitian(atol)) throw NonHermitian("hermitian_eig: max|A - A*| exceeds atol");

    const std::size_t n = a.rows();
    // Work on the exactly Hermitian average so rounding in the input cannot
    // push rotations off the Hermitian manifold.
    ComplexMatrix h = re_part(a);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = 1e-12 * h.frobenius_norm();
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(h) <= threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(h(p, q));
                if (r <= threshold / (double(n) + 1.0)) continue;

                // Complex Jacobi rotation annihilating h(p,q): with
                // h(p,q) = r e^{i phi}, tau = (h_qq - h_pp) / (2r), pick the
                // stable root of t^2 + 2 tau t - 1 = 0.
                const cplx phase = h(p, q) / r;
                const double tau = (h(q, q).real() - h(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Unitary U = I except U(p,p)=c, U(p,q)=s*phase,
                // U(q,p)=-s*conj(phase), U(q,q)=c; update h <- U* h U.
                const cplx upq = s * phase;
                const cplx uqp = -s * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hkp = h(k, p);
                    const cplx hkq = h(k, q);
                    h(k, p) = hkp * c + hkq * uqp;
                    h(k, q) = hkp * upq + hkq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hpk = h(p, k);
                    const cplx hqk = h(q, k);
                    h(p, k) = c * hpk + std::conj(uqp) * hqk;
                    h(q, k) = std::conj(upq) * hpk + c * hqk;
                }
                // Clean the pivot pair: mathematically exact zeros/reals.
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * c;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        out.values[idx] = h(order[idx], order[idx]).real();
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, idx) = v(k, order[idx]);
    }
    return out;
}

double operator_norm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const ComplexMatrix gram = a.dagger() * a;
    const EigenDecomposition eig = hermitian_eig(gram, kAtol * (1.0 + gram.max_abs()));
    const double lam = eig.values.empty() ? 0.0 : eig.values.back();
    return std::sqrt(std::max(0.0, lam));
}

Svd svd(const ComplexMatrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    const ComplexMatrix gram = a.dagger() * a; // cols x cols
    const EigenDecomposition eig = hermitian_eig(gram, kAtol * (1.0 + gram.max_abs()));

    Svd out;
    out.v = ComplexMatrix(cols, cols);
    const std::size_t rank_max = std::min(rows, cols);
    out.sigma.assign(rank_max, 0.0);

    // Descending singular values: reverse the ascending eigen order.
    std::vector<double> sig_all(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t src = cols - 1 - j;
        sig_all[j] = std::sqrt(std::max(0.0, eig.values[src]));
        for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = eig.vectors(i, src);
    }
    for (std::size_t j = 0; j < rank_max; ++j) out.sigma[j] = sig_all[j];

    // Left vectors: u_j = A v_j / sigma_j where well-conditioned, then a
    // deterministic completion to a full unitary basis of C^rows.
    out.u = ComplexMatrix(rows, rows);
    const double sigma_floor = (sig_all.empty() ? 0.0 : sig_all[0]) * 1e-13;
    std::size_t filled = 0;
    for (std::size_t j = 0; j < rank_max && sig_all[j] > sigma_floor; ++j, ++filled) {
        for (std::size_t i = 0; i < rows; ++i) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < cols; ++k) s += a(i, k) * out.v(k, j);
            out.u(i, filled) = s / sig_all[j];
        }
    }
    if (filled < rows) {
        // Orthonormalize [filled u-columns | standard basis] and keep rows
        // columns total.
        ComplexMatrix cand(rows, filled + rows);
        for (std::size_t j = 0; j < filled; ++j)
            for (std::size_t i = 0; i < rows; ++i) cand(i, j) = out.u(i, j);
        for (std::size_t j = 0; j < rows; ++j) cand(j, filled + j) = 1.0;
        ComplexMatrix basis = gram_schmidt_columns(cand, 1e-9);
        for (std::size_t j = 0; j < rows; ++j)
            for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = basis(i, j);
    }
    return out;
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
    if (!a.is_square()) throw NonSquare("polar_unitary");
    const std::size_t n = a.rows();
    const Svd dec = svd(a);

    // Left vectors for singular values near the gram-formation noise floor
    // (about sqrt(eps) relative) are unreliable: u_j = A v_j / sigma_j with
    // both numerator and denominator at roundoff scale can land far from any
    // unit vector. Keep only the trusted columns and re-orthonormalize with a
    // standard-basis completion so the returned factor is a genuine unitary,
    // which the ascent code relies on when it quotes witness ratios.
    const double trust = (dec.sigma.empty() ? 0.0 : dec.sigma[0]) * 1e-7;
    std::size_t kept = 0;
    while (kept < dec.sigma.size() && dec.sigma[kept] > trust) ++kept;

    ComplexMatrix cand(n, kept + n);
    for (std::size_t j = 0; j < kept; ++j)
        for (std::size_t i = 0; i < n; ++i) cand(i, j) = dec.u(i, j);
    for (std::size_t j = 0; j < n; ++j) cand(j, kept + j) = 1.0;
    const ComplexMatrix basis = gram_schmidt_columns(cand, 1e-9);

    ComplexMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) u(i, j) = basis(i, j);
    return u * dec.v.dagger();
}

ExtremalEigs hermitian_extremal_eigs(const ComplexMatrix& a, int iters) {
    if (!a.is_square()) throw NonSquare("hermitian_extremal_eigs");
    const std::size_t n = a.rows();
    if (n == 0) return {0.0, 0.0};

    // Gershgorin shift bound so both ends can be reached by power iteration
    // on shifted matrices.
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
        bound = std::max(bound, row);
    }
    if (bound == 0.0) return {0.0, 0.0};

    // Rayleigh quotient of (sign * a + bound * I) after power iteration from
    // a fixed deterministic start; the shift keeps the iterated matrix PSD so
    // the dominant eigenvalue is the one we want.
    auto shifted_top = [&](double sign) {
        std::vector<cplx> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = cplx(1.0 + 0.37 * double((i * 2654435761u) % 97) / 97.0,
                        0.11 * double((i * 40503u) % 89) / 89.0);
        for (int it = 0; it < iters; ++it) {
            std::vector<cplx> y(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                cplx s = bound * x[i];
                for (std::size_t j = 0; j < n; ++j) s += sign * a(i, j) * x[j];
                y[i] = s;
            }
            double norm = 0.0;
            for (const auto& v : y) norm += std::norm(v);
            norm = std::sqrt(norm);
            if (norm == 0.0) return 0.0;
            for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        }
        cplx rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += sign * a(i, j) * x[j];
            rq += std::conj(x[i]) * s;
        }
        return rq.real();
    };

    ExtremalEigs out;
    out.max = shifted_top(1.0);
    out.min = -shifted_top(-1.0);
    return out;
}

ComplexMatrix gram_schmidt_columns(const ComplexMatrix& a, double drop_tol,
                                   std::vector<std::size_t>* kept) {
    const std::size_t rows = a.rows();
    std::vector<std::vector<cplx>> basis;
    std::vector<std::size_t> kept_idx;

    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::vector<cplx> w(rows);
        double input_norm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            w[i] = a(i, j);
            input_norm += std::norm(w[i]);
        }
        input_norm = std::sqrt(input_norm);

        for (int pass = 0; pass < 2; ++pass) { // re-orthogonalize once for stability
            for (const auto& b : basis) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < rows; ++i) proj += std::conj(b[i]) * w[i];
                for (std::size_t i = 0; i < rows; ++i) w[i] -= proj * b[i];
            }
        }
        double norm = 0.0;
        for (const auto& v : w) norm += std::norm(v);
        norm = std::sqrt(norm);
        if (norm <= drop_tol * std::max(1.0, input_norm)) continue;
        for (auto& v : w) v /= norm;
        basis.push_back(std::move(w));
        kept_idx.push_back(j);
    }

    ComplexMatrix out(rows, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) out(i, j) = basis[j][i];
    if (kept) *kept = std::move(kept_idx);
    return out;
}

ComplexMatrix inverse(const ComplexMatrix& a, double pivot_tol) {
    if (!a.is_square())
        throw DimensionMismatch("inverse: matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
    const std::size_t n = a.rows();
    const double floor = pivot_tol * std::max(1.0, a.max_abs());

    ComplexMatrix work = a;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
        if (std::abs(work(pivot, col)) <= floor)
            throw DimensionMismatch("inverse: matrix is numerically singular");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const cplx scale = 1.0 / work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx factor = work(r, col);
            if (factor == cplx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= factor * work(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace opdiam
