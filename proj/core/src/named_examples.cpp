// SPDX-License-Identifier: MIT

#include <cmath>
#include <functional>
#include <string>

#include "opdiam/errors.hpp"
#include "opdiam/superop.hpp"

namespace opdiam {

namespace {

SuperOp build_from_unit_images(
    std::size_t n, std::size_t m,
    const std::function<ComplexMatrix(std::size_t, std::size_t)>& image_of_unit) {
    ComplexMatrix choi(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ComplexMatrix img = image_of_unit(i, j);
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) choi(i * m + k, j * m + l) = img(k, l);
        }
    return SuperOp::from_choi(std::move(choi), n, m);
}

std::size_t resolve_dim(const std::string& id, std::size_t requested, std::size_t fixed_dim,
                        std::size_t default_dim) {
    if (fixed_dim != 0) {
        if (requested != 0 && requested != fixed_dim)
            throw UnknownExample("named_example: '" + id + "' is fixed at dimension " +
                                 std::to_string(fixed_dim));
        return fixed_dim;
    }
    const std::size_t n = requested == 0 ? default_dim : requested;
    if (n < 2) throw UnknownExample("named_example: '" + id + "' needs dimension >= 2");
    return n;
}

} // namespace

SuperOp named_example(const std::string& id, std::size_t n_req) {
    if (id == "diambound") {
        const std::size_t n = resolve_dim(id, n_req, 2, 2);
        const double s = 1.0 / std::sqrt(2.0);
        return build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            // [[a,b],[c,d]] -> diag((a+b)/sqrt(2), (d-b)/sqrt(2))
            ComplexMatrix img(2, 2);
            if (i == 0 && j == 0) img(0, 0) = s;
            if (i == 0 && j == 1) {
                img(0, 0) = s;
                img(1, 1) = -s;
            }
            if (i == 1 && j == 1) img(1, 1) = s;
            return img;
        });
    }
    if (id == "corner") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        if (n % 2 != 0) throw UnknownExample("named_example: 'corner' needs even dimension");
        const std::size_t h = n / 2;
        return build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            ComplexMatrix img(n, n);
            if (i < h && j >= h) img(i, j) = 1.0;
            return img;
        });
    }
    if (id == "transpose") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        SuperOp out = build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            ComplexMatrix img(n, n);
            img(j, i) = 1.0;
            return img;
        });
        return out.certify_positive(); // transposition preserves positivity
    }
    if (id == "choi_map") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        SuperOp out = build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            // A -> n tr(A) I - A
            ComplexMatrix img(n, n);
            if (i == j)
                for (std::size_t k = 0; k < n; ++k) img(k, k) = double(n);
            img(i, j) -= 1.0;
            return img;
        });
        return out.certify_positive(); // completely positive by construction
    }
    if (id == "id") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        SuperOp out = build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            ComplexMatrix img(n, n);
            img(i, j) = 1.0;
            return img;
        });
        return out.certify_positive();
    }
    if (id == "id_plus_trace") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        SuperOp out = build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            ComplexMatrix img(n, n);
            img(i, j) = 1.0;
            if (i == j)
                for (std::size_t k = 0; k < n; ++k) img(k, k) += 1.0;
            return img;
        });
        return out.certify_positive();
    }
    if (id == "depolarizing") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        SuperOp out = build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            // A -> (A + tr(A) I / n) / 2
            ComplexMatrix img(n, n);
            img(i, j) = 0.5;
            if (i == j)
                for (std::size_t k = 0; k < n; ++k) img(k, k) += 0.5 / double(n);
            return img;
        });
        return out.certify_positive();
    }
    if (id == "final_psi") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        const double nn = double(n) * double(n);
        const double trace_coeff = (nn - 1.0) / (nn * double(n));
        SuperOp out = build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            // A -> A^T/n^2 + (n^2-1)/n^3 tr(A) I
            ComplexMatrix img(n, n);
            img(j, i) = 1.0 / nn;
            if (i == j)
                for (std::size_t k = 0; k < n; ++k) img(k, k) += trace_coeff;
            return img;
        });
        return out.certify_positive();
    }
    if (id == "final_phi") {
        const std::size_t n = resolve_dim(id, n_req, 0, 2);
        const double nn = double(n) * double(n);
        const double trace_coeff = (nn - 1.0) / double(n);
        return build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            // A -> n^2 A^T - (n^2-1)/n tr(A) I
            ComplexMatrix img(n, n);
            img(j, i) = nn;
            if (i == j)
                for (std::size_t k = 0; k < n; ++k) img(k, k) -= trace_coeff;
            return img;
        });
    }
    if (id == "counterexample") {
        const std::size_t n = resolve_dim(id, n_req, 2, 2);
        return build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            // [[a,b],[c,d]] -> [[a-d, b],[c, a+d]]
            ComplexMatrix img(2, 2);
            if (i == 0 && j == 0) {
                img(0, 0) = 1.0;
                img(1, 1) = 1.0;
            }
            if (i == 0 && j == 1) img(0, 1) = 1.0;
            if (i == 1 && j == 0) img(1, 0) = 1.0;
            if (i == 1 && j == 1) {
                img(0, 0) = -1.0;
                img(1, 1) = 1.0;
            }
            return img;
        });
    }
    if (id == "paulsen") {
        const std::size_t n = resolve_dim(id, n_req, 4, 4);
        return build_from_unit_images(n, n, [&](std::size_t i, std::size_t j) {
            // X -> [[tr(X11)/2 I, X12^T],[X21^T, tr(X22)/2 I]] over 2x2 blocks
            ComplexMatrix img(4, 4);
            if (i == j && i < 2)
                for (std::size_t k = 0; k < 2; ++k) img(k, k) = 0.5;
            if (i == j && i >= 2)
                for (std::size_t k = 2; k < 4; ++k) img(k, k) = 0.5;
            if (i < 2 && j >= 2) img(j - 2, i + 2) = 1.0; // upper-right block, transposed
            if (i >= 2 && j < 2) img(j + 2, i - 2) = 1.0; // lower-left block, transposed
            return img;
        });
    }
    if (id == "trig") {
        const std::size_t n = resolve_dim(id, n_req, 3, 3);
        // S is the cyclic shift e_j -> e_{j+1 mod 3}; the map reads off zeroth
        // and first Fourier coefficients of A against powers of S.
        ComplexMatrix shift(3, 3);
        shift(1, 0) = 1.0;
        shift(2, 1) = 1.0;
        shift(0, 2) = 1.0;
        return build_from_unit_images(n, 2, [&](std::size_t i, std::size_t j) {
            // A -> [[tr(A), 2 tr(S*A)],[2 tr(SA), tr(A)]] / 3
            ComplexMatrix unit(3, 3);
            unit(i, j) = 1.0;
            ComplexMatrix img(2, 2);
            const cplx third(1.0 / 3.0);
            img(0, 0) = third * unit.trace();
            img(1, 1) = img(0, 0);
            img(0, 1) = 2.0 * third * (dagger(shift) * unit).trace();
            img(1, 0) = 2.0 * third * (shift * unit).trace();
            return img;
        });
    }
    throw UnknownExample("named_example: unknown id '" + id + "'");
}

const std::vector<std::string>& named_example_ids() {
    static const std::vector<std::string> ids = {
        "diambound",    "corner",    "transpose", "choi_map",       "id",      "id_plus_trace",
        "depolarizing", "final_psi", "final_phi", "counterexample", "paulsen", "trig"};
    return ids;
}

} // namespace opdiam
