// SPDX-License-Identifier: MIT

#include <cmath>
#include <string>
#include <vector>

#include "opdiam/eig.hpp"
#include "opdiam/errors.hpp"
#include "opdiam/rng.hpp"
#include "opdiam/superop.hpp"

namespace opdiam {

namespace {

// A -> V*(A tensor I_env)V for a Haar-ish isometry V : C^m -> C^n tensor
// C^env, realized through its Kraus operators so complete positivity is
// certified by construction. Unital because V*V = I_m.
SuperOp random_unital_channel(std::size_t n, std::size_t m, Rng& rng) {
    const std::size_t env = (m + 2 * n - 1) / n; // smallest count with n*env >= m+n
    for (int attempt = 0; attempt < 8; ++attempt) {
        const ComplexMatrix draw = rng.ginibre(n * env, m);
        std::vector<std::size_t> kept;
        const ComplexMatrix isometry = gram_schmidt_columns(draw, 1e-10, &kept);
        if (kept.size() != m) continue; // rank-deficient draw; redraw

        std::vector<ComplexMatrix> kraus;
        kraus.reserve(env);
        for (std::size_t e = 0; e < env; ++e) {
            ComplexMatrix op(m, n);
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t i = 0; i < n; ++i) op(k, i) = std::conj(isometry(i * env + e, k));
            kraus.push_back(std::move(op));
        }
        return SuperOp::from_kraus(kraus);
    }
    throw ResourceLimit("random_superop: could not draw a full-rank isometry");
}

} // namespace

SuperOp random_superop(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed,
                       std::size_t max_dim) {
    if (n == 0 || m == 0) throw DimensionMismatch("random_superop: dimensions must be positive");
    if (std::max(n, m) > max_dim)
        throw ResourceLimit("random_superop: dimension " + std::to_string(std::max(n, m)) +
                            " past the cap " + std::to_string(max_dim));

    if (kind == "hermitian_choi") {
        Rng rng(Rng::derive(seed, 1));
        const std::size_t d = n * m;
        ComplexMatrix choi = re_part(rng.ginibre(d, d));
        choi *= cplx(1.0 / std::sqrt(double(d)));
        return SuperOp::from_choi(std::move(choi), n, m);
    }
    if (kind == "ginibre_cp") {
        Rng rng(Rng::derive(seed, 2));
        const std::size_t d = n * m;
        const ComplexMatrix g = rng.ginibre(d, d);
        ComplexMatrix choi = g * dagger(g);
        choi *= cplx(1.0 / double(d));
        SuperOp out = SuperOp::from_choi(std::move(choi), n, m);
        return out.certify_positive();
    }
    if (kind == "unital_channel") {
        Rng rng(Rng::derive(seed, 3));
        return random_unital_channel(n, m, rng);
    }
    if (kind == "ucp_bijection") {
        if (n != m) throw DimensionMismatch("random_superop: ucp_bijection needs n = m");
        Rng rng(Rng::derive(seed, 4));
        const SuperOp perturb = random_unital_channel(n, n, rng);
        const SuperOp ident = named_example("id", n);
        double t = 0.2;
        for (int attempt = 0; attempt < 8; ++attempt, t *= 0.5) {
            ComplexMatrix choi = ident.choi();
            choi *= cplx(1.0 - t);
            ComplexMatrix part = perturb.choi();
            part *= cplx(t);
            choi += part;
            SuperOp out = SuperOp::from_choi(std::move(choi), n, n);
            try {
                (void)inverse(out.to_transfer(), 1e-8);
            } catch (const DimensionMismatch&) {
                continue; // numerically singular mix; shrink the perturbation
            }
            return out.certify_positive();
        }
        throw ResourceLimit("random_superop: could not build an invertible ucp mix");
    }
    throw UnknownExample("random_superop: unknown kind '" + kind + "'");
}

} // namespace opdiam
