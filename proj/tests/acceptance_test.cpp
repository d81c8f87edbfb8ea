// SPDX-License-Identifier: MIT
// Acceptance gate: fourteen end-to-end criteria, one line of output each.
// A criterion fails if any of its checks fail or if it overruns its wall
// budget; the process exits nonzero when anything failed. All randomness is
// seeded, so a failure here reproduces exactly.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "opdiam/circle.hpp"
#include "opdiam/diamnorm.hpp"
#include "opdiam/errors.hpp"
#include "opdiam/numrange.hpp"
#include "opdiam/rng.hpp"
#include "opdiam/superop.hpp"

#include "helpers.hpp"

using namespace opdiam;

namespace {

struct Gate {
    bool ok = true;
    std::string first_failure;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

int g_failures = 0;

void run_criterion(int index, const std::string& name, double budget_seconds,
                   const std::function<void(Gate&)>& body) {
    Gate gate;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(gate);
    } catch (const std::exception& ex) {
        gate.require(false, std::string("exception: ") + ex.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed <= budget_seconds;
    const bool pass = gate.ok && in_budget;
    if (!pass) ++g_failures;

    std::string reason;
    if (!gate.ok) reason = " :: " + gate.first_failure;
    else if (!in_budget) reason = " :: over budget";
    std::printf("[%s] %2d. %s (%.2fs, budget %.0fs)%s\n", pass ? "PASS" : "FAIL", index,
                name.c_str(), elapsed, budget_seconds, reason.c_str());
}

double choi_lambda_min(const ComplexMatrix& choi) {
    return hermitian_eig(re_part(choi)).values.front();
}

double diameter_ratio(const SuperOp& phi, const ComplexMatrix& e) {
    return numerical_diameter(phi.apply(e)).value / numerical_diameter(e).value;
}

// interval [lower - tol, upper + tol] must contain the expected value, and
// the lower bound must actually reach it: sound AND sharp.
bool brackets(const DiamEstimate& est, double expected, double tol) {
    return est.lower >= expected - tol && est.lower <= expected + 1e-9 * (1.0 + expected) &&
           expected <= est.upper + tol;
}

double minus_part_norm_at_identity(const SuperOp& phi) {
    const KrausDecomposition kd = choi_kraus(phi);
    if (kd.ops_minus.empty()) return 0.0;
    ComplexMatrix acc(phi.dim_out(), phi.dim_out());
    for (const ComplexMatrix& k : kd.ops_minus) acc += k * k.dagger();
    return operator_norm(acc);
}

void criterion_rank_one(Gate& g) {
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const ComplexMatrix u = testutil::random_unit_column(n, 101 + 2 * trial);
        const ComplexMatrix v = testutil::random_unit_column(n, 102 + 2 * trial);
        const double d = numerical_diameter(u * v.dagger()).value;
        g.require(std::abs(d - 1.0) <= 1e-8,
                  "rank-one diameter " + std::to_string(d) + " at trial " + std::to_string(trial));
    }
}

void criterion_jung_saturation(Gate& g) {
    const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const ComplexMatrix e = testutil::diag({cplx(1.0, 0.0), omega, omega * omega});
    const double d = numerical_diameter(e).value;
    g.require(std::abs(d - std::sqrt(3.0)) <= 1e-8, "diameter is not sqrt(3)");
    const Circle c = min_enclosing_circle(range_sample(e, 512).boundary);
    g.require(std::abs(c.radius - 1.0) <= 1e-6, "enclosing radius is not 1");
    g.require(std::abs(c.radius / d - 1.0 / std::sqrt(3.0)) <= 1e-6,
              "radius/diameter misses 1/sqrt(3)");
}

void criterion_hermitian_centering(Gate& g) {
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 8;
        const ComplexMatrix e = testutil::random_hermitian(n, 300 + trial);
        const double diam = numerical_diameter(e).value;
        const CenteringConstants k = centering_constants(e);
        const ComplexMatrix centered = e - cplx(k.k_re) * ComplexMatrix::identity(n);
        g.require(std::abs(operator_norm(centered) - 0.5 * diam) <= 1e-8,
                  "recentered norm misses half the diameter at trial " + std::to_string(trial));
    }
}

void criterion_norm_diameter_gap(Gate& g) {
    const SuperOp phi = named_example("diambound");
    const DiamEstimate op = map_norm(phi);
    g.require(brackets(op, 1.0, 1e-3), "operator norm interval misses 1");
    const DiamEstimate dm = diam_estimate(phi);
    g.require(dm.lower >= std::sqrt(2.0) - 1e-3, "diameter lower bound below sqrt(2)");
    g.require(!dm.witness.empty() &&
                  std::abs(diameter_ratio(phi, dm.witness) - dm.lower) <= 1e-6 * (1.0 + dm.lower),
              "diameter witness does not certify its bound");
}

void criterion_corner_half(Gate& g) {
    const SuperOp phi = named_example("corner", 2);
    g.require(brackets(sdiam_estimate(phi), 0.5, 2e-3), "level-1 interval misses 1/2");
    g.require(brackets(cb_lower(phi, Quantity::cbsdiam, 2), 0.5, 2e-3),
              "level-2 interval misses 1/2");
    g.require(brackets(map_norm(phi), 1.0, 1e-3), "operator norm interval misses 1");
}

void criterion_transpose_cb(Gate& g) {
    for (std::size_t n : {2, 3}) {
        const SuperOp t = named_example("transpose", n);
        g.require(brackets(diam_estimate(t), 1.0, 2e-3),
                  "diameter interval misses 1 at n=" + std::to_string(n));
        const DiamEstimate cb = cb_lower(t, Quantity::cb, n);
        g.require(std::abs(cb.lower - double(n)) <= 1e-8,
                  "swap witness misses the exact value " + std::to_string(n));
    }
}

void criterion_choi_map_cp(Gate& g) {
    for (std::size_t n = 2; n <= 5; ++n)
        g.require(choi_lambda_min(named_example("choi_map", n).choi()) >= -1e-10,
                  "Choi matrix not PSD at n=" + std::to_string(n));
}

void criterion_trace_translation(Gate& g) {
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t m = 2 + (trial / 3) % 3;
        const SuperOp phi = random_superop("hermitian_choi", n, m, 400 + trial);
        const TraceTranslation tt = trace_translate_cp(phi);
        g.require(tt.beta >= 0.0, "negative shift at trial " + std::to_string(trial));
        const double expected = double(m * m) * minus_part_norm_at_identity(phi);
        g.require(std::abs(tt.beta - expected) <= 1e-8 * (1.0 + expected),
                  "shift is not m^2 times the negative part at the identity, trial " +
                      std::to_string(trial));
        const double scale = 1.0 + tt.cp_map.choi().max_abs();
        g.require(choi_lambda_min(tt.cp_map.choi()) >= -1e-9 * scale,
                  "translated Choi not PSD at trial " + std::to_string(trial));
    }
}

void criterion_section_translation(Gate& g) {
    const SectionTranslation st = section_translate(named_example("final_phi", 2));
    const SuperOp round = compose(st.cp_left_inverse, st.section);
    g.require((round.choi() - named_example("id", 2).choi()).max_abs() <= 1e-9,
              "left inverse does not round-trip to the identity");

    const SuperOp cex = named_example("counterexample");
    bool raised = false;
    try {
        (void)section_translate(cex);
    } catch (const NotScaledTP&) {
        raised = true;
    }
    g.require(raised, "trace-scale violation was not rejected");

    // Shifting by multiples of tr(.) I fixes a traceless input, and this one
    // is carried from a non-positive matrix to a positive one.
    const ComplexMatrix obs = testutil::diag({1.0, -1.0});
    const ComplexMatrix want = testutil::diag({2.0, 0.0});
    for (double gamma : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        ComplexMatrix choi = cex.choi();
        for (std::size_t i = 0; i < choi.rows(); ++i) choi(i, i) += gamma;
        const SuperOp shifted = SuperOp::from_choi(std::move(choi), 2, 2);
        g.require((shifted.apply(obs) - want).max_abs() <= 1e-12,
                  "shifted image wrong at gamma=" + std::to_string(gamma));
    }
}

void criterion_final_chain(Gate& g) {
    const SuperOp psi = named_example("final_psi", 2);
    g.require(psi.flags().unital && psi.flags().cp, "channel flags missing");
    g.require(psi.flags().trace_scale && std::abs(*psi.flags().trace_scale - cplx(1.0)) <= 1e-10,
              "channel is not trace-preserving");

    const SuperOp phi = named_example("final_phi", 2);
    g.require((phi.apply(ComplexMatrix::identity(2)) - ComplexMatrix::identity(2)).max_abs() <=
                  1e-12,
              "section is not unital");

    const DiamEstimate dm = diam_estimate(phi);
    g.require(brackets(dm, 4.0, 2e-3), "diameter interval misses 4");
    g.require(!dm.witness.empty() &&
                  std::abs(diameter_ratio(phi, dm.witness) - dm.lower) <= 1e-6 * (1.0 + dm.lower),
              "diameter witness does not certify its bound");

    const DiamEstimate cb = cb_lower(phi, Quantity::cb, 2);
    g.require(std::abs(cb.lower - 6.5) <= 1e-8, "swap witness misses 6.5");
    g.require(cb.lower >= 5.0, "amplified norm fails to clear 5");
}

void criterion_amplified_growth(Gate& g) {
    const SuperOp phi = named_example("id_plus_trace", 2);

    // The off-diagonal identity block matrix at level 2, evaluated directly.
    ComplexMatrix cross(4, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        cross(i, 2 + i) = 1.0;
        cross(2 + i, i) = 1.0;
    }
    const double ratio = diameter_ratio(amplify(phi, 2), cross);
    g.require(std::abs(ratio - 3.0) <= 1e-8, "cross witness ratio is not 3");

    g.require(cb_lower(phi, Quantity::cbdiam, 2).lower >= 3.0 - 1e-8,
              "level-2 lower bound below 3");
    g.require(brackets(diam_estimate(phi), 1.0, 2e-3), "level-1 interval misses 1");
}

void criterion_ucp_contractivity(Gate& g) {
    Budget small;
    small.restarts = 4;
    small.iters = 60;
    small.grid = 64;
    small.coarse_grid = 32;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const SuperOp phi = random_superop("unital_channel", n, n, 500 + trial);

        Rng rng(Rng::derive(600, std::uint64_t(trial)));
        const ComplexMatrix e = rng.ginibre(n, n);
        const ComplexMatrix image = phi.apply(e);
        for (int a = 0; a < 64; ++a) {
            const double theta = 2.0 * std::numbers::pi * double(a) / 64.0;
            g.require(support_function(image, theta) <= support_function(e, theta) + 1e-8,
                      "support dominance fails at trial " + std::to_string(trial));
        }

        const DiamEstimate sd = sdiam_estimate(phi, small);
        g.require(std::abs(sd.upper - 1.0) <= 1e-9,
                  "missing unital upper certificate at trial " + std::to_string(trial));
        g.require(sd.lower <= 1.0 + 2e-3,
                  "seminorm lower bound above 1 at trial " + std::to_string(trial));
    }
}

void criterion_section_expansiveness(Gate& g) {
    const SuperOp phi = named_example("final_phi", 2);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = testutil::random_hermitian(2, 700 + trial);
        const auto before = hermitian_eig(a).values;
        const auto after = hermitian_eig(re_part(phi.apply(a))).values;
        g.require(after.front() <= before.front() + 1e-9 &&
                      before.back() <= after.back() + 1e-9,
                  "eigenvalue sandwich fails at trial " + std::to_string(trial));
    }
}

void criterion_inequality_ledger(Gate& g) {
    Budget b;
    b.restarts = 8;
    b.iters = 120;
    b.grid = 128;
    b.coarse_grid = 32;
    const std::vector<const char*> families = {
        "diam<=2*op_norm", "sdiam<=op_norm",  "half_cb<=cbsdiam", "cbsdiam<=cb",
        "sa:cb<=cbsdiam",  "half_cb<=cbdiam", "cbdiam<=2*cb",     "sa:cb<=cbdiam",
        "sa:cbdiam<=cb",   "op_norm<=4*sdiam-2"};
    for (const std::string& id : named_example_ids()) {
        const SuperOp phi = named_example(id);
        const std::vector<DiamEstimate> ests = {
            map_norm(phi, b),
            sdiam_estimate(phi, b),
            diam_estimate(phi, b),
            cb_lower(phi, Quantity::cb, 2, b),
            cb_lower(phi, Quantity::cbdiam, 2, b),
            cb_lower(phi, Quantity::cbsdiam, 2, b),
        };
        LedgerContext ctx;
        if (id == "final_phi") ctx.section_of_unital_positive = true;
        for (const LedgerRow& row : inequality_ledger(phi, ests, ctx)) {
            g.require(row.status != "violated",
                      id + ": " + row.relation + " violated: " + row.detail);
            for (const char* fam : families)
                if (row.relation == fam)
                    g.require(row.status == "pass" || row.status == "skipped",
                              id + ": " + row.relation + " is " + row.status);
        }
    }
}

} // namespace

int main() {
    run_criterion(1, "rank-one products have numerical diameter one", 5.0, criterion_rank_one);
    run_criterion(2, "the cube-root diagonal saturates the covering bound", 1.0,
                  criterion_jung_saturation);
    run_criterion(3, "recentering a Hermitian matrix halves its diameter", 5.0,
                  criterion_hermitian_centering);
    run_criterion(4, "the gap map separates operator norm from diameter", 30.0,
                  criterion_norm_diameter_gap);
    run_criterion(5, "the corner map halves Hermitian diameters at two levels", 60.0,
                  criterion_corner_half);
    run_criterion(6, "transpose amplifies to its dimension via the swap witness", 30.0,
                  criterion_transpose_cb);
    run_criterion(7, "the trace-reversal maps are completely positive", 5.0,
                  criterion_choi_map_cp);
    run_criterion(8, "the sign-split shift makes every self-adjoint map CP", 60.0,
                  criterion_trace_translation);
    run_criterion(9, "section translation round-trips and rejects bad maps", 5.0,
                  criterion_section_translation);
    run_criterion(10, "the final channel/section pair hits 4 and 6.5", 60.0,
                  criterion_final_chain);
    run_criterion(11, "amplification grows id-plus-trace from 1 to 3", 10.0,
                  criterion_amplified_growth);
    run_criterion(12, "unital channels never expand numerical ranges", 120.0,
                  criterion_ucp_contractivity);
    run_criterion(13, "the section stretches spectra outward", 10.0,
                  criterion_section_expansiveness);
    run_criterion(14, "the inequality ledger is clean on every named example", 120.0,
                  criterion_inequality_ledger);

    if (g_failures == 0) {
        std::printf("acceptance: 14/14 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d of 14 criteria FAILED\n", g_failures);
    return 1;
}
