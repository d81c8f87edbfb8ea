// SPDX-License-Identifier: MIT
// Certified estimation of the induced norms and seminorms of a superoperator:
// the operator norm, the diameter seminorms over general and Hermitian
// arguments, and tensor-amplified lower bounds for their completely bounded
// versions. Every search result is an interval [lower, upper]: the lower
// bound is witnessed by a stored input whose ratio reproduces it, and the
// upper bound names the analytic certificate that justifies it. Searches are
// seeded and serial, so identical budgets give bit-identical results.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "opdiam/matrix.hpp"
#include "opdiam/superop.hpp"

namespace opdiam {

enum class Quantity { op_norm, diam, sdiam, cb, cbdiam, cbsdiam };
std::string quantity_name(Quantity q);

struct Budget {
    std::uint64_t seed = 7;
    std::size_t restarts = 32;
    std::size_t iters = 400;      // coordinate or ascent steps per restart
    std::size_t grid = 256;       // angle grid for the final witness evaluation
    std::size_t coarse_grid = 64; // angle grid inside the ascent loop
    std::size_t max_dim = 64;     // amplified dimension cap
    double tol = 1e-8;
};

struct DiamEstimate {
    Quantity quantity = Quantity::op_norm;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    // Set when a growth family certifies the seminorm is infinite (the map is
    // not paraunital); lower is +infinity and the witness is a family member
    // whose ratio already exceeds 1e3.
    bool unbounded = false;
    std::size_t level = 1;   // amplification level of the lower-bound witness
    std::string certificate; // names the rule behind `upper`
    ComplexMatrix witness;   // input attaining `lower` (empty when degenerate)
};

// One sound upper bound for the completely bounded operator norm, labeled by
// the argument that produced it: the Kraus sign-split sum (self-adjoint
// maps), the Choi factorization bound, or the value at the identity
// (completely positive maps, where it is exact). Valid at every
// amplification level.
struct NormCertificate {
    double value = std::numeric_limits<double>::infinity();
    std::string label = "none";
};
NormCertificate cb_upper_certificate(const SuperOp& phi);

// Operator norm sup ||Phi(A)||/||A||. Lower bound by seeded random-restart
// alternating ascent (the argument update is the polar factor of the pulled-
// back rank-one direction); upper bound from cb_upper_certificate.
DiamEstimate map_norm(const SuperOp& phi, const Budget& budget = {});

// Diameter seminorm over Hermitian arguments: sup diam(Phi(E))/diam(E).
// Coordinate ascent over the trace-zero Hermitian parameterization with
// per-step renormalization to diam(E) = 1. Maps whose Choi blocks are all
// scalar return exactly 0 without searching; non-paraunital maps return the
// distinguished unbounded result instead of crashing.
DiamEstimate sdiam_estimate(const SuperOp& phi, const Budget& budget = {});

// Diameter seminorm over all arguments, complex parameterization. For a
// self-adjoint map the two seminorms agree; this estimator then shares
// witnesses with sdiam_estimate in both directions and asserts the two
// results agree within 2e-3.
DiamEstimate diam_estimate(const SuperOp& phi, const Budget& budget = {});

// Lower bound for the completely bounded quantity (cb, cbdiam, or cbsdiam)
// at amplification level `level`: runs the level-1 estimator on every
// amplification up to `level`, consulting a known-witness library first
// (the swap matrix and the off-diagonal identity block matrix) and carrying
// each level's witness upward under a spectrum-preserving padding, so the
// result is monotone nondecreasing in the level. The upper bound is the
// level-independent certificate, labeled with the stabilization level.
DiamEstimate cb_lower(const SuperOp& phi, Quantity quantity, std::size_t level,
                      const Budget& budget = {});

struct LedgerRow {
    std::string relation;
    std::string detail;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string status; // "pass", "violated", "skipped", "inconclusive"
};

struct LedgerContext {
    // The analyzed map is known to be a section of a unital positive map;
    // enables the sdiam >= 1 family of checks.
    bool section_of_unital_positive = false;
    // Data for the submultiplicativity row: a certified lower bound for a
    // composition and upper bounds for its two factors.
    std::optional<double> compose_lower;
    std::optional<double> left_upper;
    std::optional<double> right_upper;
    // The unital completely positive bijection whose inverse is the analyzed
    // map; enables the separation soft check against sampled unitaries.
    std::optional<SuperOp> separation_psi;
    std::uint64_t seed = 7;
};

// Checks every applicable inequality between the certified estimates. Sound
// by construction: a claimed "X <= Y" is only reported violated when
// lower(X) > upper(Y), so a violation is a genuine bug, never search noise.
// Relations without the needed certificate are reported skipped; the
// separation check against sampled unitaries reports "inconclusive" when the
// one-sided estimates cannot settle it.
std::vector<LedgerRow> inequality_ledger(const SuperOp& phi,
                                         const std::vector<DiamEstimate>& estimates,
                                         const LedgerContext& ctx = {});

} // namespace opdiam
