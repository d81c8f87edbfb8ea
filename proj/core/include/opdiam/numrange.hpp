// SPDX-License-Identifier: MIT
// Numerical range geometry. The numerical range W(E) is the set of Rayleigh
// quotients <Ev,v>/<v,v>; its support function in direction theta is
// h(theta) = lambda_max(Re(e^{i theta} E)), the width in that direction is
// h(theta) + h(theta + pi), and the numerical diameter is the maximal width.
// All sweeps are grid + golden-section refinements of these eigenvalue maps.

#pragma once

#include <vector>

#include "opdiam/circle.hpp"
#include "opdiam/eig.hpp"
#include "opdiam/matrix.hpp"

namespace opdiam {

struct RangeSample {
    std::vector<double> thetas;  // ascending, in [0, 2pi)
    std::vector<double> support; // h(theta)
    std::vector<cplx> boundary;  // top-eigenvector Rayleigh quotients
};

struct DiameterResult {
    double value = 0.0;      // max width over refined theta
    double theta_star = 0.0; // direction achieving it
    ComplexMatrix witness_v; // unit column vectors whose Rayleigh quotients
    ComplexMatrix witness_w; // realize the diameter within tolerance
    cplx rayleigh_v{0.0, 0.0};
    cplx rayleigh_w{0.0, 0.0};
};

// lambda_max(Re(e^{i theta} E)). Throws NonSquare.
double support_function(const ComplexMatrix& e, double theta);

// Width in direction theta: h(theta) + h(theta + pi), a pi-periodic map.
double width_function(const ComplexMatrix& e, double theta);

// theta sweep of support values and boundary points over [0, 2pi).
RangeSample range_sample(const ComplexMatrix& e, std::size_t grid = 256);

// Max width over a theta grid on [0, pi) with golden-section refinement of
// the best cell until the bracket is below 1e-10 (or refine_iters is spent).
// Hermitian inputs short-circuit to theta = 0; scalar multiples of the
// identity return value 0 with witness pair (e_1, e_1).
DiameterResult numerical_diameter(const ComplexMatrix& e, std::size_t grid = 256,
                                  int refine_iters = 64);

// Max of h over [0, 2pi), same grid + refinement scheme.
double numerical_radius(const ComplexMatrix& e, std::size_t grid = 256, int refine_iters = 64);

// Eigenvalues of a normal matrix via simultaneous diagonalization of its
// Hermitian and anti-Hermitian parts. Throws NotNormal when
// ||EE* - E*E||_F > atol * ||E||^2, signalling that numerical_diameter is the
// right tool instead.
std::vector<cplx> normal_spectrum(const ComplexMatrix& e, double atol = kAtol);

// Max pairwise eigenvalue distance of a normal matrix; equals the numerical
// diameter for such inputs. Hermitian fast path uses lambda_max - lambda_min.
double spectral_diameter(const ComplexMatrix& e, double atol = kAtol);

struct CenteringConstants {
    double k_re = 0.0; // midpoint of the spectrum of Re(E)
    double k_im = 0.0; // midpoint of the spectrum of Im(E)
    cplx c_jung{0.0, 0.0}; // Chebyshev-style center from the sampled boundary
};

// k_re/k_im halve the respective spectral diameters; c_jung is the center of
// the smallest circle enclosing a dense boundary sample, so the recentered
// numerical radius satisfies the d/sqrt(3) covering bound up to sampling.
CenteringConstants centering_constants(const ComplexMatrix& e);

} // namespace opdiam
