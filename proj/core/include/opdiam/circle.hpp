// SPDX-License-Identifier: MIT
// Smallest enclosing circle of a finite point set in the complex plane.
// Move-to-front Welzl with a fixed shuffle: exact, deterministic, expected
// linear time, comfortable up to 1e5 points.

#pragma once

#include <vector>

#include "opdiam/matrix.hpp"

namespace opdiam {

struct Circle {
    cplx center{0.0, 0.0};
    double radius = 0.0;

    bool contains(cplx p, double slack = 0.0) const;
};

// Throws EmptyInput on an empty list.
Circle min_enclosing_circle(const std::vector<cplx>& points);

} // namespace opdiam
