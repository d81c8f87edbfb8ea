// SPDX-License-Identifier: MIT

#include "opdiam/circle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace opdiam {

namespace {

// Relative slack for the "is this point covered" tests; keeps the incremental
// construction stable for cocircular inputs without inflating the result.
double cover_eps(const Circle& c) { return 1e-12 * (1.0 + c.radius + std::abs(c.center)); }

Circle from_two(cplx a, cplx b) {
    Circle c;
    c.center = 0.5 * (a + b);
    c.radius = 0.5 * std::abs(a - b);
    return c;
}

// Circumcircle through three points; falls back to the widest two-point
// circle when the points are (nearly) collinear, which then gets repaired by
// the enclosing checks of the caller.
Circle from_three(cplx a, cplx b, cplx c) {
    const double ax = a.real(), ay = a.imag();
    const double bx = b.real(), by = b.imag();
    const double cx = c.real(), cy = c.imag();
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));

    const double scale = std::max({std::abs(a - b), std::abs(b - c), std::abs(c - a), 1e-300});
    if (std::abs(d) <= 1e-14 * scale * scale) {
        Circle ab = from_two(a, b);
        Circle bc = from_two(b, c);
        Circle ca = from_two(c, a);
        Circle best = ab;
        if (bc.radius > best.radius) best = bc;
        if (ca.radius > best.radius) best = ca;
        return best;
    }

    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;

    Circle out;
    out.center = cplx(ux, uy);
    out.radius = std::max({std::abs(out.center - a), std::abs(out.center - b),
                           std::abs(out.center - c)});
    return out;
}

} // namespace

bool Circle::contains(cplx p, double slack) const { return std::abs(p - center) <= radius + slack; }

Circle min_enclosing_circle(const std::vector<cplx>& points) {
    if (points.empty()) throw EmptyInput("min_enclosing_circle: no points");

    std::vector<cplx> pts = points;
    // Fixed-seed shuffle: expected linear running time, bit-stable results.
    std::mt19937 gen(0xD1A3u);
    for (std::size_t i = pts.size(); i > 1; --i) {
        std::size_t j = gen() % i;
        std::swap(pts[i - 1], pts[j]);
    }

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (c.contains(pts[i], cover_eps(c))) continue;
        c = Circle{pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (c.contains(pts[j], cover_eps(c))) continue;
            c = from_two(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (c.contains(pts[k], cover_eps(c))) continue;
                c = from_three(pts[i], pts[j], pts[k]);
            }
        }
    }
    return c;
}

} // namespace opdiam
