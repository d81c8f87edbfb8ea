// SPDX-License-Identifier: MIT

#include "opdiam/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace opdiam {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix rotated_re(const ComplexMatrix& e, double theta) {
    const cplx phase = std::polar(1.0, theta);
    ComplexMatrix out(e.rows(), e.cols());
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j)
            out(i, j) = 0.5 * (phase * e(i, j) + std::conj(phase * e(j, i)));
    return out;
}

// Scalar-multiple-of-identity test, scale-relative.
bool is_scalar_matrix(const ComplexMatrix& e) {
    const std::size_t n = e.rows();
    const cplx mean = e.trace() / double(n);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dev = std::max(dev, std::abs(e(i, j) - (i == j ? mean : cplx(0.0))));
    return dev <= kAtol * (1.0 + std::abs(mean));
}

ComplexMatrix eig_column(const EigenDecomposition& eig, std::size_t idx) {
    const std::size_t n = eig.vectors.rows();
    ComplexMatrix v(n, 1);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = eig.vectors(i, idx);
    return v;
}

// Golden-section maximization of f on [a, b]; returns the best abscissa seen.
// Deterministic, shrinks the bracket by the golden ratio each step.
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, double bracket_tol,
                                     int max_iters) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    double best_x = f1 >= f2 ? x1 : x2;
    double best_f = std::max(f1, f2);
    for (int it = 0; it < max_iters && (b - a) > bracket_tol; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
        if (f1 > best_f) {
            best_f = f1;
            best_x = x1;
        }
        if (f2 > best_f) {
            best_f = f2;
            best_x = x2;
        }
    }
    return {best_x, best_f};
}

void require_square(const ComplexMatrix& e, const char* who) {
    if (!e.is_square())
        throw NonSquare(std::string(who) + ": " + std::to_string(e.rows()) + "x" +
                        std::to_string(e.cols()));
}

} // namespace

double support_function(const ComplexMatrix& e, double theta) {
    require_square(e, "support_function");
    const EigenDecomposition eig = hermitian_eig(rotated_re(e, theta));
    return eig.values.back();
}

double width_function(const ComplexMatrix& e, double theta) {
    require_square(e, "width_function");
    const EigenDecomposition eig = hermitian_eig(rotated_re(e, theta));
    return eig.values.back() - eig.values.front();
}

RangeSample range_sample(const ComplexMatrix& e, std::size_t grid) {
    require_square(e, "range_sample");
    RangeSample out;
    out.thetas.reserve(grid);
    out.support.reserve(grid);
    out.boundary.reserve(grid);
    for (std::size_t j = 0; j < grid; ++j) {
        const double theta = 2.0 * kPi * double(j) / double(grid);
        const EigenDecomposition eig = hermitian_eig(rotated_re(e, theta));
        const ComplexMatrix v = eig_column(eig, eig.values.size() - 1);
        out.thetas.push_back(theta);
        out.support.push_back(eig.values.back());
        out.boundary.push_back(rayleigh(e, v));
    }
    return out;
}

DiameterResult numerical_diameter(const ComplexMatrix& e, std::size_t grid, int refine_iters) {
    require_square(e, "numerical_diameter");
    const std::size_t n = e.rows();
    grid = std::max<std::size_t>(grid, 8);

    DiameterResult out;
    if (is_scalar_matrix(e)) {
        // W(E) is a single point; the canonical degenerate witness pair.
        ComplexMatrix e1(n, 1);
        e1(0, 0) = 1.0;
        out.witness_v = e1;
        out.witness_w = e1;
        out.rayleigh_v = rayleigh(e, e1);
        out.rayleigh_w = out.rayleigh_v;
        return out;
    }

    double theta_star = 0.0;
    if (e.is_hermitian()) {
        // W(E) is the real segment [lambda_min, lambda_max]; theta = 0 is the
        // exact maximizer.
        theta_star = 0.0;
    } else {
        // Width has period pi; strict > keeps the lowest-theta argmax so the
        // sweep result matches sequential evaluation exactly.
        double best_w = -1.0;
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < grid; ++j) {
            const double theta = kPi * double(j) / double(grid);
            const double w = width_function(e, theta);
            if (w > best_w) {
                best_w = w;
                best_j = j;
            }
        }
        const double cell = kPi / double(grid);
        const double lo = kPi * double(best_j) / double(grid) - cell;
        const double hi = kPi * double(best_j) / double(grid) + cell;
        auto [bx, bf] = golden_max([&](double t) { return width_function(e, t); }, lo, hi,
                                   1e-10, refine_iters);
        theta_star = bf >= best_w ? bx : kPi * double(best_j) / double(grid);
    }

    const EigenDecomposition eig = hermitian_eig(rotated_re(e, theta_star));
    out.value = eig.values.back() - eig.values.front();
    out.theta_star = theta_star;
    out.witness_v = eig_column(eig, eig.values.size() - 1);
    out.witness_w = eig_column(eig, 0);
    out.rayleigh_v = rayleigh(e, out.witness_v);
    out.rayleigh_w = rayleigh(e, out.witness_w);
    return out;
}

double numerical_radius(const ComplexMatrix& e, std::size_t grid, int refine_iters) {
    require_square(e, "numerical_radius");
    grid = std::max<std::size_t>(grid, 8);

    if (e.is_hermitian()) {
        const EigenDecomposition eig = hermitian_eig(e);
        return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    }

    double best_h = -std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < grid; ++j) {
        const double theta = 2.0 * kPi * double(j) / double(grid);
        const double h = support_function(e, theta);
        if (h > best_h) {
            best_h = h;
            best_j = j;
        }
    }
    const double cell = 2.0 * kPi / double(grid);
    const double center = 2.0 * kPi * double(best_j) / double(grid);
    auto [bx, bf] = golden_max([&](double t) { return support_function(e, t); }, center - cell,
                               center + cell, 1e-10, refine_iters);
    (void)bx;
    return std::max(bf, best_h);
}

std::vector<cplx> normal_spectrum(const ComplexMatrix& e, double atol) {
    require_square(e, "normal_spectrum");
    const std::size_t n = e.rows();

    const double scale = operator_norm(e);
    const ComplexMatrix comm = e * e.dagger() - e.dagger() * e;
    if (comm.frobenius_norm() > atol * std::max(scale * scale, 1.0))
        throw NotNormal("normal_spectrum: ||EE* - E*E|| exceeds atol * ||E||^2");

    const ComplexMatrix h = re_part(e);
    const ComplexMatrix k = im_part(e);
    const EigenDecomposition eh = hermitian_eig(h);

    // Group (near-)equal eigenvalues of Re(E); the anti-Hermitian part
    // preserves each exact eigenspace, so diagonalizing its compression per
    // group diagonalizes both parts simultaneously.
    std::vector<cplx> spectrum;
    spectrum.reserve(n);
    const double group_tol = 1e-8 * (1.0 + std::max(std::abs(eh.values.front()),
                                                    std::abs(eh.values.back())));
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && eh.values[stop] - eh.values[stop - 1] <= group_tol) ++stop;
        const std::size_t g = stop - start;

        ComplexMatrix vg(n, g);
        for (std::size_t j = 0; j < g; ++j)
            for (std::size_t i = 0; i < n; ++i) vg(i, j) = eh.vectors(i, start + j);
        ComplexMatrix kg = vg.dagger() * (k * vg);
        // Mathematically Hermitian; symmetrize away the rounding before the
        // strict structural check inside hermitian_eig.
        const EigenDecomposition ek = hermitian_eig(re_part(kg), 1e-6 * (1.0 + kg.max_abs()));
        for (std::size_t j = 0; j < g; ++j) {
            double hval = 0.0;
            for (std::size_t i = 0; i < g; ++i)
                hval += eh.values[start + i] * std::norm(ek.vectors(i, j));
            spectrum.push_back(cplx(hval, ek.values[j]));
        }
        start = stop;
    }
    return spectrum;
}

double spectral_diameter(const ComplexMatrix& e, double atol) {
    require_square(e, "spectral_diameter");
    if (e.is_hermitian()) {
        const EigenDecomposition eig = hermitian_eig(e);
        return eig.values.back() - eig.values.front();
    }
    const std::vector<cplx> spec = normal_spectrum(e, atol);
    double d = 0.0;
    for (std::size_t a = 0; a < spec.size(); ++a)
        for (std::size_t b = a + 1; b < spec.size(); ++b)
            d = std::max(d, std::abs(spec[a] - spec[b]));
    return d;
}

CenteringConstants centering_constants(const ComplexMatrix& e) {
    require_square(e, "centering_constants");
    CenteringConstants out;

    const EigenDecomposition er = hermitian_eig(re_part(e));
    const EigenDecomposition ei = hermitian_eig(im_part(e));
    out.k_re = 0.5 * (er.values.front() + er.values.back());
    out.k_im = 0.5 * (ei.values.front() + ei.values.back());

    // Boundary Rayleigh points lie in W(E), so the smallest circle around a
    // dense sample approaches the Chebyshev center of the full range.
    const RangeSample sample = range_sample(e, 512);
    out.c_jung = min_enclosing_circle(sample.boundary).center;
    return out;
}

} // namespace opdiam
