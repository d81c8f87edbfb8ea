// SPDX-License-Identifier: MIT
// Dense-matrix primitives: the Jacobi eigensolver, SVD and polar factor,
// Gram-Schmidt, the enclosing circle, matrix JSON round-trips, and the
// seeded RNG. Fixed inputs with known decompositions come first; seeded
// property sweeps follow.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"

#include "opdiam/circle.hpp"
#include "opdiam/eig.hpp"
#include "opdiam/errors.hpp"
#include "opdiam/json_io.hpp"
#include "opdiam/matrix.hpp"
#include "opdiam/rng.hpp"

#include "helpers.hpp"

using namespace opdiam;
using testutil::diag;
using testutil::max_abs_diff;
using testutil::random_hermitian;
using testutil::unitarity_error;

namespace {

// Smallest circle by exhaustion over diametral pairs and circumscribed
// triples; O(n^4) but independent of the Welzl implementation under test.
Circle brute_force_circle(const std::vector<cplx>& pts) {
    auto covers = [&](const Circle& c) {
        for (const cplx& p : pts)
            if (!c.contains(p, 1e-9)) return false;
        return true;
    };
    Circle best;
    best.radius = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            Circle c;
            c.center = 0.5 * (pts[i] + pts[j]);
            c.radius = 0.5 * std::abs(pts[i] - pts[j]);
            if (c.radius < best.radius && covers(c)) best = c;
        }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                const cplx a = pts[i], b = pts[j], d = pts[k];
                const double det = 2.0 * (a.real() * (b.imag() - d.imag()) +
                                          b.real() * (d.imag() - a.imag()) +
                                          d.real() * (a.imag() - b.imag()));
                if (std::abs(det) < 1e-14) continue; // collinear
                const double na = std::norm(a), nb = std::norm(b), nd = std::norm(d);
                Circle c;
                c.center = cplx((na * (b.imag() - d.imag()) + nb * (d.imag() - a.imag()) +
                                 nd * (a.imag() - b.imag())) /
                                    det,
                                (na * (d.real() - b.real()) + nb * (a.real() - d.real()) +
                                 nd * (b.real() - a.real())) /
                                    det);
                c.radius = std::abs(a - c.center);
                if (c.radius < best.radius && covers(c)) best = c;
            }
    return best;
}

} // namespace

TEST_CASE("hermitian_eig reproduces a known diagonal spectrum in ascending order") {
    const auto dec = hermitian_eig(diag({3.0, -1.0, 2.0}));
    REQUIRE(dec.values.size() == 3);
    CHECK(dec.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(dec.values[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(dec.values[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig solves the real symmetric flip matrix exactly") {
    ComplexMatrix x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const auto dec = hermitian_eig(x);
    CHECK(dec.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(dec.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    // Eigenvector residual, not entries: the phase is not pinned.
    for (std::size_t j = 0; j < 2; ++j) {
        ComplexMatrix v(2, 1);
        v(0, 0) = dec.vectors(0, j);
        v(1, 0) = dec.vectors(1, j);
        const ComplexMatrix res = x * v - cplx(dec.values[j]) * v;
        CHECK(res.max_abs() <= 1e-12);
    }
}

TEST_CASE("hermitian_eig meets the residual and orthonormality contract on random inputs") {
    for (std::size_t n : {2, 5, 9, 16}) {
        const ComplexMatrix a = random_hermitian(n, 100 + n);
        const auto dec = hermitian_eig(a);
        REQUIRE(dec.values.size() == n);
        CHECK(std::is_sorted(dec.values.begin(), dec.values.end()));
        CHECK(unitarity_error(dec.vectors) <= 1e-10);
        const double scale = a.max_abs();
        for (std::size_t j = 0; j < n; ++j) {
            ComplexMatrix v(n, 1);
            for (std::size_t i = 0; i < n; ++i) v(i, 0) = dec.vectors(i, j);
            const ComplexMatrix res = a * v - cplx(dec.values[j]) * v;
            CHECK(res.max_abs() <= 1e-10 * (1.0 + scale));
        }
    }
}

TEST_CASE("hermitian_eig rejects non-square and non-Hermitian inputs") {
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), NonSquare);
    ComplexMatrix a(2, 2);
    a(0, 1) = 1.0; // missing the conjugate partner
    CHECK_THROWS_AS(hermitian_eig(a), NonHermitian);
}

TEST_CASE("operator_norm matches hand values and the leading singular value") {
    ComplexMatrix nilpotent(2, 2);
    nilpotent(0, 1) = 1.0;
    CHECK(operator_norm(nilpotent) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(diag({2.0, -3.0})) == doctest::Approx(3.0).epsilon(1e-12));

    Rng rng(42);
    const ComplexMatrix g = rng.ginibre(4, 6);
    const Svd dec = svd(g);
    CHECK(operator_norm(g) == doctest::Approx(dec.sigma[0]).epsilon(1e-10));
}

TEST_CASE("svd reconstructs tall and wide matrices with unitary factors") {
    Rng rng(7);
    for (auto [r, c] : {std::pair<std::size_t, std::size_t>{5, 3}, {3, 5}, {4, 4}}) {
        const ComplexMatrix a = rng.ginibre(r, c);
        const Svd dec = svd(a);
        REQUIRE(dec.sigma.size() == std::min(r, c));
        CHECK(std::is_sorted(dec.sigma.rbegin(), dec.sigma.rend()));
        CHECK(unitarity_error(dec.u) <= 1e-9);
        CHECK(unitarity_error(dec.v) <= 1e-9);
        ComplexMatrix rebuilt(r, c);
        for (std::size_t k = 0; k < dec.sigma.size(); ++k)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    rebuilt(i, j) += dec.sigma[k] * dec.u(i, k) * std::conj(dec.v(j, k));
        CHECK(max_abs_diff(rebuilt, a) <= 1e-9 * (1.0 + dec.sigma[0]));
    }
}

TEST_CASE("polar_unitary returns a genuine unitary with Hermitian PSD cofactor") {
    Rng rng(11);
    const ComplexMatrix a = rng.ginibre(4, 4);
    const ComplexMatrix u = polar_unitary(a);
    CHECK(unitarity_error(u) <= 1e-9);
    const ComplexMatrix p = u.dagger() * a; // should be the Hermitian factor
    CHECK(max_abs_diff(p, p.dagger()) <= 1e-9);
    const auto dec = hermitian_eig(re_part(p));
    CHECK(dec.values.front() >= -1e-9);
    CHECK(max_abs_diff(u * p, a) <= 1e-9 * (1.0 + a.max_abs()));
}

TEST_CASE("polar_unitary stays unitary when singular values sit at the noise floor") {
    // Regression: singular values near sqrt(eps) * sigma_0 used to produce
    // left vectors far from unit length, and the returned factor inherited
    // the defect. The spectrum below mirrors the observed failing case.
    Rng rng(13);
    const ComplexMatrix q1 = polar_unitary(rng.ginibre(4, 4));
    const ComplexMatrix q2 = polar_unitary(rng.ginibre(4, 4));
    const ComplexMatrix a = q1 * diag({0.625, 0.375, 9.1e-8, 3.4e-8}) * q2.dagger();
    const ComplexMatrix u = polar_unitary(a);
    CHECK(unitarity_error(u) <= 1e-8);

    // Exactly rank one: everything below the top singular value is zero.
    const ComplexMatrix v = testutil::random_unit_column(4, 19);
    const ComplexMatrix w = testutil::random_unit_column(4, 23);
    const ComplexMatrix u1 = polar_unitary(v * w.dagger());
    CHECK(unitarity_error(u1) <= 1e-9);
}

TEST_CASE("gram_schmidt_columns orthonormalizes and drops dependent columns") {
    Rng rng(31);
    const ComplexMatrix a = rng.ginibre(5, 3);
    std::vector<std::size_t> kept;
    const ComplexMatrix q = gram_schmidt_columns(a, 1e-10, &kept);
    CHECK(kept.size() == 3);
    CHECK(unitarity_error(q) <= 1e-10);

    // Duplicate a column: the copy must be dropped, not renormalized noise.
    ComplexMatrix dep(5, 4);
    for (std::size_t i = 0; i < 5; ++i) {
        dep(i, 0) = a(i, 0);
        dep(i, 1) = a(i, 1);
        dep(i, 2) = a(i, 0);
        dep(i, 3) = a(i, 2);
    }
    kept.clear();
    const ComplexMatrix q2 = gram_schmidt_columns(dep, 1e-10, &kept);
    REQUIRE(kept.size() == 3);
    CHECK(kept == std::vector<std::size_t>{0, 1, 3});
    CHECK(unitarity_error(q2) <= 1e-10);
}

TEST_CASE("inverse round-trips and rejects singular input") {
    Rng rng(37);
    const ComplexMatrix a = rng.ginibre(4, 4) + cplx(2.0) * ComplexMatrix::identity(4);
    const ComplexMatrix inv = inverse(a);
    CHECK(max_abs_diff(a * inv, ComplexMatrix::identity(4)) <= 1e-9);

    ComplexMatrix sing(2, 2);
    sing(0, 0) = 1.0;
    sing(0, 1) = 1.0;
    sing(1, 0) = 1.0;
    sing(1, 1) = 1.0;
    CHECK_THROWS_AS(inverse(sing), DimensionMismatch);
}

TEST_CASE("hermitian_extremal_eigs agrees with the full decomposition") {
    for (std::size_t n : {3, 8, 20}) {
        const ComplexMatrix a = random_hermitian(n, 900 + n);
        const auto dec = hermitian_eig(a);
        const auto ext = hermitian_extremal_eigs(a);
        const double scale = std::max(1.0, std::abs(dec.values.back()));
        CHECK(std::abs(ext.max - dec.values.back()) <= 1e-6 * scale);
        CHECK(std::abs(ext.min - dec.values.front()) <= 1e-6 * scale);
    }
}

TEST_CASE("min_enclosing_circle handles degenerate point sets") {
    CHECK_THROWS_AS(min_enclosing_circle(std::vector<cplx>{}), EmptyInput);

    const Circle single = min_enclosing_circle({cplx(2.0, -1.0)});
    CHECK(single.radius == doctest::Approx(0.0));
    CHECK(std::abs(single.center - cplx(2.0, -1.0)) <= 1e-12);

    const Circle pair = min_enclosing_circle({cplx(-1.0, 0.0), cplx(3.0, 0.0)});
    CHECK(pair.radius == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(pair.center - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("min_enclosing_circle finds the circumcircle of the cube-root triangle") {
    const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const Circle c = min_enclosing_circle({cplx(1.0, 0.0), omega, omega * omega});
    CHECK(c.radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(c.center) <= 1e-12);
}

TEST_CASE("min_enclosing_circle matches brute force on seeded point clouds") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        Rng rng(seed);
        std::vector<cplx> pts;
        for (int i = 0; i < 13; ++i) pts.push_back(rng.cgauss());
        const Circle fast = min_enclosing_circle(pts);
        const Circle slow = brute_force_circle(pts);
        CHECK(fast.radius == doctest::Approx(slow.radius).epsilon(1e-9));
        for (const cplx& p : pts) CHECK(fast.contains(p, 1e-9));
    }
}

TEST_CASE("matrix JSON round-trips complex entries bit for bit") {
    Rng rng(55);
    const ComplexMatrix a = rng.ginibre(3, 4);
    const ComplexMatrix back = matrix_from_json_text(matrix_to_json_text(a));
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 4);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            CHECK(a(i, j).real() == back(i, j).real());
            CHECK(a(i, j).imag() == back(i, j).imag());
        }
}

TEST_CASE("matrix JSON omits the imaginary block exactly when it is zero") {
    const std::string real_text = matrix_to_json_text(diag({1.0, -2.0}));
    CHECK(real_text.find("\"im\"") == std::string::npos);
    CHECK(matrix_from_json_text(real_text)(1, 1).real() == -2.0);

    ComplexMatrix c(1, 1);
    c(0, 0) = cplx(0.0, 1e-300); // tiny but nonzero imaginary part survives
    const std::string complex_text = matrix_to_json_text(c);
    CHECK(complex_text.find("\"im\"") != std::string::npos);
    CHECK(matrix_from_json_text(complex_text)(0, 0).imag() == 1e-300);
}

TEST_CASE("matrix JSON parse failures carry the context and the offending field") {
    try {
        matrix_from_json_text(R"({"rows": 2, "cols": 2})", "probe");
        FAIL("missing 're' accepted");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("probe") != std::string::npos);
        CHECK(msg.find("re") != std::string::npos);
    }
    CHECK_THROWS_AS(matrix_from_json_text(R"({"rows": 2, "cols": 2, "re": [[1, 0]]})"),
                    ParseError);
    CHECK_THROWS_AS(matrix_from_json_text("{not json"), ParseError);
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.json"), ParseError);
}

TEST_CASE("seeded rng streams are reproducible and lanes are independent") {
    Rng a(99), b(99);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng lane0(Rng::derive(99, 0)), lane1(Rng::derive(99, 1));
    bool differs = false;
    for (int i = 0; i < 8; ++i) differs |= lane0.next_u64() != lane1.next_u64();
    CHECK(differs);

    Rng u(3);
    for (int i = 0; i < 256; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}
