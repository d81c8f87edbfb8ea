// SPDX-License-Identifier: MIT
// Seeded random number generation with explicit transforms. std::mt19937_64
// output is standardized but the std:: distributions are not, so Gaussian and
// uniform draws are implemented here to keep every seed bit-reproducible
// across standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "opdiam/matrix.hpp"

namespace opdiam {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53 bits of mantissa.
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (cached second value).
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Complex standard normal, E|z|^2 = 1.
    cplx cgauss() {
        const double re = gauss();
        const double im = gauss();
        return cplx(re, im) * std::sqrt(0.5);
    }

    ComplexMatrix ginibre(std::size_t rows, std::size_t cols) {
        ComplexMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = cgauss();
        return m;
    }

    // Deterministic stream splitting (SplitMix64 over the pair) so restart r
    // of a seeded search gets an independent, reproducible substream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t lane) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (lane + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace opdiam
