#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace wlog {

/// Deterministic RNG: mt19937_64 plus hand-rolled distributions, so results
/// do not depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (one value per call, two draws).
    double normal() {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform direction on the unit sphere in dimension n.
    std::vector<double> unit_vector(std::size_t n) {
        std::vector<double> v(n);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& x : v) {
                x = normal();
                norm2 += x * x;
            }
        } while (norm2 == 0.0);
        double inv = 1.0 / std::sqrt(norm2);
        for (double& x : v) x *= inv;
        return v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace wlog
