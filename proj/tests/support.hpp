#pragma once

// Shared helpers: seeded generators for property tests and relative
// comparisons.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "exg/params.hpp"

namespace exg::test {

inline double rel_diff(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Generators deliberately use the standard library engine, not the
// library's own RNG, so a fault there cannot hide a fault elsewhere.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    double normal() { return std::normal_distribution<double>()(eng_); }
    double exponential(double mean) { return std::exponential_distribution<double>(1.0 / mean)(eng_); }

    // Parameters with asymmetry lambda in [lamb_lo, lamb_hi], sd S in
    // [1e-2, 1e3] and mean anywhere in [-1e3, 1e3].
    ExGaussParams params(double lamb_lo = 0.05, double lamb_hi = 0.99) {
        const double lamb = uniform(lamb_lo, lamb_hi);
        const double s = log_uniform(1e-2, 1e3);
        const double m = uniform(-1e3, 1e3);
        const double tau = lamb * s;
        return {m - tau, s * std::sqrt((1.0 - lamb) * (1.0 + lamb)), tau};
    }

    std::vector<double> exgauss_sample(const ExGaussParams& p, std::size_t n) {
        std::vector<double> xs(n);
        for (auto& x : xs) x = p.mu() + p.sigma() * normal() + exponential(p.tau());
        return xs;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline std::string describe(const ExGaussParams& p) {
    return "(mu=" + std::to_string(p.mu()) + ", sigma=" + std::to_string(p.sigma()) +
           ", tau=" + std::to_string(p.tau()) + ")";
}

}  // namespace exg::test
