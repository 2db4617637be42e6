#pragma once

// Gauss-Legendre quadrature.

#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "exg/error.hpp"

namespace exg {

struct QuadPoint {
    double node;
    double weight;
};

/// n-point Gauss-Legendre rule mapped onto [a, b]. Nodes are the roots of
/// P_n found by Newton iteration; weights sum to b - a. Exact for
/// polynomials of degree up to 2n - 1.
inline std::vector<QuadPoint> int_points_gauss(double a, double b, int n) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw parameter_error("int_points_gauss: need a finite interval a < b");
    }
    if (n < 1) throw parameter_error("int_points_gauss: need at least one point");
    std::vector<QuadPoint> out(static_cast<std::size_t>(n));
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    // P_n(x) and P_n'(x) by the three-term recurrence.
    const auto legendre = [n](double x) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16) break;
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        out[lo] = {mid - half * x, half * w};
        out[hi] = {mid + half * x, half * w};
    }
    if (n % 2 == 1) out[static_cast<std::size_t>(n / 2)].node = mid;
    return out;
}

/// Sum of f_i * w_i over a quadrature partition.
inline double intsum(std::span<const double> f_values, std::span<const QuadPoint> partition) {
    if (f_values.size() != partition.size()) {
        throw data_error("intsum: function values and partition differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < partition.size(); ++i) sum += f_values[i] * partition[i].weight;
    return sum;
}

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <typename F>
double integral(F&& f, double a, double b, int n = 64) {
    const auto pts = int_points_gauss(a, b, n);
    double sum = 0.0;
    for (const auto& q : pts) sum += f(q.node) * q.weight;
    return sum;
}

}  // namespace exg
