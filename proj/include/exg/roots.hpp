#pragma once

#include <cmath>
#include <utility>

#include "exg/error.hpp"

namespace exg {

/// Root of a continuous f on a sign-changing bracket [lo, hi].
///
/// Regula falsi with the Illinois modification; if two consecutive steps
/// fail to halve the bracket a bisection step is forced, so the bracket
/// shrinks at least geometrically. Stops once the bracket is narrower than
/// `tol` (absolute) or f vanishes exactly.
template <typename F>
double zero(F&& f, std::pair<double, double> bracket, double tol = 1e-12, int max_iter = 200) {
    auto [a, b] = bracket;
    if (!(tol > 0.0)) throw parameter_error("zero: tolerance must be positive");
    if (a > b) std::swap(a, b);
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0)) {
        throw numerical_error("zero: f does not change sign over the bracket");
    }
    int side = 0;
    int slow = 0;
    for (int it = 0; it < max_iter && b - a > tol; ++it) {
        const double width = b - a;
        double c = slow >= 2 ? 0.5 * (a + b) : (a * fb - b * fa) / (fb - fa);
        if (!(c > a && c < b)) c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if ((fc > 0.0) == (fb > 0.0)) {
            b = c;
            fb = fc;
            if (side == 1) fa *= 0.5;
            side = 1;
        } else {
            a = c;
            fa = fc;
            if (side == -1) fb *= 0.5;
            side = -1;
        }
        slow = (b - a) > 0.5 * width ? slow + 1 : 0;
    }
    return std::abs(fa) < std::abs(fb) ? a : b;
}

}  // namespace exg
