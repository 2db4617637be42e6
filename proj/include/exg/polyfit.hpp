#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "exg/error.hpp"

namespace exg {

struct Point {
    double x;
    double y;
};

/// Least-squares polynomial of the given degree through `points`.
/// Coefficients are returned in ascending order (c0 + c1 x + ...).
/// Solved by Householder QR on the Vandermonde matrix, with x centred and
/// scaled to [-1, 1] for conditioning.
inline std::vector<double> minsquare(std::span<const Point> points, int degree) {
    if (degree < 0) throw parameter_error("minsquare: degree must be non-negative");
    const std::size_t rows = points.size();
    const auto cols = static_cast<std::size_t>(degree) + 1;
    if (rows < cols) throw data_error("minsquare: not enough points for the requested degree");
    double xmin = points[0].x, xmax = points[0].x;
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw data_error("minsquare: non-finite point");
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
    }
    const double shift = 0.5 * (xmin + xmax);
    const double scale = xmax > xmin ? 0.5 * (xmax - xmin) : 1.0;

    // Column-major design matrix in the scaled variable s = (x - shift)/scale.
    std::vector<double> a(rows * cols);
    std::vector<double> rhs(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double s = (points[i].x - shift) / scale;
        double v = 1.0;
        for (std::size_t j = 0; j < cols; ++j) {
            a[j * rows + i] = v;
            v *= s;
        }
        rhs[i] = points[i].y;
    }
    const auto at = [&](std::size_t i, std::size_t j) -> double& { return a[j * rows + i]; };

    double max_diag = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < rows; ++i) norm = std::hypot(norm, at(i, k));
        if (norm == 0.0) throw numerical_error("minsquare: design matrix is rank deficient");
        const double alpha = at(k, k) > 0.0 ? -norm : norm;
        std::vector<double> v(rows - k);
        for (std::size_t i = k; i < rows; ++i) v[i - k] = at(i, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double e : v) vnorm2 += e * e;
        for (std::size_t j = k; j < cols; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * at(i, j);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < rows; ++i) at(i, j) -= f * v[i - k];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * rhs[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < rows; ++i) rhs[i] -= f * v[i - k];
        max_diag = std::max(max_diag, std::abs(at(k, k)));
    }
    const double rank_tol = 1e3 * std::numeric_limits<double>::epsilon() * static_cast<double>(rows) * max_diag;
    std::vector<double> c(cols);
    for (std::size_t k = cols; k-- > 0;) {
        if (std::abs(at(k, k)) <= rank_tol) throw numerical_error("minsquare: design matrix is rank deficient");
        double sum = rhs[k];
        for (std::size_t j = k + 1; j < cols; ++j) sum -= at(k, j) * c[j];
        c[k] = sum / at(k, k);
    }

    // Expand sum c_k ((x - shift)/scale)^k back into powers of x.
    std::vector<double> out(cols, 0.0);
    std::vector<double> basis{1.0};  // coefficients of ((x - shift)/scale)^k
    for (std::size_t k = 0; k < cols; ++k) {
        for (std::size_t j = 0; j < basis.size(); ++j) out[j] += c[k] * basis[j];
        std::vector<double> next(basis.size() + 1, 0.0);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            next[j + 1] += basis[j] / scale;
            next[j] -= basis[j] * shift / scale;
        }
        basis = std::move(next);
    }
    return out;
}

}  // namespace exg
