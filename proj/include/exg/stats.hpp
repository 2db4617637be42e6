#pragma once

// Sample moments and linear correlation.
//
// Moments are population moments (divide by N): the moment-matching
// estimator treats M, S and t as statistics of the distribution itself.

#include <cmath>

#include "exg/error.hpp"
#include "exg/params.hpp"
#include "exg/sample.hpp"

namespace exg {

/// Mean, population standard deviation and skewness of a sample.
inline ExGaussStats stats(Sample s) {
    require_size(s, 2, "stats");
    require_finite(s, "stats");
    const double n = static_cast<double>(s.size());
    double mean = 0.0;
    for (double x : s) mean += x;
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (double x : s) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (!(m2 > 0.0)) throw data_error("stats: sample has zero spread");
    const double sd = std::sqrt(m2);
    return ExGaussStats(mean, sd, m3 / (m2 * sd));
}

/// Pearson correlation coefficient.
inline double correlation(Sample xs, Sample ys) {
    if (xs.size() != ys.size()) throw data_error("correlation: samples differ in length");
    require_size(xs, 2, "correlation");
    require_finite(xs, "correlation");
    require_finite(ys, "correlation");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw data_error("correlation: a sample has zero variance");
    const double r = sxy / std::sqrt(sxx * syy);
    return std::max(-1.0, std::min(1.0, r));
}

}  // namespace exg
