#pragma once

#include <limits>
#include <span>
#include <vector>

#include "exg/error.hpp"
#include "exg/sample.hpp"
#include "exg/special.hpp"

namespace exg {

struct AnovaResult {
    double f;
    int df_between;
    int df_within;
    double p;
};

/// One-way fixed-effects ANOVA. The p-value is the right tail of the
/// F(df_between, df_within) distribution.
inline AnovaResult anova(std::span<const Sample> groups) {
    if (groups.size() < 2) throw data_error("anova: need at least two groups");
    double total = 0.0;
    std::size_t n = 0;
    for (const auto& g : groups) {
        require_size(g, 2, "anova");
        require_finite(g, "anova");
        for (double x : g) total += x;
        n += g.size();
    }
    const double grand = total / static_cast<double>(n);
    double ss_between = 0.0;
    double ss_within = 0.0;
    for (const auto& g : groups) {
        double mean = 0.0;
        for (double x : g) mean += x;
        mean /= static_cast<double>(g.size());
        ss_between += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
        for (double x : g) ss_within += (x - mean) * (x - mean);
    }
    const int df_b = static_cast<int>(groups.size()) - 1;
    const int df_w = static_cast<int>(n - groups.size());
    if (ss_between == 0.0) return {0.0, df_b, df_w, 1.0};
    if (ss_within == 0.0) return {std::numeric_limits<double>::infinity(), df_b, df_w, 0.0};
    const double f = (ss_between / df_b) / (ss_within / df_w);
    return {f, df_b, df_w, f_distribution_sf(f, df_b, df_w)};
}

inline AnovaResult anova(const std::vector<std::vector<double>>& groups) {
    std::vector<Sample> views(groups.begin(), groups.end());
    return anova(std::span<const Sample>(views));
}

}  // namespace exg
