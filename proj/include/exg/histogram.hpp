#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "exg/error.hpp"
#include "exg/params.hpp"
#include "exg/sample.hpp"

namespace exg {

/// Equal- or unequal-width binned sample. Densities are counts / (N width),
/// so the histogram integrates to one.
class Histogram {
public:
    Histogram(std::vector<double> edges, std::vector<std::int64_t> counts)
        : edges_(std::move(edges)), counts_(std::move(counts)) {
        if (edges_.size() < 2 || counts_.size() + 1 != edges_.size()) {
            throw data_error("histogram: need n_bins + 1 edges for n_bins counts");
        }
        for (std::size_t i = 1; i < edges_.size(); ++i) {
            if (!(edges_[i] > edges_[i - 1])) throw data_error("histogram: edges must be strictly increasing");
        }
        for (auto c : counts_) {
            if (c < 0) throw data_error("histogram: negative count");
            n_total_ += c;
        }
        if (n_total_ == 0) throw data_error("histogram: no observations");
        densities_.resize(counts_.size());
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            densities_[i] = static_cast<double>(counts_[i]) / (static_cast<double>(n_total_) * width(i));
        }
    }

    std::size_t n_bins() const noexcept { return counts_.size(); }
    std::int64_t n_total() const noexcept { return n_total_; }
    const std::vector<double>& edges() const noexcept { return edges_; }
    const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
    const std::vector<double>& densities() const noexcept { return densities_; }

    double width(std::size_t i) const { return edges_[i + 1] - edges_[i]; }
    double center(std::size_t i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }

    std::vector<double> centers() const {
        std::vector<double> out(n_bins());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = center(i);
        return out;
    }

private:
    std::vector<double> edges_;
    std::vector<std::int64_t> counts_;
    std::vector<double> densities_;
    std::int64_t n_total_ = 0;
};

/// Default bin count: 2 sqrt(N), rounded half to even.
inline std::size_t default_bins(std::size_t n) {
    const double b = std::nearbyint(2.0 * std::sqrt(static_cast<double>(n)));
    return std::max<std::size_t>(1, static_cast<std::size_t>(b));
}

/// Equal-width histogram spanning [min, max] of the sample. Bins are
/// half-open [lo, hi) except the last, which also holds the maximum. A
/// constant sample gets a single unit-width bin centred on its value.
inline Histogram histogram(Sample s, std::optional<std::size_t> n_bins = std::nullopt) {
    require_size(s, 1, "histogram");
    require_finite(s, "histogram");
    const std::size_t bins = n_bins.value_or(default_bins(s.size()));
    if (bins < 1) throw data_error("histogram: need at least one bin");
    const auto [min_it, max_it] = std::minmax_element(s.begin(), s.end());
    double lo = *min_it;
    double hi = *max_it;
    if (lo == hi) {
        return Histogram({lo - 0.5, lo + 0.5}, {static_cast<std::int64_t>(s.size())});
    }
    std::vector<double> edges(bins + 1);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) edges[i] = lo + w * static_cast<double>(i);
    edges[bins] = hi;
    std::vector<std::int64_t> counts(bins, 0);
    for (double x : s) {
        auto k = static_cast<std::size_t>(std::min(static_cast<double>(bins - 1), std::floor((x - lo) / w)));
        // The computed edges are authoritative; fix up rounding in the division.
        while (k + 1 < bins && x >= edges[k + 1]) ++k;
        while (k > 0 && x < edges[k]) --k;
        ++counts[k];
    }
    return Histogram(std::move(edges), std::move(counts));
}

/// Mean, standard deviation and skewness of a binned sample, taking every
/// observation to sit at its bin centre.
inline ExGaussStats stats_his(const Histogram& h) {
    const double n = static_cast<double>(h.n_total());
    double mean = 0.0;
    for (std::size_t i = 0; i < h.n_bins(); ++i) mean += static_cast<double>(h.counts()[i]) * h.center(i);
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (std::size_t i = 0; i < h.n_bins(); ++i) {
        const double d = h.center(i) - mean;
        const double c = static_cast<double>(h.counts()[i]);
        m2 += c * d * d;
        m3 += c * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (!(m2 > 0.0)) throw data_error("stats_his: histogram has zero spread");
    const double sd = std::sqrt(m2);
    return ExGaussStats(mean, sd, m3 / (m2 * sd));
}

}  // namespace exg
