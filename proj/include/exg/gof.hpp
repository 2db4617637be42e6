#pragma once

// Goodness of fit: Kolmogorov-Smirnov statistic against a fitted
// ex-Gaussian, parametric-bootstrap p-values and model-based trimming.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "exg/distribution.hpp"
#include "exg/error.hpp"
#include "exg/estimation.hpp"
#include "exg/rng.hpp"
#include "exg/sample.hpp"

namespace exg {

/// Classical two-sided KS distance D = sup |F_N - F| between the empirical
/// CDF of `s` and the ex-Gaussian `p`.
inline double ks_distance(Sample s, const ExGaussParams& p) {
    require_size(s, 1, "ks_distance");
    require_finite(s, "ks_distance");
    std::vector<double> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = exgauss_cdf(sorted[i], p);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, std::abs(above), std::abs(below)});
    }
    return d;
}

/// Count-scaled KS statistic N * D.
inline double ks_stat(Sample s, const ExGaussParams& p) {
    return static_cast<double>(s.size()) * ks_distance(s, p);
}

enum class KsScale {
    count,      // N * D
    classical,  // D
};

struct BootstrapOptions {
    Method method = Method::maxlkhd;
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    SearchConfig search{};
    // Fixed bin count for minsqr; unset means the default rule for each sample.
    std::optional<std::size_t> n_bins;
    // Worker threads; 0 uses all hardware threads. Results do not depend on it.
    unsigned threads = 1;
    // Redraws allowed per replicate when its refit throws.
    int max_retries = 5;
    KsScale scale = KsScale::count;
};

struct GofReport {
    double ks;
    double p;
    std::size_t replicates;
    double ks_mean;
    // Population sd of the replicate statistics.
    double ks_sd;
    Method method;
    std::uint64_t seed;
    ExGaussParams fitted;
    std::vector<double> replicate_ks;
    // Replicates that had to be redrawn after a failed refit.
    std::size_t redraws = 0;
};

namespace detail {

inline double ks_scaled(Sample s, const ExGaussParams& p, KsScale scale) {
    return scale == KsScale::count ? ks_stat(s, p) : ks_distance(s, p);
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace detail

/// Parametric bootstrap p-value for the fit of `s` by `opt.method`.
///
/// The data are fitted and their KS statistic computed. Each replicate k
/// draws N values from the fitted distribution using the k-th stream split
/// from `opt.seed`, refits them by the same method and computes the KS
/// statistic against its own refit. p is the fraction of replicate
/// statistics >= the data statistic. Replicates are independent of each
/// other and of scheduling, so the report is identical for any thread count.
inline GofReport bootstrap_p(Sample s, const BootstrapOptions& opt) {
    if (opt.method == Method::stat) throw parameter_error("bootstrap_p: method must be minsqr or maxlkhd");
    if (opt.replicates < 1) throw parameter_error("bootstrap_p: need at least one replicate");
    if (opt.max_retries < 0) throw parameter_error("bootstrap_p: max_retries must be non-negative");
    const auto data_fit = fit(s, opt.method, opt.search, opt.n_bins);
    const double ks = detail::ks_scaled(s, data_fit.params, opt.scale);

    RngStream root(opt.seed);
    auto streams = root.split(opt.replicates);
    std::vector<double> stats(opt.replicates);
    std::vector<std::size_t> redraws(opt.replicates, 0);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        std::vector<double> draw(s.size());
        for (std::size_t k = next++; k < opt.replicates; k = next++) {
            auto& rng = streams[k];
            for (int attempt = 0;; ++attempt) {
                for (auto& x : draw) x = drand_exg(rng, data_fit.params);
                try {
                    const auto refit = fit(draw, opt.method, opt.search, opt.n_bins);
                    stats[k] = detail::ks_scaled(draw, refit.params, opt.scale);
                    break;
                } catch (const std::exception& e) {
                    if (attempt >= opt.max_retries) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::make_exception_ptr(numerical_error(
                                "bootstrap_p: replicate " + std::to_string(k) + " failed to refit after " +
                                std::to_string(attempt + 1) + " draws: " + e.what()));
                        }
                        next = opt.replicates;
                        return;
                    }
                    ++redraws[k];
                }
            }
        }
    };
    const unsigned n_threads =
        std::min<unsigned>(detail::resolve_threads(opt.threads), static_cast<unsigned>(opt.replicates));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    GofReport r{ks, 0.0, opt.replicates, 0.0, 0.0, opt.method, opt.seed, data_fit.params, std::move(stats)};
    std::size_t exceed = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < r.replicates; ++k) {
        if (r.replicate_ks[k] >= ks) ++exceed;
        sum += r.replicate_ks[k];
        r.redraws += redraws[k];
    }
    const double n = static_cast<double>(r.replicates);
    r.p = static_cast<double>(exceed) / n;
    r.ks_mean = sum / n;
    double ss = 0.0;
    for (double v : r.replicate_ks) ss += (v - r.ks_mean) * (v - r.ks_mean);
    r.ks_sd = std::sqrt(ss / n);
    return r;
}

struct TrimOptions {
    // Also remove the left tail; with false only the right cut applies.
    bool cut_left = true;
};

struct TrimReport {
    // -infinity when the left cut is disabled.
    double lo_cut;
    double hi_cut;
    std::size_t n_removed_left;
    std::size_t n_removed_right;
    std::size_t n_total;
    ExGaussParams pre_fit;
    // Surviving observations, in their original order.
    std::vector<double> trimmed;
};

/// Remove observations beyond the points where `pre_fit` leaves tails of
/// area `tail_frac`. Values equal to a cut are kept.
inline TrimReport trim_with(Sample s, double tail_frac, const ExGaussParams& pre_fit, TrimOptions opt = {}) {
    if (!(tail_frac > 0.0 && tail_frac < 0.5)) {
        throw parameter_error("trim: tail fraction must lie in (0, 0.5), got " + std::to_string(tail_frac));
    }
    require_finite(s, "trim");
    TrimReport r{opt.cut_left ? zalp_exgauss(1.0 - tail_frac, pre_fit) : -std::numeric_limits<double>::infinity(),
                 zalp_exgauss(tail_frac, pre_fit),
                 0,
                 0,
                 s.size(),
                 pre_fit,
                 {}};
    r.trimmed.reserve(s.size());
    for (double x : s) {
        if (x < r.lo_cut) {
            ++r.n_removed_left;
        } else if (x > r.hi_cut) {
            ++r.n_removed_right;
        } else {
            r.trimmed.push_back(x);
        }
    }
    return r;
}

/// Pre-fit by maximum likelihood, then trim both tails at `tail_frac`.
inline TrimReport trim(Sample s, double tail_frac, const SearchConfig& cfg = {}, TrimOptions opt = {}) {
    if (!(tail_frac > 0.0 && tail_frac < 0.5)) {
        throw parameter_error("trim: tail fraction must lie in (0, 0.5), got " + std::to_string(tail_frac));
    }
    const auto pre = max_lkhd(s, std::nullopt, cfg);
    return trim_with(s, tail_frac, pre.params, opt);
}

}  // namespace exg
