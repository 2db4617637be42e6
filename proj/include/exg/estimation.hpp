#pragma once

// The three ex-Gaussian estimators: moment matching (stat), least squares
// against a histogram (minsqr) and maximum likelihood (maxlkhd).
//
// The iterative searches run in the sample's standardized coordinates
// z = (x - M)/S, where M and S are the sample mean and sd, and map the result
// back. This makes the search, its step sizes and its stopping rule
// independent of the data's units and location. The stopping rule is
//
//   |gradient| <= grad_tol * (1 + |objective|)
//
// with gradient and objective both taken in standardized coordinates.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exg/distribution.hpp"
#include "exg/error.hpp"
#include "exg/histogram.hpp"
#include "exg/params.hpp"
#include "exg/sample.hpp"
#include "exg/stats.hpp"

namespace exg {

namespace detail {

// Neumaier compensated summation. Near an optimum the objective changes by
// less than the rounding noise of a naive sum over thousands of terms.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace detail

enum class Method { stat, minsqr, maxlkhd };

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::stat: return "stat";
        case Method::minsqr: return "minsqr";
        case Method::maxlkhd: return "maxlkhd";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
    if (name == "stat") return Method::stat;
    if (name == "minsqr") return Method::minsqr;
    if (name == "maxlkhd") return Method::maxlkhd;
    return std::nullopt;
}

struct SearchConfig {
    double grad_tol = 1e-8;
    int max_iter = 100000;
    // Skewness used for the starting point when the sample's t >= 2 ...
    double init_t_clamp = 1.9;
    // ... and when t <= 0.
    double init_t_floor = 0.1;

    void validate() const {
        if (!(grad_tol > 0.0)) throw parameter_error("grad_tol must be positive");
        if (max_iter < 1) throw parameter_error("max_iter must be at least 1");
        if (!(init_t_clamp > 0.0 && init_t_clamp < 2.0)) throw parameter_error("init_t_clamp must lie in (0, 2)");
        if (!(init_t_floor > 0.0 && init_t_floor < 2.0)) throw parameter_error("init_t_floor must lie in (0, 2)");
    }
};

enum class Termination {
    none,                // no search (stat)
    converged,           // stopping rule met
    max_iterations,      // iteration budget exhausted
    line_search_failed,  // no ascent step found, e.g. the optimum sits on the domain boundary
};

inline std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::none: return "none";
        case Termination::converged: return "converged";
        case Termination::max_iterations: return "max_iterations";
        case Termination::line_search_failed: return "line_search_failed";
    }
    return "?";
}

struct FitResult {
    FitResult(const ExGaussParams& p, Method m) : params(p), method(m) {}

    ExGaussParams params;
    Method method;
    // ln L for maxlkhd, sum of squared density residuals for minsqr.
    std::optional<double> objective;
    int iterations = 0;
    // Standardized-coordinate gradient norm at the returned point.
    double gradient_norm = 0.0;
    bool converged = true;
    Termination termination = Termination::none;
    std::optional<std::size_t> n_bins;

    ExGaussStats stats() const { return pars_to_stats(params); }
};

/// Log-likelihood of a sample and its gradient in (mu, sigma, tau).
struct LikelihoodEvaluation {
    double value;
    std::array<double, 3> gradient;
    // Observations whose density underflows in linear space. They still
    // contribute their exact log-density to `value`.
    std::vector<double> extreme_points;
};

inline LikelihoodEvaluation exg_lnlkhd(Sample s, const ExGaussParams& p) {
    require_size(s, 1, "exg_lnlkhd");
    require_finite(s, "exg_lnlkhd");
    const double underflow = std::log(std::numeric_limits<double>::min());
    detail::CompensatedSum value;
    std::array<detail::CompensatedSum, 3> grad;
    std::vector<double> extreme;
    for (double x : s) {
        const auto lg = exgauss_log_pdf_gradient(x, p);
        value.add(lg.value);
        for (int k = 0; k < 3; ++k) grad[k].add(lg.gradient[k]);
        if (lg.value < underflow) extreme.push_back(x);
    }
    return {value.value(), {grad[0].value(), grad[1].value(), grad[2].value()}, std::move(extreme)};
}

/// Sum of squared residuals between histogram densities and the density at
/// bin centres, with its gradient in (mu, sigma, tau).
struct SquaresEvaluation {
    double value;
    std::array<double, 3> gradient;
};

inline SquaresEvaluation exg_sqr(const Histogram& h, const ExGaussParams& p) {
    detail::CompensatedSum value;
    std::array<detail::CompensatedSum, 3> grad;
    for (std::size_t i = 0; i < h.n_bins(); ++i) {
        const auto lg = exgauss_log_pdf_gradient(h.center(i), p);
        const double f = std::exp(lg.value);
        const double r = h.densities()[i] - f;
        value.add(r * r);
        for (int k = 0; k < 3; ++k) grad[k].add(-2.0 * r * f * lg.gradient[k]);
    }
    return {value.value(), {grad[0].value(), grad[1].value(), grad[2].value()}};
}

/// Moment matching: the ex-Gaussian with the sample's M, S and t.
inline FitResult fit_stat(Sample s) {
    require_size(s, 3, "fit_stat");
    return FitResult(stats_to_pars(stats(s)), Method::stat);
}

namespace detail {

using Theta = std::array<double, 3>;

struct Evaluation {
    double value;
    Theta gradient;
};

inline double norm(const Theta& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

struct SearchOutcome {
    Theta theta;
    Evaluation eval;
    int iterations;
    Termination termination;
};

// Steepest ascent with Armijo backtracking (contraction 0.5, slope factor
// 1e-4). The trial step is the Barzilai-Borwein length from the previous
// accepted step; the direction is always the gradient. Points with
// sigma <= 0 or tau <= 0, and non-finite objective values, are rejected
// like any other failed Armijo test.
template <typename Objective>
SearchOutcome steepest_ascent(Objective&& objective, Theta theta, const SearchConfig& cfg) {
    const auto valid = [](const Theta& t) { return t[1] > 0.0 && t[2] > 0.0; };
    if (!valid(theta)) throw numerical_error("steepest ascent: invalid starting point");
    std::optional<Evaluation> current = objective(theta);
    if (!current || !std::isfinite(current->value)) {
        throw numerical_error("steepest ascent: objective is not finite at the starting point");
    }
    constexpr double armijo = 1e-4;
    constexpr int max_backtracks = 80;
    double step = 0.1 / std::max(norm(current->gradient), 1e-300);
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const Theta& g = current->gradient;
        const double gnorm = norm(g);
        if (gnorm <= cfg.grad_tol * (1.0 + std::abs(current->value))) {
            return {theta, *current, iter, Termination::converged};
        }
        double t = step;
        std::optional<Evaluation> next;
        Theta candidate{};
        for (int bt = 0; bt < max_backtracks; ++bt, t *= 0.5) {
            for (int k = 0; k < 3; ++k) candidate[k] = theta[k] + t * g[k];
            if (candidate == theta) break;
            if (!valid(candidate)) continue;
            auto e = objective(candidate);
            if (e && std::isfinite(e->value) && e->value >= current->value + armijo * t * gnorm * gnorm) {
                next = std::move(e);
                break;
            }
        }
        if (!next) return {theta, *current, iter, Termination::line_search_failed};
        Theta sdiff{}, ydiff{};
        for (int k = 0; k < 3; ++k) {
            sdiff[k] = candidate[k] - theta[k];
            ydiff[k] = next->gradient[k] - g[k];
        }
        const double sy = sdiff[0] * ydiff[0] + sdiff[1] * ydiff[1] + sdiff[2] * ydiff[2];
        const double ss = sdiff[0] * sdiff[0] + sdiff[1] * sdiff[1] + sdiff[2] * sdiff[2];
        step = sy < 0.0 ? ss / -sy : 2.0 * t;
        theta = candidate;
        current = std::move(next);
    }
    const Theta& g = current->gradient;
    const bool ok = norm(g) <= cfg.grad_tol * (1.0 + std::abs(current->value));
    return {theta, *current, cfg.max_iter, ok ? Termination::converged : Termination::max_iterations};
}

struct Standardization {
    double m;
    double s;
};

inline Standardization standardization(Sample s) {
    const auto st = stats(s);
    return {st.m(), st.s()};
}

// Standardized starting point: given parameters mapped into z units, or
// the moment-matching point with t clamped into the ex-Gaussian range.
inline Theta initial_theta(Sample s, const Standardization& z, const std::optional<ExGaussParams>& init,
                           const SearchConfig& cfg) {
    if (init) return {(init->mu() - z.m) / z.s, init->sigma() / z.s, init->tau() / z.s};
    double t = stats(s).t();
    if (t >= 2.0) t = cfg.init_t_clamp;
    if (t <= 0.0) t = cfg.init_t_floor;
    const auto p = stats_to_pars(ExGaussStats(0.0, 1.0, t));
    return {p.mu(), p.sigma(), p.tau()};
}

inline ExGaussParams to_params(const Theta& theta, const Standardization& z) {
    return ExGaussParams(z.m + z.s * theta[0], z.s * theta[1], z.s * theta[2]);
}

inline FitResult finish(const SearchOutcome& out, const Standardization& z, Method method, double objective) {
    FitResult r(to_params(out.theta, z), method);
    r.objective = objective;
    r.iterations = out.iterations;
    r.gradient_norm = norm(out.eval.gradient);
    r.termination = out.termination;
    r.converged = out.termination == Termination::converged;
    return r;
}

}  // namespace detail

/// Maximum likelihood by steepest ascent on ln L.
inline FitResult max_lkhd(Sample s, std::optional<ExGaussParams> init = std::nullopt,
                          const SearchConfig& cfg = {}) {
    require_size(s, 3, "max_lkhd");
    require_finite(s, "max_lkhd");
    cfg.validate();
    const auto z = detail::standardization(s);
    std::vector<double> zs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) zs[i] = (s[i] - z.m) / z.s;

    const auto objective = [&zs](const detail::Theta& th) -> std::optional<detail::Evaluation> {
        const ExGaussParams p(th[0], th[1], th[2]);
        detail::CompensatedSum value;
        std::array<detail::CompensatedSum, 3> grad;
        for (double x : zs) {
            const auto lg = exgauss_log_pdf_gradient(x, p);
            value.add(lg.value);
            for (int k = 0; k < 3; ++k) grad[k].add(lg.gradient[k]);
        }
        return detail::Evaluation{value.value(), {grad[0].value(), grad[1].value(), grad[2].value()}};
    };
    const auto out = detail::steepest_ascent(objective, detail::initial_theta(s, z, init, cfg), cfg);
    // ln L in data units differs from the standardized one by N ln S.
    const double lnl = out.eval.value - static_cast<double>(s.size()) * std::log(z.s);
    return detail::finish(out, z, Method::maxlkhd, lnl);
}

/// Least squares between histogram densities and the fitted density at bin
/// centres, by steepest descent.
inline FitResult min_sqr(Sample s, std::optional<std::size_t> n_bins = std::nullopt,
                         std::optional<ExGaussParams> init = std::nullopt, const SearchConfig& cfg = {}) {
    require_size(s, 3, "min_sqr");
    require_finite(s, "min_sqr");
    cfg.validate();
    const auto z = detail::standardization(s);
    const auto h = histogram(s, n_bins);
    std::vector<double> centers(h.n_bins());
    std::vector<double> dens(h.n_bins());
    for (std::size_t i = 0; i < h.n_bins(); ++i) {
        centers[i] = (h.center(i) - z.m) / z.s;
        dens[i] = h.densities()[i] * z.s;
    }
    // Ascent on the negated sum of squares.
    const auto objective = [&](const detail::Theta& th) -> std::optional<detail::Evaluation> {
        const ExGaussParams p(th[0], th[1], th[2]);
        detail::CompensatedSum value;
        std::array<detail::CompensatedSum, 3> grad;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const auto lg = exgauss_log_pdf_gradient(centers[i], p);
            const double f = std::exp(lg.value);
            const double r = dens[i] - f;
            value.add(-r * r);
            for (int k = 0; k < 3; ++k) grad[k].add(2.0 * r * f * lg.gradient[k]);
        }
        return detail::Evaluation{value.value(), {grad[0].value(), grad[1].value(), grad[2].value()}};
    };
    const auto out = detail::steepest_ascent(objective, detail::initial_theta(s, z, init, cfg), cfg);
    // Densities scale by 1/S, so the raw sum of squares is the standardized one over S^2.
    auto r = detail::finish(out, z, Method::minsqr, -out.eval.value / (z.s * z.s));
    r.n_bins = h.n_bins();
    return r;
}

/// Dispatch on the method.
inline FitResult fit(Sample s, Method method, const SearchConfig& cfg = {},
                     std::optional<std::size_t> n_bins = std::nullopt) {
    switch (method) {
        case Method::stat: return fit_stat(s);
        case Method::minsqr: return min_sqr(s, n_bins, std::nullopt, cfg);
        case Method::maxlkhd: return max_lkhd(s, std::nullopt, cfg);
    }
    throw parameter_error("unknown method");
}

}  // namespace exg
