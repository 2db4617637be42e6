#pragma once

// Density, log-density, tails and quantiles of the ex-Gaussian.
//
// With u = (x - mu)/sigma, v = sigma/tau and b = (v - u)/sqrt(2) the density
//
//   f(x) = 1/(2 tau) exp(v^2/2 - u v) erfc(b)
//
// is evaluated as 1/(2 tau) exp(-u^2/2) erfcx(b) when b >= 0 and in the
// direct form otherwise. Neither form can overflow: in the first the
// exponent is non-positive and erfcx(b) <= 1, in the second u > v so the
// exponent is negative and erfc(b) <= 2.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "exg/error.hpp"
#include "exg/params.hpp"
#include "exg/special.hpp"

namespace exg {

/// Which formula produced a density value.
enum class PdfBranch {
    scaled,    // exp(-u^2/2) * erfcx(b), b >= 0
    direct,    // exp(v^2/2 - u v) * erfc(b), b < 0
    gaussian,  // Gaussian with the same mean and sd, used when the above lose precision
};

struct PdfEvaluation {
    double value;
    PdfBranch branch;
};

/// Gaussian density with mean `mu` and standard deviation `sigma`.
inline double gaussian(double x, double mu, double sigma) {
    if (!(sigma > 0.0)) throw parameter_error("gaussian: sigma must be positive");
    return normal_pdf((x - mu) / sigma) / sigma;
}

namespace detail {

struct Kernel {
    double u;
    double v;
    double b;
    PdfBranch branch;
};

// Relative error estimate of the scaled/direct formulas above: the rounding
// error in b is about eps * max(|u|, |v|), amplified by d ln f / db. When it
// exceeds `gaussian_switch_error` and the distribution is already close to
// Gaussian, the Gaussian with the same mean and sd is used instead.
inline constexpr double gaussian_switch_error = 1e-12;
inline constexpr double gaussian_switch_lamb = 0.2;

inline Kernel kernel(double x, const ExGaussParams& p) {
    const double u = (x - p.mu()) / p.sigma();
    const double v = p.sigma() / p.tau();
    const double b = (v - u) * inv_sqrt2;
    Kernel k{u, v, b, b >= 0.0 ? PdfBranch::scaled : PdfBranch::direct};
    if (!std::isfinite(v) || !std::isfinite(b)) {
        k.branch = PdfBranch::gaussian;
        return k;
    }
    const double lamb = p.tau() / std::hypot(p.sigma(), p.tau());
    if (lamb < gaussian_switch_lamb) {
        const double r = 2.0 * inv_sqrt_pi / erfcx(b);
        const double err = std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(u), std::abs(v)) * std::abs(2.0 * b - r);
        if (err > gaussian_switch_error) k.branch = PdfBranch::gaussian;
    }
    return k;
}

inline double moment_gaussian_log_pdf(double x, const ExGaussParams& p) {
    const double s = std::hypot(p.sigma(), p.tau());
    const double z = (x - p.mu() - p.tau()) / s;
    return -0.5 * z * z - std::log(s) - 0.91893853320467274178;  // ln sqrt(2 pi)
}

}  // namespace detail

/// Density together with the branch that produced it.
inline PdfEvaluation exgauss_pdf_traced(double x, const ExGaussParams& p) {
    if (std::isnan(x)) return {x, PdfBranch::direct};
    if (std::isinf(x)) return {0.0, PdfBranch::direct};
    const auto k = detail::kernel(x, p);
    switch (k.branch) {
        case PdfBranch::scaled:
            return {std::exp(-0.5 * k.u * k.u) * erfcx(k.b) / (2.0 * p.tau()), k.branch};
        case PdfBranch::direct:
            return {std::exp(-k.v * (k.u - 0.5 * k.v)) * std::erfc(k.b) / (2.0 * p.tau()), k.branch};
        case PdfBranch::gaussian:
            return {std::exp(detail::moment_gaussian_log_pdf(x, p)), k.branch};
    }
    return {0.0, k.branch};
}

inline double exgauss_pdf(double x, const ExGaussParams& p) { return exgauss_pdf_traced(x, p).value; }

/// Natural log of the density; finite wherever (x - mu)^2 / sigma^2 is,
/// even when the density itself underflows.
inline double exgauss_log_pdf(double x, const ExGaussParams& p) {
    if (std::isnan(x)) return x;
    if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
    const auto k = detail::kernel(x, p);
    const double front = -std::log(2.0 * p.tau());
    switch (k.branch) {
        case PdfBranch::scaled:
            return front - 0.5 * k.u * k.u + std::log(erfcx(k.b));
        case PdfBranch::direct:
            return front - k.v * (k.u - 0.5 * k.v) + std::log(std::erfc(k.b));
        case PdfBranch::gaussian:
            return detail::moment_gaussian_log_pdf(x, p);
    }
    return front;
}

/// Log-density and its partial derivatives with respect to (mu, sigma, tau).
struct LogPdfGradient {
    double value;
    std::array<double, 3> gradient;
};

inline LogPdfGradient exgauss_log_pdf_gradient(double x, const ExGaussParams& p) {
    const double mu = p.mu();
    const double sigma = p.sigma();
    const double tau = p.tau();
    const auto k = detail::kernel(x, p);
    const double ex = erfcx(k.b);
    // d/db ln erfc(b) = -r
    const double r = 2.0 * detail::inv_sqrt_pi / ex;
    const double dx = x - mu;
    const double inv_tau = 1.0 / tau;
    const double db_dmu = detail::inv_sqrt2 / sigma;
    const double db_dsigma = detail::inv_sqrt2 * (inv_tau + dx / (sigma * sigma));
    const double db_dtau = -detail::inv_sqrt2 * sigma * inv_tau * inv_tau;
    LogPdfGradient out;
    switch (k.branch) {
        case PdfBranch::scaled:
            out.value = -std::log(2.0 * tau) - 0.5 * k.u * k.u + std::log(ex);
            break;
        case PdfBranch::direct:
            out.value = -std::log(2.0 * tau) - k.v * (k.u - 0.5 * k.v) + std::log(std::erfc(k.b));
            break;
        case PdfBranch::gaussian:
            out.value = detail::moment_gaussian_log_pdf(x, p);
            break;
    }
    out.gradient = {
        inv_tau - r * db_dmu,
        sigma * inv_tau * inv_tau - r * db_dsigma,
        -inv_tau + dx * inv_tau * inv_tau - sigma * sigma * inv_tau * inv_tau * inv_tau - r * db_dtau,
    };
    return out;
}

namespace detail {

// exp(v^2/2 - u v) * Phi(u - v), the exponential correction shared by both
// tails: F = Phi(u) - term, 1 - F = Phi(-u) + term.
inline double tail_term(double u, double v) {
    if (u <= v) return 0.5 * std::exp(-0.5 * u * u) * erfcx((v - u) * inv_sqrt2);
    return std::exp(-v * (u - 0.5 * v)) * normal_cdf(u - v);
}

inline double clamp_probability(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace detail

/// Left tail F(x) = P(X <= x).
inline double exgauss_cdf(double x, const ExGaussParams& p) {
    if (std::isnan(x)) return x;
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    if (x == std::numeric_limits<double>::infinity()) return 1.0;
    const double u = (x - p.mu()) / p.sigma();
    const double v = p.sigma() / p.tau();
    if (!std::isfinite(v)) return normal_cdf((x - p.mu() - p.tau()) / std::hypot(p.sigma(), p.tau()));
    return detail::clamp_probability(normal_cdf(u) - detail::tail_term(u, v));
}

/// Right tail 1 - F(x), without cancellation for large x.
inline double exgauss_sf(double x, const ExGaussParams& p) {
    if (std::isnan(x)) return x;
    if (x == -std::numeric_limits<double>::infinity()) return 1.0;
    if (x == std::numeric_limits<double>::infinity()) return 0.0;
    const double u = (x - p.mu()) / p.sigma();
    const double v = p.sigma() / p.tau();
    if (!std::isfinite(v)) return normal_sf((x - p.mu() - p.tau()) / std::hypot(p.sigma(), p.tau()));
    return detail::clamp_probability(normal_sf(u) + detail::tail_term(u, v));
}

/// Point z with right-tail area `alpha`: 1 - F(z) = alpha.
///
/// Bisection on [mu - 10 sigma, mu + 10 sigma + 60 tau] (widened if the
/// tail is thinner still), then safeguarded Newton steps. Converges to a few
/// ulps of z.
inline double zalp_exgauss(double alpha, const ExGaussParams& p) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw parameter_error("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    // Decreasing in z. The right tail is used for small alpha, the left one
    // for large alpha, so the residual never suffers cancellation.
    const auto residual = [&](double z) {
        return alpha < 0.5 ? exgauss_sf(z, p) - alpha : (1.0 - alpha) - exgauss_cdf(z, p);
    };
    double lo = p.mu() - 10.0 * p.sigma();
    double hi = p.mu() + 10.0 * p.sigma() + 60.0 * p.tau();
    for (int i = 0; residual(lo) < 0.0; ++i) {
        if (i == 64) throw numerical_error("zalp_exgauss: could not bracket the lower end");
        lo -= 10.0 * p.sigma() * (i + 1);
    }
    for (int i = 0; residual(hi) > 0.0; ++i) {
        if (i == 64) throw numerical_error("zalp_exgauss: could not bracket the upper end");
        hi += 60.0 * p.tau() * (i + 1);
    }
    const double scale = std::hypot(p.sigma(), p.tau());
    if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(scale)) {
        throw numerical_error("zalp_exgauss: quantile search range overflows for these parameters");
    }
    while (hi - lo > 1e-4 * scale) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) lo = mid; else hi = mid;
    }
    double z = 0.5 * (lo + hi);
    for (int i = 0; i < 50; ++i) {
        const double g = residual(z);
        if (g == 0.0) break;
        if (g > 0.0) lo = z; else hi = z;
        const double f = exgauss_pdf(z, p);
        double next = f > 0.0 ? z + g / f : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - z);
        z = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(z) + scale)) break;
    }
    return z;
}

/// Standardized density f_lambda(z): mean 0, sd 1, asymmetry `lamb` in (0, 1).
inline double exgauss_pdf_lamb(double z, double lamb) { return exgauss_pdf(z, standard_params(lamb)); }

/// Left tail of the standardized ex-Gaussian.
inline double exgauss_cdf_lamb(double z, double lamb) { return exgauss_cdf(z, standard_params(lamb)); }

/// Right-tail point of the standardized ex-Gaussian.
inline double zalp_exgauss_lamb(double alpha, double lamb) {
    return zalp_exgauss(alpha, standard_params(lamb));
}

}  // namespace exg
