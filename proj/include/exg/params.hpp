#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "exg/error.hpp"

namespace exg {

/// The (mu, sigma, tau) triple of an ex-Gaussian: mean and standard
/// deviation of the Gaussian component and mean of the exponential
/// component. Always valid once constructed.
class ExGaussParams {
public:
    ExGaussParams(double mu, double sigma, double tau) : mu_(mu), sigma_(sigma), tau_(tau) {
        if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(tau)) {
            throw parameter_error("ex-Gaussian parameters must be finite");
        }
        if (!(sigma > 0.0)) throw parameter_error("sigma must be positive, got " + std::to_string(sigma));
        if (!(tau > 0.0)) throw parameter_error("tau must be positive, got " + std::to_string(tau));
    }

    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }
    double tau() const noexcept { return tau_; }

    friend bool operator==(const ExGaussParams&, const ExGaussParams&) = default;

private:
    double mu_;
    double sigma_;
    double tau_;
};

/// Mean, standard deviation and skewness of a distribution or sample.
/// `lamb` is the asymmetry cbrt(t/2); it is unset for negative skewness.
class ExGaussStats {
public:
    ExGaussStats(double m, double s, double t) : m_(m), s_(s), t_(t) {
        if (!std::isfinite(m) || !std::isfinite(s) || !std::isfinite(t)) {
            throw parameter_error("statistics must be finite");
        }
        if (!(s > 0.0)) throw parameter_error("standard deviation must be positive");
        if (t >= 0.0) lamb_ = std::cbrt(0.5 * t);
    }

    double m() const noexcept { return m_; }
    double s() const noexcept { return s_; }
    double t() const noexcept { return t_; }
    std::optional<double> lamb() const noexcept { return lamb_; }

    friend bool operator==(const ExGaussStats&, const ExGaussStats&) = default;

private:
    double m_;
    double s_;
    double t_;
    std::optional<double> lamb_;
};

/// M = mu + tau, S = sqrt(sigma^2 + tau^2), t = 2 (tau/S)^3.
inline ExGaussStats pars_to_stats(const ExGaussParams& p) {
    const double s = std::hypot(p.sigma(), p.tau());
    const double lamb = p.tau() / s;
    return ExGaussStats(p.mu() + p.tau(), s, 2.0 * lamb * lamb * lamb);
}

/// Inverse of pars_to_stats. Requires 0 < t < 2.
inline ExGaussParams stats_to_pars(const ExGaussStats& s) {
    if (!(s.t() > 0.0 && s.t() < 2.0)) throw skewness_out_of_range(s.t());
    const double lamb = s.lamb().value_or(1.0);
    if (!(lamb < 1.0)) throw skewness_out_of_range(s.t());
    // 1 - lamb^2 factored to keep precision as lamb -> 1.
    const double sigma = s.s() * std::sqrt((1.0 - lamb) * (1.0 + lamb));
    return ExGaussParams(s.m() - s.s() * lamb, sigma, s.s() * lamb);
}

/// Parameters of the standardized (M = 0, S = 1) ex-Gaussian with
/// asymmetry `lamb` in (0, 1).
inline ExGaussParams standard_params(double lamb) {
    if (!(lamb > 0.0 && lamb < 1.0)) {
        throw parameter_error("asymmetry lambda must lie in (0, 1), got " + std::to_string(lamb));
    }
    return ExGaussParams(-lamb, std::sqrt((1.0 - lamb) * (1.0 + lamb)), lamb);
}

}  // namespace exg
