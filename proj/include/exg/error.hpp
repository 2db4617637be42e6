#pragma once

#include <stdexcept>
#include <string>

namespace exg {

// Parameters outside their mathematical domain (sigma <= 0, alpha outside
// (0,1), ...).
class parameter_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The sample skewness cannot be produced by any ex-Gaussian: t must lie in
// the open interval (0, 2).
class skewness_out_of_range : public parameter_error {
public:
    explicit skewness_out_of_range(double t)
        : parameter_error("skewness t = " + std::to_string(t) +
                          " is outside the ex-Gaussian range (0, 2)"),
          t_(t) {}

    double skewness() const noexcept { return t_; }

private:
    double t_;
};

// Bad input data: empty or too-short samples, non-finite values, mismatched
// lengths.
class data_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not deliver a result (no sign change, rank
// deficient system, diverging search).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace exg
