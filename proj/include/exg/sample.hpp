#pragma once

#include <cmath>
#include <span>
#include <string>

#include "exg/error.hpp"

namespace exg {

/// Read-only view of observations, in data units.
using Sample = std::span<const double>;

inline void require_finite(Sample s, const char* what) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i])) {
            throw data_error(std::string(what) + ": value #" + std::to_string(i + 1) + " is not finite");
        }
    }
}

inline void require_size(Sample s, std::size_t n, const char* what) {
    if (s.size() < n) {
        throw data_error(std::string(what) + ": need at least " + std::to_string(n) + " observations, got " +
                         std::to_string(s.size()));
    }
}

}  // namespace exg
