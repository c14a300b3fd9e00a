#pragma once

#include "tisplit/errors.hpp"

#include <cmath>
#include <string>

namespace tisplit {

/// Nonnegative root e of e - 1/e = d, i.e. e = (d + sqrt(d^2 + 4)) / 2.
/// Always e >= 1, with e(0) = 1.
inline double spectral_shift(double d) {
    if (!std::isfinite(d) || d < 0.0) {
        throw PreconditionError("spectral_shift requires a finite d >= 0, got " + std::to_string(d));
    }
    return 0.5 * (d + std::hypot(d, 2.0));
}

/// Larger root e of e + 1/e = d, i.e. e = (d + sqrt(d^2 - 4)) / 2, real only for d >= 2.
inline double spectral_shift_sum(double d) {
    if (std::isnan(d) || !std::isfinite(d)) {
        throw PreconditionError("spectral_shift_sum requires a finite d");
    }
    if (d < 2.0) {
        throw InfeasibleError("e + 1/e = " + std::to_string(d) + " has no real solution (requires d >= 2)");
    }
    // (d - 2) is exact near the double root, which keeps the discriminant accurate.
    return 0.5 * (d + std::sqrt((d - 2.0) * (d + 2.0)));
}

}  // namespace tisplit
