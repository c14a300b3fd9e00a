#pragma once

#include "tisplit/errors.hpp"

#include <cmath>

namespace tisplit {

struct Tolerances {
    /// Singular values at or below rank_rel_tol * sigma_max count as zero.
    double rank_rel_tol = 1e-12;
    double residual_rel_tol = 1e-9;
    /// Minimum distance of an eigenvalue from the closed negative real axis
    /// before a principal square root is attempted (scaled by max(1, |S|_F)).
    double sqrt_axis_margin = 1e-10;

    void validate() const {
        auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
        if (!positive(rank_rel_tol) || !positive(residual_rel_tol) || !positive(sqrt_axis_margin)) {
            throw PreconditionError("tolerances must be finite and strictly positive");
        }
    }
};

}  // namespace tisplit
