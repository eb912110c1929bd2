#pragma once

/**
 * @file littlewood_paley.hpp
 * @brief Smooth dyadic partition of unity ψ(x) = χ(x) − χ(2x) on (0,∞), where χ = 1 on (0,1],
 *        χ = 0 on [2,∞) is built from the e^{-1/y} mollifier. Σ_j ψ(2^{-j}x) telescopes to
 *        χ(2^{-j_max}x) − χ(2^{1-j_min}x), which is exactly 1 on [2^{j_min}, 2^{j_max}].
 */

#include <cmath>
#include <string>

#include "qhsf/errors.hpp"

namespace qhsf {

inline double lp_mollifier(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

/// Smooth cutoff: 1 on (-∞,1], 0 on [2,∞).
inline double lp_cutoff(double x) {
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    const double a = lp_mollifier(2.0 - x), b = lp_mollifier(x - 1.0);
    return a / (a + b);
}

struct LPPartition {
    int j_min = -12;
    int j_max = 12;

    /// ψ(x), supported in (1/2, 2).
    [[nodiscard]] double psi(double x) const {
        if (x <= 0.5 || x >= 2.0) return 0.0;
        return lp_cutoff(x) - lp_cutoff(2.0 * x);
    }
    /// ψ(2^{-j} x).
    [[nodiscard]] double window(int j, double x) const { return psi(std::ldexp(x, -j)); }

    [[nodiscard]] double partial_sum(double x) const {
        double s = 0.0;
        for (int j = j_min; j <= j_max; ++j) s += window(j, x);
        return s;
    }
    /// Interval on which the partial sum is identically 1.
    [[nodiscard]] double covered_lo() const { return std::ldexp(1.0, j_min); }
    [[nodiscard]] double covered_hi() const { return std::ldexp(1.0, j_max); }
};

inline LPPartition lp_build(int j_min, int j_max) {
    if (j_min > j_max)
        throw InputError("lp_build: need j_min <= j_max (got " + std::to_string(j_min) + " > " + std::to_string(j_max) + ")");
    return {j_min, j_max};
}

}  // namespace qhsf
