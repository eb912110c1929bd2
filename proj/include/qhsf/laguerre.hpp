#pragma once

/**
 * @file laguerre.hpp
 * @brief Associated Laguerre polynomials L^{(a)}_n by upward three-term recurrence
 *        (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}.
 */

#include <string>
#include <vector>

#include "qhsf/errors.hpp"

namespace qhsf {

inline double laguerre(int n, double a, double x) {
    if (n < 0) throw InputError("laguerre: n must be >= 0 (got " + std::to_string(n) + ")");
    double pm = 0.0, p = 1.0;
    for (int k = 0; k < n; ++k) {
        const double pn = ((2.0 * k + 1.0 + a - x) * p - (k + a) * pm) / (k + 1.0);
        pm = p;
        p = pn;
    }
    return p;
}

/// L^{(1)}_n(w).
inline double laguerre1(int n, double w) { return laguerre(n, 1.0, w); }

/// L^{(1)}_0(w) .. L^{(1)}_{n_max}(w) in one recurrence sweep.
inline std::vector<double> laguerre1_all(int n_max, double w) {
    if (n_max < 0) throw InputError("laguerre1_all: n_max must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    double pm = 0.0, p = 1.0;
    out[0] = 1.0;
    for (int k = 0; k < n_max; ++k) {
        const double pn = ((2.0 * k + 2.0 - w) * p - (k + 1.0) * pm) / (k + 1.0);
        pm = p;
        p = pn;
        out[static_cast<std::size_t>(k) + 1] = p;
    }
    return out;
}

}  // namespace qhsf
