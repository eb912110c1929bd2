#pragma once

// Closed-form references used by the unit tests.

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

/// L^a_n(x) = Σ_k (-1)^k C(n+a, n-k) x^k / k!, summed in 50 digits.
inline double laguerre_series(int n, int a, double x) {
    big s = 0, term_x = 1, fact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            term_x *= big(x);
            fact *= k;
        }
        const big c = boost::math::binomial_coefficient<big>(static_cast<unsigned>(n + a), static_cast<unsigned>(n - k));
        s += ((k % 2) ? -1 : 1) * c * term_x / fact;
    }
    return static_cast<double>(s);
}

/// Transform of e^{-aα-b|t|²} at (ρ, n): π^{7/2} b^{-3/2} e^{-ρ²/4b} ((a-ρ)/(a+ρ))^n / (a+ρ)².
inline double gaussian_transform(double a, double b, double rho, int n) {
    return std::pow(std::numbers::pi, 3.5) * std::pow(b, -1.5) * std::exp(-rho * rho / (4.0 * b)) *
           std::pow((a - rho) / (a + rho), n) / ((a + rho) * (a + rho));
}

/// ∫ e^{-|u|²-|t|²} du dt over H_1 (R⁴ × R³).
inline double gaussian_mass() { return std::pow(std::numbers::pi, 3.5); }

/// Sub-Laplacian eigenvalue of φ_{λ,n} on H_1: 8(n+1)|λ|.
inline double sublaplacian_eigenvalue(double rho, int n) { return 8.0 * (n + 1) * rho; }

}  // namespace oracle
