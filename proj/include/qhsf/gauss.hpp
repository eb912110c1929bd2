#pragma once

/**
 * @file gauss.hpp
 * @brief One-dimensional Gaussian quadrature rules (Golub–Welsch + Newton polish).
 *
 * Nodes come from the Jacobi matrix eigenvalues, are polished by Newton steps on the
 * orthonormal three-term recurrence, and weights use the Christoffel formula
 * w_i = 1 / Σ_k p_k(x_i)², which keeps the small tail weights accurate.
 */

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <vector>

#include "qhsf/errors.hpp"

namespace qhsf {

struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;

    [[nodiscard]] std::size_t size() const { return x.size(); }
};

namespace detail {

// Orthonormal recurrence b_{k+1} p_{k+1} = (x - a_k) p_k - b_k p_{k-1}, p_0 = 1/sqrt(mu0).
inline Rule1D golub_welsch(const std::vector<double>& a, const std::vector<double>& b, double mu0) {
    const int n = static_cast<int>(a.size());
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = a[i];
    for (int i = 0; i + 1 < n; ++i) sub(i) = b[i + 1];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("golub_welsch: eigen-solver failure");

    Rule1D r;
    r.x.resize(n);
    r.w.resize(n);
    const double p0 = 1.0 / std::sqrt(mu0);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        double sum = 0.0;
        for (int pass = 0; pass < 3; ++pass) {
            // p_n and p_n' for Newton, plus Σ p_k² for the weight
            double pm = 0.0, p = p0, dpm = 0.0, dp = 0.0;
            sum = p * p;
            for (int k = 0; k < n; ++k) {
                const double bk = b[k];
                const double bn = (k + 1 < n) ? b[k + 1] : 1.0;  // p_n is only needed up to scale
                const double pn = ((x - a[k]) * p - bk * pm) / bn;
                const double dpn = (p + (x - a[k]) * dp - bk * dpm) / bn;
                pm = p;
                p = pn;
                dpm = dp;
                dp = dpn;
                if (k + 1 < n) sum += p * p;
            }
            if (pass < 2 && dp != 0.0 && std::isfinite(p / dp)) x -= p / dp;
        }
        r.x[i] = x;
        r.w[i] = 1.0 / sum;
    }
    return r;
}

}  // namespace detail

/// Gauss–Legendre on [lo, hi].
inline Rule1D gauss_legendre(int n, double lo = -1.0, double hi = 1.0) {
    if (n < 1) throw InputError("gauss_legendre: n must be >= 1");
    std::vector<double> a(n, 0.0), b(n, 0.0);
    for (int k = 1; k < n; ++k) b[k] = k / std::sqrt(4.0 * k * k - 1.0);
    Rule1D r = detail::golub_welsch(a, b, 2.0);
    const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.x[i] = m + h * r.x[i];
        r.w[i] *= h;
    }
    return r;
}

/// Generalised Gauss–Laguerre for ∫₀^∞ x^alpha e^{-x} g(x) dx.
inline Rule1D gauss_laguerre(int n, double alpha = 0.0) {
    if (n < 1) throw InputError("gauss_laguerre: n must be >= 1");
    if (!(alpha > -1.0)) throw InputError("gauss_laguerre: alpha must exceed -1");
    std::vector<double> a(n), b(n, 0.0);
    for (int k = 0; k < n; ++k) a[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) b[k] = std::sqrt(k * (k + alpha));
    return detail::golub_welsch(a, b, std::tgamma(alpha + 1.0));
}

/// Gauss–Hermite for ∫ e^{-x²} g(x) dx.
inline Rule1D gauss_hermite(int n) {
    if (n < 1) throw InputError("gauss_hermite: n must be >= 1");
    std::vector<double> a(n, 0.0), b(n, 0.0);
    for (int k = 1; k < n; ++k) b[k] = std::sqrt(0.5 * k);
    return detail::golub_welsch(a, b, std::sqrt(std::numbers::pi));
}

/// Gauss–Chebyshev of the second kind for ∫_{-1}^{1} sqrt(1-x²) g(x) dx (closed form).
inline Rule1D gauss_chebyshev2(int n) {
    if (n < 1) throw InputError("gauss_chebyshev2: n must be >= 1");
    Rule1D r;
    for (int i = 1; i <= n; ++i) {
        const double th = i * std::numbers::pi / (n + 1);
        r.x.push_back(std::cos(th));
        r.w.push_back(std::numbers::pi / (n + 1) * std::sin(th) * std::sin(th));
    }
    return r;
}

/// Gauss–Hermite rule for plain ∫ g(x) dx, exact for e^{-rate x²}·polynomial.
inline Rule1D hermite_plain(int n, double rate) {
    if (!(rate > 0.0)) throw InputError("hermite_plain: rate must be positive");
    Rule1D r = gauss_hermite(n);
    const double s = 1.0 / std::sqrt(rate);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.w[i] *= std::exp(r.x[i] * r.x[i]) * s;
        r.x[i] *= s;
    }
    return r;
}

/// Generalised Laguerre rule for plain ∫₀^∞ g(x) x^alpha dx, exact for e^{-rate x}·polynomial.
inline Rule1D laguerre_plain(int n, double alpha, double rate) {
    if (!(rate > 0.0)) throw InputError("laguerre_plain: rate must be positive");
    Rule1D r = gauss_laguerre(n, alpha);
    const double s = 1.0 / rate;
    const double js = std::pow(s, alpha + 1.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.w[i] *= std::exp(r.x[i]) * js;
        r.x[i] *= s;
    }
    return r;
}

}  // namespace qhsf
