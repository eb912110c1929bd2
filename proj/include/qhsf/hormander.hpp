#pragma once

/**
 * @file hormander.hpp
 * @brief Hörmander (dyadic L² shell) and Mihlin (pointwise) conditions for symbols m(ν), with
 *        derivatives by central finite differences. Divergence detection is heuristic: a flag means
 *        monotone growth of ≥ 10× across the top two decades of the scale grid, never a proof.
 */

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/gauss.hpp"
#include "qhsf/parallel.hpp"
#include "qhsf/symbols.hpp"

namespace qhsf {

/// Relative FD step for order-a derivatives at scale s: s·max(1e-4, ε^{1/(a+2)}) balances truncation and round-off.
inline double fd_step(double scale, int order) {
    const double eps = std::numeric_limits<double>::epsilon();
    return scale * std::max(1e-4, std::pow(eps, 1.0 / (order + 2.0)));
}

/// D^a m(ν) = h^{-a} Σ_k (−1)^k C(a,k) m(ν + (a/2 − k)h).
inline cplx fd_derivative(const Symbol& m, double nu, int order, double h) {
    if (order == 0) return m(nu);
    cplx acc = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        acc += ((k % 2) ? -binom : binom) * m(nu + (0.5 * order - k) * h);
        binom = binom * (order - k) / (k + 1.0);
    }
    return acc / std::pow(h, order);
}

inline std::vector<double> dyadic_grid(int k_lo = -10, int k_hi = 10) {
    std::vector<double> r;
    for (int k = k_lo; k <= k_hi; ++k) r.push_back(std::ldexp(1.0, k));
    return r;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw InputError("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, i / (n - 1.0));
    return v;
}

/// Monotone non-decreasing growth by ≥ 10× over the points of `scales` within the top two decades.
inline bool divergence_flag(const std::vector<double>& scales, const std::vector<double>& values) {
    if (scales.empty()) return false;
    const double top = scales.back();
    std::size_t first = scales.size() - 1;
    while (first > 0 && scales[first - 1] >= top / 100.0 * (1.0 - 1e-12)) --first;
    if (first + 1 >= scales.size()) return false;
    for (std::size_t i = first + 1; i < scales.size(); ++i)
        if (!(values[i] >= values[i - 1])) return false;
    return values.back() > 0.0 && values.back() >= 10.0 * values[first];
}

struct HormanderReport {
    std::string symbol;
    int k = 0;
    int dim = 1;
    std::vector<double> R;
    std::vector<std::vector<double>> table;  // [α][iR] = R^{α−dim/2} (∫_R^{2R} |D^α m|² dν)^{1/2}
    std::vector<double> sup_over_alpha;      // per R
    double value = 0.0;
    bool divergent = false;
};

inline void to_json(nlohmann::json& j, const HormanderReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t a = 0; a < r.table.size(); ++a) rows.push_back({{"alpha", a}, {"values", r.table[a]}});
    j = nlohmann::json{{"symbol", r.symbol},       {"k", r.k},
                       {"dim", r.dim},             {"R", r.R},
                       {"shells", rows},           {"sup_over_alpha", r.sup_over_alpha},
                       {"value", r.value},         {"divergent", r.divergent}};
}

/**
 * max over α = 0..k and R ∈ R_grid of R^{α−dim/2}(∫_R^{2R}|D^α m(ν)|² dν)^{1/2}; shells are integrated
 * by 32-point Gauss–Legendre, derivatives use the step fd_step(R, α).
 */
inline HormanderReport hormander_dyadic_norm(const Symbol& m, int k, int dim, const std::vector<double>& R_grid) {
    if (k < 1) throw InputError("hormander_dyadic_norm: k must be >= 1");
    if (dim < 1) throw InputError("hormander_dyadic_norm: dim must be >= 1");
    if (R_grid.empty()) throw InputError("hormander_dyadic_norm: empty R grid");
    for (std::size_t i = 0; i < R_grid.size(); ++i)
        if (!(R_grid[i] > 0.0) || (i > 0 && !(R_grid[i] > R_grid[i - 1])))
            throw InputError("hormander_dyadic_norm: R grid must be positive and increasing");
    HormanderReport rep;
    rep.symbol = m.descriptor;
    rep.k = k;
    rep.dim = dim;
    rep.R = R_grid;
    const std::size_t nR = R_grid.size();
    rep.table.assign(static_cast<std::size_t>(k) + 1, std::vector<double>(nR));
    const Rule1D gl = gauss_legendre(32, 0.0, 1.0);
    parallel_for(nR * (static_cast<std::size_t>(k) + 1), [&](std::size_t job) {
        const int a = static_cast<int>(job / nR);
        const std::size_t ir = job % nR;
        const double R = R_grid[ir], h = fd_step(R, a);
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.size(); ++i) {
            const double nu = R + R * gl.x[i];
            const cplx d = fd_derivative(m, nu, a, h);
            if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
                throw InputError("hormander_dyadic_norm: symbol '" + m.descriptor + "' not evaluable on shell [" +
                                 std::to_string(R) + ", " + std::to_string(2 * R) + "]");
            acc += R * gl.w[i] * std::norm(d);
        }
        rep.table[static_cast<std::size_t>(a)][ir] = std::pow(R, a - 0.5 * dim) * std::sqrt(acc);
    });
    rep.sup_over_alpha.assign(nR, 0.0);
    for (const auto& row : rep.table)
        for (std::size_t i = 0; i < nR; ++i) rep.sup_over_alpha[i] = std::max(rep.sup_over_alpha[i], row[i]);
    for (double v : rep.sup_over_alpha) rep.value = std::max(rep.value, v);
    rep.divergent = divergence_flag(rep.R, rep.sup_over_alpha);
    return rep;
}

/// k = ⌊dim/2⌋ + 1 with the default dyadic grid 2^{-10}..2^{10}.
inline HormanderReport hormander_dyadic_norm(const Symbol& m, int dim = 1) {
    return hormander_dyadic_norm(m, dim / 2 + 1, dim, dyadic_grid());
}

struct MihlinReport {
    std::string symbol;
    std::vector<double> per_a;             // sup_ν ν^a |D^a m(ν)|
    std::vector<bool> divergent_per_a;
    double value = 0.0;
    bool divergent = false;
};

inline void to_json(nlohmann::json& j, const MihlinReport& r) {
    j = nlohmann::json{{"symbol", r.symbol},
                       {"per_a", r.per_a},
                       {"divergent_per_a", r.divergent_per_a},
                       {"value", r.value},
                       {"divergent", r.divergent}};
}

/// max over a = 0..a_max and ν ∈ grid of ν^a |D^a m(ν)|; divergence judged on the running sup along ν.
inline MihlinReport mihlin_sup_norm(const Symbol& m, int a_max, const std::vector<double>& nu_grid) {
    if (a_max < 1) throw InputError("mihlin_sup_norm: a_max must be >= 1");
    if (nu_grid.empty()) throw InputError("mihlin_sup_norm: empty nu grid");
    MihlinReport rep;
    rep.symbol = m.descriptor;
    for (int a = 0; a <= a_max; ++a) {
        std::vector<double> running(nu_grid.size());
        double sup = 0.0;
        for (std::size_t i = 0; i < nu_grid.size(); ++i) {
            const double nu = nu_grid[i];
            if (!(nu > 0.0)) throw InputError("mihlin_sup_norm: nu grid must be positive");
            const cplx d = fd_derivative(m, nu, a, fd_step(nu, a));
            if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
                throw InputError("mihlin_sup_norm: symbol '" + m.descriptor + "' not evaluable at nu=" +
                                 std::to_string(nu));
            sup = std::max(sup, std::pow(nu, a) * std::abs(d));
            running[i] = sup;
        }
        rep.per_a.push_back(sup);
        rep.divergent_per_a.push_back(divergence_flag(nu_grid, running));
        rep.value = std::max(rep.value, sup);
        rep.divergent = rep.divergent || rep.divergent_per_a.back();
    }
    return rep;
}

inline MihlinReport mihlin_sup_norm(const Symbol& m, int a_max = 6) {
    return mihlin_sup_norm(m, a_max, log_grid(1e-3, 1e3, 121));
}

}  // namespace qhsf
