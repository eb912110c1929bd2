#pragma once

/**
 * @file symbols.hpp
 * @brief Multiplier symbols m(ν), ν > 0 the spectral variable of the sub-Laplacian, and a registry
 *        of built-ins (constant, power, imaginary power, rational, exponential, table).
 */

#include <boost/math/interpolators/makima.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/littlewood_paley.hpp"
#include "qhsf/quaternion.hpp"

namespace qhsf {

struct Symbol {
    std::string descriptor;
    std::function<cplx(double)> m;
    int smoothness_order = 6;

    cplx operator()(double nu) const { return m(nu); }
};

namespace detail {
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}
}  // namespace detail

inline Symbol constant_symbol(cplx c) {
    return {"constant(" + detail::num(c.real()) + (c.imag() != 0.0 ? "+" + detail::num(c.imag()) + "i" : "") + ")",
            [c](double) { return c; }};
}

/// ν^p.
inline Symbol power_symbol(double p) {
    return {"power(" + detail::num(p) + ")", [p](double nu) { return cplx(std::pow(nu, p)); }};
}

/// ν^{is} = e^{is ln ν}.
inline Symbol imaginary_power_symbol(double s) {
    return {"imaginary_power(" + detail::num(s) + ")", [s](double nu) { return std::polar(1.0, s * std::log(nu)); }};
}

/// (1 + ν)^{-k}.
inline Symbol rational_symbol(double k) {
    return {"rational(" + detail::num(k) + ")", [k](double nu) { return cplx(std::pow(1.0 + nu, -k)); }};
}

/// e^{-sν}.
inline Symbol exp_symbol(double s) {
    return {"exp(" + detail::num(s) + ")", [s](double nu) { return cplx(std::exp(-s * nu)); }};
}

/// ψ(2^{-j}ν)·m(ν): one Littlewood–Paley shell of m.
inline Symbol window_symbol(const Symbol& m, int j, const LPPartition& part) {
    return {"window(" + std::to_string(j) + ")*" + m.descriptor, [m, j, part](double nu) {
                const double w = part.window(j, nu);
                return w == 0.0 ? cplx(0.0) : w * m(nu);
            }};
}

inline Symbol product_symbol(const Symbol& a, const Symbol& b) {
    return {a.descriptor + "*" + b.descriptor, [a, b](double nu) { return a(nu) * b(nu); },
            std::min(a.smoothness_order, b.smoothness_order)};
}

/**
 * Tabulated symbol, interpolated by modified Akima splines in ln ν (real and imaginary parts).
 * Outside [ν_0, ν_last] the symbol is not evaluable and yields NaN.
 */
inline Symbol table_symbol(std::vector<double> nu, std::vector<double> re, std::vector<double> im = {}) {
    if (nu.size() < 4) throw InputError("table symbol: need at least 4 nodes");
    if (re.size() != nu.size() || (!im.empty() && im.size() != nu.size()))
        throw InputError("table symbol: nu/re/im sizes differ");
    if (im.empty()) im.assign(nu.size(), 0.0);
    for (std::size_t i = 0; i < nu.size(); ++i) {
        if (!(nu[i] > 0.0) || (i > 0 && !(nu[i] > nu[i - 1])))
            throw InputError("table symbol: nu must be positive and strictly increasing");
        if (!std::isfinite(re[i]) || !std::isfinite(im[i])) throw InputError("table symbol: non-finite value");
    }
    const double lo = nu.front(), hi = nu.back();
    std::vector<double> x(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) x[i] = std::log(nu[i]);
    using Spline = boost::math::interpolators::makima<std::vector<double>>;
    auto sr = std::make_shared<const Spline>(std::vector<double>(x), std::move(re));
    auto si = std::make_shared<const Spline>(std::move(x), std::move(im));
    return {"table(" + std::to_string(nu.size()) + " nodes)", [sr, si, lo, hi](double v) {
                if (!(v >= lo && v <= hi)) return cplx(std::nan(""), 0.0);
                const double l = std::log(v);
                return cplx((*sr)(l), (*si)(l));
            }};
}

/**
 * Registry: {"name": "constant", "value": 1} | {"name": "power", "p": 1} | {"name": "imaginary_power", "s": 1}
 * | {"name": "rational", "k": 1} | {"name": "exp", "s": 1} | {"name": "table", "nu": [...], "re": [...], "im": [...]}.
 */
inline Symbol symbol_from_json(const nlohmann::json& j) {
    try {
        const std::string name = j.at("name").get<std::string>();
        if (name == "constant") return constant_symbol({j.value("value", 1.0), j.value("imag", 0.0)});
        if (name == "power") return power_symbol(j.value("p", 1.0));
        if (name == "imaginary_power") return imaginary_power_symbol(j.value("s", 1.0));
        if (name == "rational") return rational_symbol(j.value("k", 1.0));
        if (name == "exp") return exp_symbol(j.value("s", 1.0));
        if (name == "table")
            return table_symbol(j.at("nu").get<std::vector<double>>(), j.at("re").get<std::vector<double>>(),
                                j.value("im", std::vector<double>{}));
        throw InputError("unknown symbol '" + name + "'");
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("symbol spec: ") + e.what());
    }
}

}  // namespace qhsf
