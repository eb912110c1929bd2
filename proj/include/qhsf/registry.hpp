#pragma once

/**
 * @file registry.hpp
 * @brief Built-in test functions addressed by name + JSON parameters:
 *        gaussian {a, b, amp}, bump {R}, hermite_modulated {a, b, k}, zero.
 */

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/radial_function.hpp"

namespace qhsf {

/// Physicists' Hermite polynomial H_k(x).
inline double hermite_phys(int k, double x) {
    double hm = 0.0, h = 1.0;
    for (int j = 0; j < k; ++j) {
        const double hn = 2.0 * x * h - 2.0 * j * hm;
        hm = h;
        h = hn;
    }
    return h;
}

/// exp(1 − 1/(1 − |x|⁴/R⁴)) for |x| < R, 0 outside (|x| the homogeneous norm; α = |u|²).
inline RadialFunction bump_function(double R = 2.0) {
    if (!(R > 0.0)) throw InputError("bump: R must be positive");
    const double R4 = std::pow(R, 4);
    return RadialFunction::isotropic(
        "bump",
        [R4](double al, double r) {
            const double s = (al * al + r * r * r * r) / R4;
            return s < 1.0 ? cplx(std::exp(1.0 - 1.0 / (1.0 - s))) : cplx(0.0);
        },
        {1.0 / (R * R), 1.0 / (R * R)});
}

/// H_k(√b t₃) e^{-aα - b|t|²}: not isotropic in t.
inline RadialFunction hermite_modulated(double a = 1.0, double b = 1.0, int k = 2) {
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("hermite_modulated: rates must be positive");
    if (k < 0) throw InputError("hermite_modulated: k must be >= 0");
    RadialFunction f;
    f.name = "hermite_modulated";
    f.env = {a, 0.75 * b};
    const double sb = std::sqrt(b);
    f.F = [a, b, k, sb](double al, const Vec3& t) {
        return cplx(hermite_phys(k, sb * t[2]) * std::exp(-a * al - b * dot(t, t)));
    };
    return f;
}

inline const std::vector<std::string>& function_names() {
    static const std::vector<std::string> names{"gaussian", "bump", "hermite_modulated", "zero"};
    return names;
}

inline RadialFunction function_from_json(const nlohmann::json& j) {
    try {
        const std::string name = j.at("name").get<std::string>();
        if (name == "gaussian") return RadialFunction::gaussian(j.value("a", 1.0), j.value("b", 1.0), j.value("amp", 1.0));
        if (name == "bump") return bump_function(j.value("R", 2.0));
        if (name == "hermite_modulated" || name == "hermite-modulated")
            return hermite_modulated(j.value("a", 1.0), j.value("b", 1.0), j.value("k", 2));
        if (name == "zero") return RadialFunction::zero();
        throw InputError("unknown function '" + name + "'");
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("function spec: ") + e.what());
    }
}

}  // namespace qhsf
