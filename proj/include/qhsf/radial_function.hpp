#pragma once

/**
 * @file radial_function.hpp
 * @brief K-invariant functions f(u, t) = F(|u|², t) with a Gaussian decay envelope.
 *
 * The envelope |F(α, t)| ≲ e^{-alpha_rate·α - t_rate·|t|²} only guides quadrature
 * (node scaling); it is not enforced pointwise. An optional isotropic profile
 * F_iso(α, |t|) lets transforms reduce the t-integral to one dimension.
 */

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "qhsf/errors.hpp"
#include "qhsf/group.hpp"

namespace qhsf {

struct Envelope {
    double alpha_rate = 1.0;
    double t_rate = 1.0;
};

struct RadialFunction {
    std::string name = "custom";
    std::function<cplx(double, const Vec3&)> F;
    Envelope env;
    std::function<cplx(double, double)> F_iso;  // optional: F(α, t) = F_iso(α, |t|)
    bool is_zero = false;

    [[nodiscard]] bool t_isotropic() const { return static_cast<bool>(F_iso); }

    cplx operator()(double alpha, const Vec3& t) const { return F(alpha, t); }
    cplx operator()(const GroupPoint& p) const { return F(p.u_norm2(), p.t); }

    static RadialFunction isotropic(std::string name, std::function<cplx(double, double)> prof, Envelope env) {
        RadialFunction f;
        f.name = std::move(name);
        f.env = env;
        f.F_iso = prof;
        f.F = [prof](double a, const Vec3& t) { return prof(a, norm(t)); };
        return f;
    }

    /// amp·e^{-a α - b |t|²}.
    static RadialFunction gaussian(double a = 1.0, double b = 1.0, cplx amp = 1.0) {
        if (!(a > 0.0) || !(b > 0.0)) throw InputError("gaussian: rates must be positive");
        return isotropic(
            "gaussian", [a, b, amp](double al, double r) { return amp * std::exp(-a * al - b * r * r); }, {a, b});
    }

    static RadialFunction zero() {
        RadialFunction f = isotropic("zero", [](double, double) { return cplx(0.0); }, {1.0, 1.0});
        f.is_zero = true;
        return f;
    }

    /// Linear combination s·f + r·g; the envelope is the slower of the two.
    static RadialFunction combine(cplx s, const RadialFunction& f, cplx r, const RadialFunction& g) {
        RadialFunction h;
        h.name = "combination";
        h.env = {std::min(f.env.alpha_rate, g.env.alpha_rate), std::min(f.env.t_rate, g.env.t_rate)};
        h.F = [s, r, F1 = f.F, F2 = g.F](double a, const Vec3& t) { return s * F1(a, t) + r * F2(a, t); };
        if (f.t_isotropic() && g.t_isotropic()) {
            h.F_iso = [s, r, P1 = f.F_iso, P2 = g.F_iso](double a, double x) { return s * P1(a, x) + r * P2(a, x); };
        }
        return h;
    }
};

}  // namespace qhsf
