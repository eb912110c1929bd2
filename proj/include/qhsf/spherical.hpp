#pragma once

/**
 * @file spherical.hpp
 * @brief Bounded spherical functions
 *        φ_{λ,n}(u, t) = (1/(n+1)) e^{i⟨λ,t⟩} e^{-|λ||u|²} L¹_n(2|λ||u|²),
 *        K-bi-invariant projection, K-radialisation, Gram positivity and the
 *        spherical functional-equation residual.
 */

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qhsf/errors.hpp"
#include "qhsf/group.hpp"
#include "qhsf/laguerre.hpp"
#include "qhsf/quadrature.hpp"
#include "qhsf/radial_function.hpp"

namespace qhsf {

struct SphericalParams {
    Vec3 lambda{};
    int n = 0;

    SphericalParams(const Vec3& l, int n_) : lambda(l), n(n_) {
        if (!(norm(lambda) > 0.0)) throw InputError("SphericalParams: lambda must be nonzero");
        if (n < 0) throw InputError("SphericalParams: n must be >= 0");
    }
    [[nodiscard]] double rho() const { return norm(lambda); }
};

/**
 * Radial profiles Φ_k(ρ, α) = e^{-ρα} L¹_k(2ρα)/(k+1) for k = 0..n_max written to out.
 * The recurrence is rescaled on the fly so large n and α neither overflow nor produce 0·∞.
 */
inline void phi_radial_all(int n_max, double rho, double alpha, double* out) {
    const double w = 2.0 * rho * alpha;
    double log_scale = -0.5 * w;  // value = p · e^{log_scale}
    double pm = 0.0, p = 1.0;
    auto emit = [&](int k) {
        double v = 0.0;
        if (log_scale > -700.0) {
            v = p * std::exp(log_scale);
        } else if (p != 0.0) {
            v = std::copysign(std::exp(std::log(std::abs(p)) + log_scale), p);
        }
        out[k] = v / (k + 1.0);
    };
    emit(0);
    for (int k = 0; k < n_max; ++k) {
        const double pn = ((2.0 * k + 2.0 - w) * p - (k + 1.0) * pm) / (k + 1.0);
        pm = p;
        p = pn;
        const double ap = std::abs(p);
        if (ap > 1e150) {
            p /= ap;
            pm /= ap;
            log_scale += std::log(ap);
        }
        emit(k + 1);
    }
}

inline double phi_radial(int n, double rho, double alpha) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    phi_radial_all(n, rho, alpha, v.data());
    return v.back();
}

inline cplx phi_eval(const SphericalParams& p, const GroupPoint& g) {
    const double ph = dot(p.lambda, g.t);
    return std::polar(phi_radial(p.n, p.rho(), g.u_norm2()), ph);
}

using MotionFunction = std::function<cplx(const MotionElement&)>;

/// f#(g) = ∫_K∫_K f(k g k') dk dk' with K embedded in G as (k, 0).
inline MotionFunction biinvariant_project(MotionFunction f, const QuadratureSpec& spec) {
    auto sp = std::make_shared<const QuadratureSpec>(spec);
    return [f = std::move(f), sp](const MotionElement& g) {
        const int q = g.point.q();
        return integrate_k(
            [&](const Quaternion& k) {
                const MotionElement left = motion_mul({k, GroupPoint::identity(q)}, g);
                return integrate_k(
                    [&](const Quaternion& kp) { return f(motion_mul(left, {kp, GroupPoint::identity(q)})); }, *sp);
            },
            *sp);
    };
}

/// ∫_K f(k·u, t) dk at a single point (u, t).
inline cplx radial_average(const GroupFunction& f, const GroupPoint& p, const QuadratureSpec& spec) {
    return integrate_k([&](const Quaternion& k) { return f(k_act(k, p)); }, spec);
}

/// g(u, t) = ∫_K f(k·u, t) dk as a function of (|u|², t) (q = 1).
inline RadialFunction radialize(GroupFunction f, const QuadratureSpec& spec, Envelope env = {}) {
    auto sp = std::make_shared<const QuadratureSpec>(spec);
    RadialFunction r;
    r.name = "radialized";
    r.env = env;
    r.F = [f = std::move(f), sp](double alpha, const Vec3& t) {
        return radial_average(f, GroupPoint(Quaternion{std::sqrt(std::max(alpha, 0.0)), 0.0, 0.0, 0.0}, t), *sp);
    };
    return r;
}

/// Minimal eigenvalue of the Hermitian part of G_ij = φ(g_i g_j⁻¹).
inline double gram_min_eig(const SphericalParams& p, const std::vector<GroupPoint>& points) {
    if (points.empty()) throw InputError("gram_min_eig: need at least one point");
    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd G(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) G(i, j) = phi_eval(p, hq_mul(points[i], hq_inv(points[j])));
    const Eigen::MatrixXcd H = 0.5 * (G + G.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("gram_min_eig: eigen-solver failure");
    return es.eigenvalues().minCoeff();
}

/// |∫_K φ(g · k·h) dk − φ(g) φ(h)|.
inline double spherical_residual(const SphericalParams& p, const GroupPoint& g, const GroupPoint& h,
                                 const QuadratureSpec& spec) {
    const cplx avg = integrate_k([&](const Quaternion& k) { return phi_eval(p, hq_mul(g, k_act(k, h))); }, spec);
    return std::abs(avg - phi_eval(p, g) * phi_eval(p, h));
}

}  // namespace qhsf
