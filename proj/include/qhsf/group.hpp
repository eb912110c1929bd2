#pragma once

/**
 * @file group.hpp
 * @brief The quaternionic Heisenberg group H_q = H^q ⊕ R³ and its motion group K ⋉ H_q.
 *
 * Group law: (u, t)(r, s) = (u + r, t + s - 2 Σ_i Im(conj(r_i) u_i)).
 * K = Sp(1) (unit quaternions) acts by automorphisms through componentwise
 * left multiplication, k·(u, t) = (k u, t).
 */

#include <boost/container/small_vector.hpp>

#include <cmath>
#include <functional>
#include <string>

#include "qhsf/errors.hpp"
#include "qhsf/quaternion.hpp"

namespace qhsf {

using QuatVec = boost::container::small_vector<Quaternion, 1>;

struct GroupPoint {
    QuatVec u;  // first stratum, weight 1
    Vec3 t{};   // centre, weight 2

    GroupPoint() : u(1) {}
    GroupPoint(Quaternion u0, Vec3 t0) : u{u0}, t(t0) {}
    GroupPoint(QuatVec u0, Vec3 t0) : u(std::move(u0)), t(t0) {}

    [[nodiscard]] int q() const { return static_cast<int>(u.size()); }
    /// |u|² summed over all quaternionic coordinates.
    [[nodiscard]] double u_norm2() const {
        double s = 0.0;
        for (const auto& c : u) s += norm2(c);
        return s;
    }

    bool operator==(const GroupPoint& o) const { return u == o.u && t == o.t; }

    static GroupPoint identity(int q = 1) { return GroupPoint(QuatVec(static_cast<std::size_t>(q)), Vec3{}); }
    static GroupPoint central(const Vec3& t, int q = 1) { return GroupPoint(QuatVec(static_cast<std::size_t>(q)), t); }
};

using GroupFunction = std::function<cplx(const GroupPoint&)>;

struct MotionElement {
    Quaternion k = Quaternion::one();
    GroupPoint point;
};

struct GroupConstants {
    int q = 1;
    int Q = 10;  // homogeneous dimension 4q + 6
};

inline GroupConstants group_constants(int q) {
    if (q < 1) throw InputError("group_constants: q must be positive");
    return {q, 4 * q + 6};
}

namespace detail {
inline void require_same_q(const GroupPoint& a, const GroupPoint& b, const char* where) {
    if (a.u.size() != b.u.size()) {
        throw InputError(std::string(where) + ": dimension mismatch (q=" + std::to_string(a.q()) +
                         " vs q=" + std::to_string(b.q()) + ")");
    }
}
inline void require_unit(const Quaternion& k, const char* where) {
    if (!is_unit(k)) throw InputError(std::string(where) + ": k is not a unit quaternion");
}
}  // namespace detail

/// The 2-cocycle -2 Σ Im(conj(r_i) u_i) contributed by (u,·)(r,·).
inline Vec3 cocycle(const QuatVec& u, const QuatVec& r) {
    Vec3 acc{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Vec3 im = qimag(qconj(r[i]) * u[i]);
        acc = acc + im;
    }
    return -2.0 * acc;
}

inline GroupPoint hq_mul(const GroupPoint& p, const GroupPoint& r) {
    detail::require_same_q(p, r, "hq_mul");
    GroupPoint out;
    out.u.resize(p.u.size());
    for (std::size_t i = 0; i < p.u.size(); ++i) out.u[i] = p.u[i] + r.u[i];
    out.t = p.t + r.t + cocycle(p.u, r.u);
    return out;
}

inline GroupPoint hq_inv(const GroupPoint& p) {
    GroupPoint out;
    out.u.resize(p.u.size());
    for (std::size_t i = 0; i < p.u.size(); ++i) out.u[i] = -p.u[i];
    out.t = -p.t;
    return out;
}

/// Automorphism φ_k(u, t) = (k u, t).
inline GroupPoint k_act(const Quaternion& k, const GroupPoint& p) {
    detail::require_unit(k, "k_act");
    GroupPoint out;
    out.u.resize(p.u.size());
    for (std::size_t i = 0; i < p.u.size(); ++i) out.u[i] = k * p.u[i];
    out.t = p.t;
    return out;
}

/// Semidirect product (k, x)(k', x') = (k k', x · φ_k(x')).
inline MotionElement motion_mul(const MotionElement& a, const MotionElement& b) {
    detail::require_unit(a.k, "motion_mul");
    detail::require_unit(b.k, "motion_mul");
    return {a.k * b.k, hq_mul(a.point, k_act(a.k, b.point))};
}

inline MotionElement motion_identity(int q = 1) { return {Quaternion::one(), GroupPoint::identity(q)}; }

/// Homogeneous norm (|u|⁴ + |t|²)^{1/4}.
inline double homogeneous_norm(const GroupPoint& p) {
    const double a = p.u_norm2();
    return std::pow(a * a + dot(p.t, p.t), 0.25);
}

/// Dilation δ_r(u, t) = (r u, r² t).
inline GroupPoint dilate(double r, const GroupPoint& p) {
    if (!(r > 0.0)) throw InputError("dilate: r must be positive");
    GroupPoint out;
    out.u.resize(p.u.size());
    for (std::size_t i = 0; i < p.u.size(); ++i) out.u[i] = r * p.u[i];
    out.t = (r * r) * p.t;
    return out;
}

/// Transitive action Ψ((k,u,t), (v,s)) = (u,t)·(k v, s); identifies G/K with H_q.
inline GroupPoint motion_act(const MotionElement& g, const GroupPoint& x) {
    return hq_mul(g.point, k_act(g.k, x));
}

}  // namespace qhsf
