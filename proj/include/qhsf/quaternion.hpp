#pragma once

/**
 * @file quaternion.hpp
 * @brief Hamilton quaternions q = w + xi + yj + zk with i² = j² = k² = ijk = -1.
 *
 * The identification H ≅ R⁴ is fixed as (w, x, y, z) ↔ (u0, u1, u2, u3).
 */

#include <array>
#include <cmath>
#include <complex>

#include "qhsf/errors.hpp"

namespace qhsf {

using Vec3 = std::array<double, 3>;
using cplx = std::complex<double>;

constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
constexpr Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    // Hamilton product (non-commutative)
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

constexpr double norm2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }

/// Real inner product on R⁴, equal to Re(conj(a) b).
constexpr double dot(const Quaternion& a, const Quaternion& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) { return a * b; }

constexpr Quaternion qconj(const Quaternion& a) { return {a.w, -a.x, -a.y, -a.z}; }

/// Unit quaternion a/|a|; the inverse of the result is its conjugate.
inline Quaternion qnormalize(const Quaternion& a) {
    const double n = norm(a);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("qnormalize: zero or non-finite quaternion");
    }
    return (1.0 / n) * a;
}

/// Imaginary part (x, y, z).
constexpr Vec3 qimag(const Quaternion& a) { return {a.x, a.y, a.z}; }

inline bool is_unit(const Quaternion& k, double tol = 1e-12) { return std::abs(norm(k) - 1.0) <= tol; }

}  // namespace qhsf
