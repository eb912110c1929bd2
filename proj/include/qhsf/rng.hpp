#pragma once

/**
 * @file rng.hpp
 * @brief Seeded generator with platform-independent uniform/normal draws
 *        (std distributions are implementation-defined, which would break reproducibility).
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qhsf/group.hpp"

namespace qhsf {

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Quaternion quaternion(double a = -1.0, double b = 1.0) {
        const double w = uniform(a, b), x = uniform(a, b), y = uniform(a, b), z = uniform(a, b);
        return {w, x, y, z};
    }

    Quaternion unit_quaternion() {
        Quaternion q{normal(), normal(), normal(), normal()};
        while (norm(q) < 1e-12) q = {normal(), normal(), normal(), normal()};
        return qnormalize(q);
    }

    Vec3 vec3(double a = -1.0, double b = 1.0) {
        const double x = uniform(a, b), y = uniform(a, b), z = uniform(a, b);
        return {x, y, z};
    }

    /// Point with u and t components uniform in [-s, s].
    GroupPoint point(double s = 1.0, int q = 1) {
        QuatVec u(static_cast<std::size_t>(q));
        for (auto& c : u) c = quaternion(-s, s);
        const Vec3 t = vec3(-s, s);
        return {u, t};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace qhsf
