#pragma once

/**
 * @file spectral_grid.hpp
 * @brief Spectral grids λ = ρ·ω ∈ R³∖{0} (directions × radii) carrying values f̂(λ, n), n = 0..n_max.
 *
 * Node weights discretise dλ = ρ² dρ dω. The "isotropic" direction kind stores data that depends
 * on |λ| only; its single representative direction carries the full sphere measure 4π and
 * inverse transforms integrate plane waves over S² exactly (4π·sinc(ρ|t|)).
 */

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/gauss.hpp"
#include "qhsf/quaternion.hpp"

namespace qhsf {

enum class DirectionKind { octahedral, product, isotropic };
enum class RadiusKind { log, gauss };

struct GridShape {
    DirectionKind directions = DirectionKind::octahedral;
    int n_polar = 0;    // product rule: Gauss–Legendre in cos θ
    int n_azimuth = 0;  // product rule: uniform in φ
    RadiusKind radii = RadiusKind::log;
    double r_lo = 0.5;
    double r_hi = 4.0;
    int n_radii = 4;
    int n_max = 8;

    /// 6 octahedral directions × 4 log-spaced radii in [0.5, 4], n ≤ 8.
    static GridShape default_shape() { return {}; }

    /// Resolution used for inversion round trips: 10×20 directions, 32 Gauss radii on [0, 9], n ≤ 24.
    static GridShape inversion_shape() {
        GridShape s;
        s.directions = DirectionKind::product;
        s.n_polar = 10;
        s.n_azimuth = 20;
        s.radii = RadiusKind::gauss;
        s.r_lo = 0.0;
        s.r_hi = 9.0;
        s.n_radii = 32;
        s.n_max = 24;
        return s;
    }

    /// Doubles every resolution parameter (octahedral directions become a 6×12 product rule).
    [[nodiscard]] GridShape refined() const {
        GridShape s = *this;
        if (s.directions == DirectionKind::octahedral) {
            s.directions = DirectionKind::product;
            s.n_polar = 6;
            s.n_azimuth = 12;
        } else if (s.directions == DirectionKind::product) {
            s.n_polar *= 2;
            s.n_azimuth *= 2;
        }
        s.n_radii *= 2;
        s.n_max *= 2;
        return s;
    }

    void validate() const {
        if (n_max < 0) throw InputError("grid: n_max must be >= 0");
        if (n_radii < 1) throw InputError("grid: need at least one radius");
        if (directions == DirectionKind::product && (n_polar < 1 || n_azimuth < 1))
            throw InputError("grid: product directions need n_polar, n_azimuth >= 1");
        if (!(r_hi > r_lo) || r_lo < 0.0) throw InputError("grid: need 0 <= r_lo < r_hi");
        if (radii == RadiusKind::log && !(r_lo > 0.0)) throw InputError("grid: log radii need r_lo > 0");
    }
};

inline std::string to_string(DirectionKind k) {
    switch (k) {
        case DirectionKind::octahedral: return "octahedral";
        case DirectionKind::product: return "product";
        case DirectionKind::isotropic: return "isotropic";
    }
    return "octahedral";
}

inline void to_json(nlohmann::json& j, const GridShape& s) {
    j = nlohmann::json{{"directions", to_string(s.directions)},
                       {"n_polar", s.n_polar},
                       {"n_azimuth", s.n_azimuth},
                       {"radii", s.radii == RadiusKind::log ? "log" : "gauss"},
                       {"r_lo", s.r_lo},
                       {"r_hi", s.r_hi},
                       {"n_radii", s.n_radii},
                       {"n_max", s.n_max}};
}

inline void from_json(const nlohmann::json& j, GridShape& s) {
    s = GridShape::default_shape();
    const std::string d = j.value("directions", std::string("octahedral"));
    if (d == "octahedral") s.directions = DirectionKind::octahedral;
    else if (d == "product") s.directions = DirectionKind::product;
    else if (d == "isotropic") s.directions = DirectionKind::isotropic;
    else throw InputError("grid: unknown directions '" + d + "'");
    s.n_polar = j.value("n_polar", s.n_polar);
    s.n_azimuth = j.value("n_azimuth", s.n_azimuth);
    const std::string r = j.value("radii", std::string("log"));
    if (r == "log") s.radii = RadiusKind::log;
    else if (r == "gauss") s.radii = RadiusKind::gauss;
    else throw InputError("grid: unknown radii '" + r + "'");
    s.r_lo = j.value("r_lo", s.r_lo);
    s.r_hi = j.value("r_hi", s.r_hi);
    s.n_radii = j.value("n_radii", s.n_radii);
    s.n_max = j.value("n_max", s.n_max);
    s.validate();
}

struct SpectralGrid {
    GridShape shape;
    std::vector<Vec3> directions;
    std::vector<double> direction_weights;  // sum 4π
    std::vector<double> radii;
    std::vector<double> radius_weights;  // ∫ g(ρ) dρ
    int n_max = 0;
    std::vector<cplx> values;  // [(ir·ndir + id)·(n_max+1) + n]

    [[nodiscard]] std::size_t n_dirs() const { return directions.size(); }
    [[nodiscard]] std::size_t n_rad() const { return radii.size(); }
    [[nodiscard]] std::size_t n_nodes() const { return directions.size() * radii.size(); }
    [[nodiscard]] std::size_t n_count() const { return static_cast<std::size_t>(n_max) + 1; }
    [[nodiscard]] bool isotropic() const { return shape.directions == DirectionKind::isotropic; }

    [[nodiscard]] std::size_t index(std::size_t ir, std::size_t id, int n) const {
        return (ir * n_dirs() + id) * n_count() + static_cast<std::size_t>(n);
    }
    cplx& at(std::size_t ir, std::size_t id, int n) { return values[index(ir, id, n)]; }
    [[nodiscard]] const cplx& at(std::size_t ir, std::size_t id, int n) const { return values[index(ir, id, n)]; }

    [[nodiscard]] Vec3 lambda(std::size_t ir, std::size_t id) const { return radii[ir] * directions[id]; }
    /// Quadrature weight of node (ir, id) for dλ = ρ² dρ dω.
    [[nodiscard]] double node_weight(std::size_t ir, std::size_t id) const {
        return direction_weights[id] * radius_weights[ir] * radii[ir] * radii[ir];
    }

    /// Same nodes, values zeroed.
    [[nodiscard]] SpectralGrid like() const {
        SpectralGrid g = *this;
        std::fill(g.values.begin(), g.values.end(), cplx(0.0));
        return g;
    }

    void require_compatible(const SpectralGrid& o, const char* where) const {
        if (o.directions != directions || o.radii != radii || o.n_max != n_max)
            throw InputError(std::string(where) + ": spectral grids are incompatible");
    }
};

inline SpectralGrid make_grid(const GridShape& shape) {
    shape.validate();
    SpectralGrid g;
    g.shape = shape;
    g.n_max = shape.n_max;
    const double four_pi = 4.0 * std::numbers::pi;
    switch (shape.directions) {
        case DirectionKind::octahedral:
            g.directions = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
            g.direction_weights.assign(6, four_pi / 6.0);
            break;
        case DirectionKind::product: {
            const Rule1D ct = gauss_legendre(shape.n_polar);
            for (std::size_t a = 0; a < ct.size(); ++a) {
                const double s = std::sqrt(std::max(0.0, 1.0 - ct.x[a] * ct.x[a]));
                for (int k = 0; k < shape.n_azimuth; ++k) {
                    const double ph = 2.0 * std::numbers::pi * (k + 0.5) / shape.n_azimuth;
                    g.directions.push_back({s * std::cos(ph), s * std::sin(ph), ct.x[a]});
                    g.direction_weights.push_back(ct.w[a] * 2.0 * std::numbers::pi / shape.n_azimuth);
                }
            }
            break;
        }
        case DirectionKind::isotropic:
            g.directions = {{0, 0, 1}};
            g.direction_weights = {four_pi};
            break;
    }
    if (shape.radii == RadiusKind::log) {
        const int m = shape.n_radii;
        if (m == 1) {
            g.radii = {shape.r_lo};
            g.radius_weights = {shape.r_hi - shape.r_lo};
        } else {
            const double h = std::log(shape.r_hi / shape.r_lo) / (m - 1);
            for (int i = 0; i < m; ++i) {
                const double r = shape.r_lo * std::exp(h * i);
                g.radii.push_back(r);
                g.radius_weights.push_back(((i == 0 || i == m - 1) ? 0.5 : 1.0) * h * r);
            }
        }
    } else {
        const Rule1D r = gauss_legendre(shape.n_radii, shape.r_lo, shape.r_hi);
        g.radii = r.x;
        g.radius_weights = r.w;
    }
    for (double r : g.radii)
        if (!(r > 0.0)) throw InputError("grid: λ-node at the origin");
    g.values.assign(g.n_nodes() * g.n_count(), cplx(0.0));
    return g;
}

/// One-node grid at λ (unit weight) for pointwise spectral comparisons.
inline SpectralGrid make_node_grid(const Vec3& lambda, int n_max) {
    const double r = norm(lambda);
    if (!(r > 0.0)) throw InputError("grid: λ-node at the origin");
    GridShape s;
    s.directions = DirectionKind::product;
    s.n_polar = 1;
    s.n_azimuth = 1;
    s.r_lo = r;
    s.r_hi = 2.0 * r;
    s.n_radii = 1;
    s.n_max = n_max;
    SpectralGrid g = make_grid(s);
    g.directions = {(1.0 / r) * lambda};
    g.direction_weights = {1.0};
    g.radius_weights = {1.0};
    return g;
}

namespace detail {
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // fold -0 into 0
    return buf;
}
}  // namespace detail

/// CSV with columns lambda_x, lambda_y, lambda_z, n, re, im (round-trip exact, byte-stable).
inline void write_spectral_csv(std::ostream& os, const SpectralGrid& g) {
    os << "lambda_x,lambda_y,lambda_z,n,re,im\n";
    for (std::size_t ir = 0; ir < g.n_rad(); ++ir)
        for (std::size_t id = 0; id < g.n_dirs(); ++id) {
            const Vec3 l = g.lambda(ir, id);
            for (int n = 0; n <= g.n_max; ++n) {
                const cplx v = g.at(ir, id, n);
                os << detail::fmt_double(l[0]) << ',' << detail::fmt_double(l[1]) << ',' << detail::fmt_double(l[2])
                   << ',' << n << ',' << detail::fmt_double(v.real()) << ',' << detail::fmt_double(v.imag()) << '\n';
            }
        }
}

inline nlohmann::json grid_metadata(const SpectralGrid& g) {
    return nlohmann::json{{"shape", g.shape},
                          {"nodes", g.n_nodes()},
                          {"rows", g.n_nodes() * g.n_count()},
                          {"radii", g.radii},
                          {"n_max", g.n_max}};
}

}  // namespace qhsf
