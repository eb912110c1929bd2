#pragma once

/**
 * @file fock.hpp
 * @brief The representation π_λ on a Gaussian-weighted function space over R⁴,
 *        its exponent-constant calibration and the group Fourier transform
 *        f̂(λ) = ∫ f(u,t) π_λ(u,t) du dt as a matrix in a truncated orthonormal basis.
 *
 * π_λ(u,t)f(q) = e^{i⟨λ,t⟩} e^{-|λ|(c1|u|² + c2⟨q,u⟩ - i c3⟨q·λ̂,u⟩)} f(q+u), default (c1,c2,c3) = (1,2,2).
 * Inner product: dμ_λ(q) = (2|λ|/π)² e^{-2|λ||q|²} dq, so ‖1‖ = 1. The basis is the tensor
 * product of 1-D orthonormal Hermite polynomials (variance 1/(4|λ|) per coordinate) of total
 * degree ≤ D, which is Gram–Schmidt on monomials ordered by degree.
 */

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/gauss.hpp"
#include "qhsf/group.hpp"
#include "qhsf/parallel.hpp"
#include "qhsf/quadrature.hpp"
#include "qhsf/radial_function.hpp"
#include "qhsf/rng.hpp"

namespace qhsf {

using FockFunction = std::function<cplx(const Quaternion&)>;

struct RepCoefficients {
    double c1 = 1.0;  // |u|²
    double c2 = 2.0;  // ⟨q, u⟩
    double c3 = 2.0;  // ⟨q·λ̂, u⟩

    bool operator==(const RepCoefficients&) const = default;
};

namespace detail {
inline void require_lambda(const Vec3& lambda, const char* where) {
    if (!(norm(lambda) > 0.0)) throw InputError(std::string(where) + ": lambda must be nonzero");
}
inline Quaternion unit_pure(const Vec3& lambda) { return (1.0 / norm(lambda)) * Quaternion::pure(lambda); }
}  // namespace detail

inline FockFunction pi_apply(const Vec3& lambda, const GroupPoint& g, FockFunction f, RepCoefficients c = {}) {
    detail::require_lambda(lambda, "pi_apply");
    if (g.q() != 1) throw InputError("pi_apply: only q = 1 is supported");
    const double rho = norm(lambda);
    const Quaternion lh = detail::unit_pure(lambda);
    const Quaternion u = g.u[0];
    const double phase = dot(lambda, g.t);
    return [=, f = std::move(f)](const Quaternion& q) {
        const cplx ex(c.c1 * norm2(u) + c.c2 * dot(q, u), -c.c3 * dot(q * lh, u));
        return std::exp(cplx(0.0, phase) - rho * ex) * f(q + u);
    };
}

/// Relative residual max|π(g1)π(g2)f − π(g1 g2)f| / max|π(g1 g2)f| over seeded samples.
inline double homomorphism_residual(const Vec3& lambda, RepCoefficients c, std::uint64_t seed = 0, int pairs = 8,
                                    int qpoints = 16) {
    detail::require_lambda(lambda, "homomorphism_residual");
    const FockFunction f = [](const Quaternion& q) {
        return cplx(1.0 + 0.5 * q.w - 0.3 * q.y * q.z, 0.25 * q.x);
    };
    Rng rng(seed);
    double num = 0.0, den = 0.0;
    for (int p = 0; p < pairs; ++p) {
        const GroupPoint g1 = rng.point(0.7), g2 = rng.point(0.7);
        const FockFunction lhs = pi_apply(lambda, g1, pi_apply(lambda, g2, f, c), c);
        const FockFunction rhs = pi_apply(lambda, hq_mul(g1, g2), f, c);
        for (int k = 0; k < qpoints; ++k) {
            const Quaternion q = rng.quaternion();
            const cplx b = rhs(q);
            num = std::max(num, std::abs(lhs(q) - b));
            den = std::max(den, std::abs(b));
        }
    }
    return den > 0.0 ? num / den : num;
}

struct RepCandidate {
    RepCoefficients coefficients;
    double residual = 0.0;
};

struct RepCalibration {
    Vec3 lambda{};
    RepCoefficients best;
    double best_residual = 0.0;
    double canonical_residual = 0.0;
    bool canonical_default = false;  // true when the tie-break selected (1,2,2)
    std::vector<RepCandidate> table;
};

/**
 * Grid search over c_i ∈ {1/4, 1/2, 1, 2}. Candidates within 10× of the minimum (plus
 * 1e-12 absolute) are ties; a tie including the canonical triple (1,2,2) resolves to it.
 */
inline RepCalibration calibrate_rep(const Vec3& lambda, std::uint64_t seed = 0) {
    detail::require_lambda(lambda, "calibrate_rep");
    static constexpr std::array<double, 4> grid{0.25, 0.5, 1.0, 2.0};
    RepCalibration out;
    out.lambda = lambda;
    for (double a : grid)
        for (double b : grid)
            for (double c : grid) {
                const RepCoefficients rc{a, b, c};
                out.table.push_back({rc, homomorphism_residual(lambda, rc, seed)});
            }
    const RepCoefficients canonical{};
    std::size_t arg = 0;
    for (std::size_t i = 0; i < out.table.size(); ++i) {
        if (out.table[i].residual < out.table[arg].residual) arg = i;
        if (out.table[i].coefficients == canonical) out.canonical_residual = out.table[i].residual;
    }
    const double tie = 10.0 * out.table[arg].residual + 1e-12;
    if (out.canonical_residual <= tie) {
        out.best = canonical;
        out.best_residual = out.canonical_residual;
        out.canonical_default = true;
    } else {
        out.best = out.table[arg].coefficients;
        out.best_residual = out.table[arg].residual;
    }
    return out;
}

inline void to_json(nlohmann::json& j, const RepCoefficients& c) { j = nlohmann::json::array({c.c1, c.c2, c.c3}); }

inline void to_json(nlohmann::json& j, const RepCalibration& r) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& e : r.table) table.push_back({{"coefficients", e.coefficients}, {"residual", e.residual}});
    j = nlohmann::json{{"lambda", r.lambda},
                       {"best", r.best},
                       {"best_residual", r.best_residual},
                       {"canonical_residual", r.canonical_residual},
                       {"canonical_default", r.canonical_default},
                       {"table", table}};
}

/// Orthonormal basis of total degree ≤ D: e_i(q) = Π_d h_{k_d}(q_d).
struct FockBasis {
    Vec3 lambda{};
    int D = 0;
    double sigma = 0.0;  // per-coordinate standard deviation of μ_λ
    std::vector<std::array<int, 4>> index;

    [[nodiscard]] std::size_t size() const { return index.size(); }

    /// Orthonormal 1-D polynomials h_0..h_D at (possibly complex) x.
    template <class T>
    void hermite_all(const T& x, T* out) const {
        const T z = x / sigma;
        out[0] = T(1.0);
        if (D >= 1) out[1] = z;
        for (int k = 1; k < D; ++k) out[k + 1] = z * out[k] - double(k) * out[k - 1];
        double fact = 1.0;
        for (int k = 1; k <= D; ++k) {
            fact *= k;
            out[k] /= std::sqrt(fact);
        }
    }

    [[nodiscard]] cplx eval(std::size_t i, const Quaternion& q) const {
        std::vector<double> h(static_cast<std::size_t>(D) + 1);
        const std::array<double, 4> c{q.w, q.x, q.y, q.z};
        double v = 1.0;
        for (int d = 0; d < 4; ++d) {
            hermite_all(c[d], h.data());
            v *= h[static_cast<std::size_t>(index[i][d])];
        }
        return v;
    }
};

inline FockBasis fock_basis(const Vec3& lambda, int D) {
    detail::require_lambda(lambda, "fock_basis");
    if (D < 1) throw InputError("fock_basis: truncation degree D must be >= 1");
    FockBasis b;
    b.lambda = lambda;
    b.D = D;
    b.sigma = 0.5 / std::sqrt(norm(lambda));
    for (int deg = 0; deg <= D; ++deg)
        for (int a = deg; a >= 0; --a)
            for (int bb = deg - a; bb >= 0; --bb)
                for (int c = deg - a - bb; c >= 0; --c) b.index.push_back({a, bb, c, deg - a - bb - c});
    return b;
}

/// Fock-space norm ∫|f|² dμ_λ by Gauss–Hermite product quadrature (nodes per axis).
inline double fock_norm2(const Vec3& lambda, const FockFunction& f, int nodes = 12) {
    detail::require_lambda(lambda, "fock_norm2");
    const Rule1D r = gauss_hermite(nodes);
    const double s = 1.0 / std::sqrt(2.0 * norm(lambda));  // e^{-2|λ|x²} = e^{-(x/s)²}
    const double c = 1.0 / std::sqrt(std::numbers::pi);
    double acc = 0.0;
    for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = 0; b < r.size(); ++b)
            for (std::size_t d = 0; d < r.size(); ++d)
                for (std::size_t e = 0; e < r.size(); ++e) {
                    const Quaternion q{s * r.x[a], s * r.x[b], s * r.x[d], s * r.x[e]};
                    acc += c * c * c * c * r.w[a] * r.w[b] * r.w[d] * r.w[e] * std::norm(f(q));
                }
    return acc;
}

/// Per-coordinate factors of ⟨π_λ(u,0) e_i, e_j⟩ = e^{-|λ||u|²} Π_d E_d[i_d][j_d].
struct PiFactors {
    double prefactor = 1.0;
    std::array<Eigen::MatrixXcd, 4> E;
};

inline PiFactors pi_factors(const FockBasis& basis, const Quaternion& u) {
    const double rho = norm(basis.lambda);
    const Quaternion Ju = -(u * detail::unit_pure(basis.lambda));
    const std::array<double, 4> uu{u.w, u.x, u.y, u.z}, jj{Ju.w, Ju.x, Ju.y, Ju.z};
    // Contour shift: E_s[h_i(s + u/2 + iJu/2) h_j(s - u/2 + iJu/2)], s ~ N(0, σ²), exact with D+1 nodes.
    const Rule1D gh = gauss_hermite(basis.D + 1);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    const auto K = static_cast<std::size_t>(basis.D) + 1;
    PiFactors out;
    out.prefactor = std::exp(-rho * norm2(u));
    std::vector<cplx> hp(K), hm(K);
    for (int d = 0; d < 4; ++d) {
        Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
        for (std::size_t k = 0; k < gh.size(); ++k) {
            const double s = std::sqrt(2.0) * basis.sigma * gh.x[k];
            basis.hermite_all(cplx(s + 0.5 * uu[d], 0.5 * jj[d]), hp.data());
            basis.hermite_all(cplx(s - 0.5 * uu[d], 0.5 * jj[d]), hm.data());
            const double w = gh.w[k] * inv_sqrt_pi;
            for (std::size_t i = 0; i < K; ++i)
                for (std::size_t j = 0; j < K; ++j)
                    E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += w * hp[i] * hm[j];
        }
        out.E[static_cast<std::size_t>(d)] = E;
    }
    return out;
}

/// Matrix A_{ji} = ⟨π_λ(g) e_i, e_j⟩ in the truncated basis.
inline Eigen::MatrixXcd pi_matrix(const FockBasis& basis, const GroupPoint& g) {
    if (g.q() != 1) throw InputError("pi_matrix: only q = 1 is supported");
    const PiFactors pf = pi_factors(basis, g.u[0]);
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd A(n, n);
    const cplx ph = std::polar(pf.prefactor, dot(basis.lambda, g.t));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& a = basis.index[static_cast<std::size_t>(i)];
            const auto& b = basis.index[static_cast<std::size_t>(j)];
            cplx v = ph;
            for (int d = 0; d < 4; ++d) v *= pf.E[static_cast<std::size_t>(d)](a[d], b[d]);
            A(j, i) = v;
        }
    return A;
}

struct OperatorMatrix {
    Vec3 lambda{};
    int D = 0;
    Eigen::MatrixXcd M;
    double l1_norm_estimate = 0.0;  // ∫|f| on the same nodes that produced M

    [[nodiscard]] double op_norm() const {
        if (M.size() == 0) return 0.0;
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
        return svd.singularValues()(0);
    }
    [[nodiscard]] double hs_norm() const { return M.norm(); }
};

inline void to_json(nlohmann::json& j, const OperatorMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.M.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.M.cols(); ++c) row.push_back({m.M(r, c).real(), m.M(r, c).imag()});
        rows.push_back(row);
    }
    j = nlohmann::json{{"lambda", m.lambda}, {"D", m.D}, {"op_norm", m.op_norm()}, {"hs_norm", m.hs_norm()},
                       {"l1_norm_estimate", m.l1_norm_estimate}, {"matrix", rows}};
}

/**
 * f̂(λ) = ∫ f(u,t) π_λ(u,t) du dt. u: Gauss–Hermite product (fock_u_nodes per axis) at rate
 * |λ| + env.alpha_rate; t: Gauss–Hermite product (fock_t_nodes per axis) at rate env.t_rate.
 * The matrix elements of π_λ are exact, so ‖f̂(λ)‖ is bounded by the quadrature ∫|f|.
 */
inline OperatorMatrix group_fourier_matrix(const GroupFunction& f, const Vec3& lambda, int D,
                                           const QuadratureSpec& spec, Envelope env = {}) {
    detail::require_lambda(lambda, "group_fourier_matrix");
    const FockBasis basis = fock_basis(lambda, D);
    const Rule1D ur = hermite_plain(spec.config.fock_u_nodes, norm(lambda) + env.alpha_rate);
    const Rule1D tr = hermite_plain(spec.config.fock_t_nodes, env.t_rate);

    // Split the basis index into (d0,d1) and (d2,d3) pairs: M_{ji} = P01[p(i),p(j)]·P23[p'(i),p'(j)].
    std::vector<std::array<int, 2>> pairs;
    for (int a = 0; a <= D; ++a)
        for (int b = 0; a + b <= D; ++b) pairs.push_back({a, b});
    auto pair_id = [&](int a, int b) {
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (pairs[k][0] == a && pairs[k][1] == b) return static_cast<Eigen::Index>(k);
        return Eigen::Index(-1);
    };
    const std::size_t nb = basis.size();
    std::vector<Eigen::Index> p01(nb), p23(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        p01[i] = pair_id(basis.index[i][0], basis.index[i][1]);
        p23[i] = pair_id(basis.index[i][2], basis.index[i][3]);
    }
    const auto np = static_cast<Eigen::Index>(pairs.size());
    auto pair_product = [&](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
        Eigen::MatrixXcd P(np, np);
        for (Eigen::Index i = 0; i < np; ++i)
            for (Eigen::Index j = 0; j < np; ++j) {
                const auto& a = pairs[static_cast<std::size_t>(i)];
                const auto& b = pairs[static_cast<std::size_t>(j)];
                P(i, j) = A(a[0], b[0]) * B(a[1], b[1]);
            }
        return P;
    };

    const std::size_t n1 = ur.size(), nu = n1 * n1 * n1 * n1;
    constexpr std::size_t chunks = 16;  // fixed partition keeps the reduction order thread-independent
    std::vector<Eigen::MatrixXcd> acc(chunks, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nb),
                                                                     static_cast<Eigen::Index>(nb)));
    std::vector<double> l1(chunks, 0.0);
    parallel_for(chunks, [&](std::size_t ch) {
        for (std::size_t iu = ch; iu < nu; iu += chunks) {
            const std::size_t i0 = iu / (n1 * n1 * n1), i1 = (iu / (n1 * n1)) % n1, i2 = (iu / n1) % n1, i3 = iu % n1;
            const Quaternion u{ur.x[i0], ur.x[i1], ur.x[i2], ur.x[i3]};
            const double wu = ur.w[i0] * ur.w[i1] * ur.w[i2] * ur.w[i3];
            cplx ft = 0.0;
            double at = 0.0;
            GroupPoint p(u, Vec3{});
            for (std::size_t a = 0; a < tr.size(); ++a)
                for (std::size_t b = 0; b < tr.size(); ++b)
                    for (std::size_t c = 0; c < tr.size(); ++c) {
                        p.t = {tr.x[a], tr.x[b], tr.x[c]};
                        const double wt = tr.w[a] * tr.w[b] * tr.w[c];
                        const cplx v = f(p);
                        detail::check_finite(v, p, "group_fourier_matrix");
                        ft += wt * v * std::polar(1.0, dot(lambda, p.t));
                        at += wt * std::abs(v);
                    }
            l1[ch] += wu * at;
            if (ft == cplx(0.0)) continue;
            const PiFactors pf = pi_factors(basis, u);
            const Eigen::MatrixXcd P01 = (wu * pf.prefactor * ft) * pair_product(pf.E[0], pf.E[1]);
            const Eigen::MatrixXcd P23 = pair_product(pf.E[2], pf.E[3]);
            Eigen::MatrixXcd& A = acc[ch];
            for (std::size_t i = 0; i < nb; ++i)
                for (std::size_t j = 0; j < nb; ++j)
                    A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += P01(p01[i], p01[j]) * P23(p23[i], p23[j]);
        }
    });
    OperatorMatrix out;
    out.lambda = lambda;
    out.D = D;
    out.M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
    for (std::size_t ch = 0; ch < chunks; ++ch) {
        out.M += acc[ch];
        out.l1_norm_estimate += l1[ch];
    }
    return out;
}

}  // namespace qhsf
