#pragma once

#include "ultrapar/triangle.hpp"

// Boundary geometry in the Heisenberg model: the boundary of the complex
// hyperbolic plane is C x R plus a point at infinity, reached through the
// stereographic projection
//
//   [z1 : z2 : z3] |-> ( z2 / (z3 sqrt(2)), Im(z1/z3) ),   [z:0:0] |-> inf.
//
// This header supplies the Cygan metric, Heisenberg translations, chains
// (boundary circles of complex geodesics), isometric spheres, the unit
// spinal sphere, and the Shimizu-type non-discreteness certificate applied
// to g = I2*I1 (a Heisenberg translation) and h = I3.

namespace ultrapar {

struct HeisPoint {
    cplx zeta{};
    double v = 0.0;
    bool infinite = false;

    static HeisPoint finite(cplx zeta, double v) { return {zeta, v, false}; }
    static HeisPoint at_infinity() { return {cplx{}, 0.0, true}; }
};

/// Null vector projecting to p (the section used throughout this library).
inline HVector null_lift(const HeisPoint& p) {
    if (p.infinite) return {1.0, 0.0, 0.0};
    return {cplx(-std::norm(p.zeta), p.v), std::numbers::sqrt2 * p.zeta, 1.0};
}

inline HeisPoint stereo_project(const HVector& p, const Tolerances& tol = {}) {
    if (classify_vector(p, tol) != VectorClass::null)
        throw std::domain_error("stereo_project: vector must be null");
    const double n = std::sqrt(coord_norm_sq(p));
    if (std::abs(p.z3) <= 1e-12 * n) return HeisPoint::at_infinity();
    return HeisPoint::finite(p.z2 / (p.z3 * std::numbers::sqrt2), (p.z1 / p.z3).imag());
}

/// Boundary action of a form-preserving matrix.
inline HeisPoint boundary_action(const Isometry& m, const HeisPoint& p,
                                 const Tolerances& tol = {}) {
    return stereo_project(apply(m, null_lift(p)), tol);
}

/// Cygan metric on finite Heisenberg points:
/// rho0(p,q) = | |z1-z2|^2 - i(v1-v2) - 2 i Im(z1 conj(z2)) |^{1/2}.
inline double cygan_distance(const HeisPoint& p, const HeisPoint& q) {
    if (p.infinite || q.infinite)
        throw std::invalid_argument("cygan_distance: arguments must be finite");
    const cplx inner(std::norm(p.zeta - q.zeta),
                     -(p.v - q.v) - 2.0 * (p.zeta * std::conj(q.zeta)).imag());
    return std::sqrt(std::abs(inner));
}

/// Heisenberg translation by (tau, t) as an SU(2,1) matrix.
inline Isometry heis_translation(cplx tau, double t) {
    Isometry m = Isometry::identity();
    m.at(0, 1) = -std::numbers::sqrt2 * std::conj(tau);
    m.at(0, 2) = cplx(-std::norm(tau), t);
    m.at(1, 2) = std::numbers::sqrt2 * tau;
    return m;
}

/// The same translation acting directly on boundary coordinates:
/// (zeta, v) |-> (zeta + tau, v + t + 2 Im(tau conj(zeta))), matching the
/// matrix action on null lifts entrywise.
inline HeisPoint heis_translate(cplx tau, double t, const HeisPoint& p) {
    if (p.infinite) return p;
    return HeisPoint::finite(p.zeta + tau,
                             p.v + t + 2.0 * (tau * std::conj(p.zeta)).imag());
}

// ---------------------------------------------------------------- chains

struct Chain {
    enum class Kind { vertical, finite };
    Kind kind;
    cplx zeta0{};       ///< vertical: foot in C; finite: centre zeta
    double v0 = 0.0;    ///< finite: centre height
    double radius = 0;  ///< finite: radius of the projected circle

    static Chain vertical(cplx foot) { return {Kind::vertical, foot, 0.0, 0.0}; }
    static Chain finite(HeisPoint centre, double radius) {
        if (centre.infinite || radius <= 0.0)
            throw std::invalid_argument("Chain::finite: needs finite centre and radius > 0");
        return {Kind::finite, centre.zeta, centre.v, radius};
    }
};

inline HVector polar_of_chain(const Chain& ch) {
    if (ch.kind == Chain::Kind::vertical)
        return {-std::numbers::sqrt2 * std::conj(ch.zeta0), 1.0, 0.0};
    return {cplx(ch.radius * ch.radius - std::norm(ch.zeta0), ch.v0),
            std::numbers::sqrt2 * ch.zeta0, 1.0};
}

/// Recover the chain polar to a positive vector; vectors are rescaled to
/// the canonical representative (third coordinate 1 for finite chains,
/// second coordinate 1 for vertical ones).
inline Chain chain_from_polar(const HVector& c, const Tolerances& tol = {}) {
    if (classify_vector(c, tol) != VectorClass::positive)
        throw std::domain_error("chain_from_polar: polar vector must be positive");
    const double n = std::sqrt(coord_norm_sq(c));
    if (std::abs(c.z3) > 1e-12 * n) {
        const HVector w = scale_vec(c, 1.0 / c.z3);
        const cplx zeta0 = w.z2 / std::numbers::sqrt2;
        const double r2 = w.z1.real() + std::norm(zeta0);
        if (r2 <= 0.0)
            throw std::domain_error("chain_from_polar: no finite chain matches this vector");
        return Chain::finite(HeisPoint::finite(zeta0, w.z1.imag()), std::sqrt(r2));
    }
    if (std::abs(c.z2) > 1e-12 * n) {
        const HVector w = scale_vec(c, 1.0 / c.z2);
        return Chain::vertical(std::conj(-w.z1 / std::numbers::sqrt2));
    }
    throw std::domain_error("chain_from_polar: vector is polar to no chain form");
}

/// Inversion in the vertical chain over zeta sends the vertical chain over
/// xi to the one over 2 zeta - xi (a half-turn of the plane around zeta).
inline cplx vertical_inversion_action(cplx zeta, cplx xi) { return 2.0 * zeta - xi; }

/// Radius of the isometric sphere of h: r_h = 1/sqrt(|h_31|) (one-based
/// entry, i.e. at(2,0)). Defined only when h does not fix infinity.
inline double isometric_sphere_radius(const Isometry& h) {
    const double h31 = std::abs(h.at(2, 0));
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(h.at(i, j)));
    if (h31 <= 1e-12 * std::max(1.0, scale))
        throw std::domain_error("isometric_sphere_radius: element fixes infinity");
    return 1.0 / std::sqrt(h31);
}

/// Signed residual of the unit spinal sphere |zeta|^4 + v^2 = 1:
/// zero on the sphere, negative inside, positive outside.
inline double unit_spinal_residual(const HeisPoint& p) {
    if (p.infinite)
        throw std::invalid_argument("unit_spinal_residual: point must be finite");
    const double z2 = std::norm(p.zeta);
    return z2 * z2 + p.v * p.v - 1.0;
}

// ------------------------------------------------------- Shimizu's lemma

/// Data of the Shimizu inequality for g = I2*I1 (Heisenberg translation by
/// (xi, v)) against h = I3 (isometric sphere radius 1). Discreteness forces
///
///   1 <= sqrt(|xi|^4 + v^2) + 4 |xi|^2,
///
/// so the group is certified non-discrete when the right side drops below 1.
/// In terms of X = 64 r1 r2 sin^2(alpha/2) this reduces to X < d together
/// with X^2 - 2 b X + c > 0, split into two closed-form branches by the sign
/// of b^2 - c.
/// Coefficients of the reduced inequality X^2 - 2 b X + c > 0, X < d in
/// X = 64 r1 r2 sin^2(alpha/2), split by the sign of b^2 - c.
struct ShimizuCoefficients {
    double b = 0.0, c = 0.0, d = 0.0;
    double branch_disc = 0.0;  ///< b^2 - c, the quartic discriminant in r1, r2
    int case_tag = 0;          ///< 1 when b^2 - c >= 0, else 2
    double x_threshold = 0.0;  ///< certificate fires iff X < x_threshold
};

inline ShimizuCoefficients shimizu_coefficients(double r1, double r2) {
    const double P = (r1 - r2) * (r1 - r2);
    const double S = r1 * r1 + r2 * r2;
    ShimizuCoefficients co;
    co.d = 1.0 - 16.0 * P;
    co.b = co.d + S;
    co.c = co.d * co.d - 16.0 * P * P;
    co.branch_disc = co.b * co.b - co.c;
    if (co.branch_disc >= 0.0) {
        co.case_tag = 1;
        // the smaller quadratic root caps X; X < d is needed as well, which
        // is automatic once d > 0 but must be kept when d <= 0
        co.x_threshold = std::min(co.d, co.b - std::sqrt(co.branch_disc));
    } else {
        co.case_tag = 2;
        co.x_threshold = co.d;
    }
    return co;
}

struct ShimizuReport {
    cplx xi{};              ///< translation part, 2(r1 e^{-i theta} + r2 e^{i theta})
    double v = 0.0;         ///< vertical part as read off the I2*I1 matrix
    double lhs = 1.0;       ///< squared isometric sphere radius of I3
    double rhs = 0.0;       ///< sqrt(|xi|^4 + v^2) + 4|xi|^2, closed form
    double rhs_direct = 0.0;///< the same quantity from the matrix entries
    int case_tag = 0;       ///< 1: b^2 - c >= 0 branch, 2: b^2 - c < 0 branch
    double b_coef = 0.0, c_coef = 0.0, d_coef = 0.0;
    double branch_disc = 0.0;   ///< b^2 - c (the quartic discriminant in r1, r2)
    double x_value = 0.0;       ///< X = 64 r1 r2 sin^2(alpha/2)
    double x_threshold = 0.0;   ///< certificate fires iff X < x_threshold
    bool non_discrete = false;
    bool direct_agrees = false; ///< branch verdict equals the direct inequality
};

inline ShimizuReport shimizu_test(const TriangleParams& p, const Tolerances& tol = {}) {
    ShimizuReport rep;
    const double s = std::sin(p.alpha / 2.0);  // = cos(theta) >= 0 on (0, 2 pi)
    const double s2 = s * s;
    const double P = (p.r1 - p.r2) * (p.r1 - p.r2);

    const ShimizuCoefficients co = shimizu_coefficients(p.r1, p.r2);
    rep.x_value = 64.0 * p.r1 * p.r2 * s2;
    rep.b_coef = co.b;
    rep.c_coef = co.c;
    rep.d_coef = co.d;
    rep.branch_disc = co.branch_disc;
    rep.case_tag = co.case_tag;
    rep.x_threshold = co.x_threshold;
    rep.non_discrete = rep.x_value < rep.x_threshold;

    const cplx eit = std::polar(1.0, p.theta);
    rep.xi = 2.0 * (p.r1 * std::conj(eit) + p.r2 * eit);
    const double xi2 = 4.0 * P + 16.0 * p.r1 * p.r2 * s2;
    const double v_abs = 8.0 * p.r1 * p.r2 * std::abs(std::sin(2.0 * p.theta));
    rep.rhs = std::sqrt(xi2 * xi2 + v_abs * v_abs) + 4.0 * xi2;

    // direct route: read the translation off the product matrix
    const TriangleRep tri = build_rep(p, tol);
    const Isometry g = tri.i2 * tri.i1;
    const cplx xi_m = g.at(1, 2) / std::numbers::sqrt2;
    rep.v = g.at(0, 2).imag();
    const double xi2_m = std::norm(xi_m);
    rep.rhs_direct = std::sqrt(xi2_m * xi2_m + rep.v * rep.v) + 4.0 * xi2_m;
    rep.direct_agrees = (rep.rhs_direct < rep.lhs) == rep.non_discrete;
    return rep;
}

}  // namespace ultrapar
