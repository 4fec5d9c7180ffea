#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "ultrapar/hermitian.hpp"

// Standard parametrisation of an ultra-parallel [m1,m2,0] triangle of
// complex geodesics: normalised polar vectors
//
//   c1 = (sqrt(2) r2 e^{-i theta}, 1, 0),
//   c2 = (-sqrt(2) r1 e^{i theta}, 1, 0),
//   c3 = (1/sqrt(2), 0, 1/sqrt(2)),
//
// with r_j = cosh(m_j/2) >= 1 and theta = (pi - alpha)/2, where alpha in
// (0, 2 pi) is the angular invariant. The generators are the order-2
// complex reflections in the three polar geodesics.

namespace ultrapar {

struct TriangleParams {
    double r1 = 1.0;   ///< cosh(m1/2), r1 >= r2
    double r2 = 1.0;   ///< cosh(m2/2)
    double alpha = 0;  ///< angular invariant, radians, in (0, 2 pi)
    double theta = 0;  ///< (pi - alpha)/2
    bool swapped = false;  ///< inputs arrived with r1 < r2 and were exchanged

    double m1() const { return 2.0 * std::acosh(r1); }
    double m2() const { return 2.0 * std::acosh(r2); }

    static TriangleParams from_r(double r1, double r2, double alpha) {
        TriangleParams p;
        if (!(r1 >= 1.0))
            throw std::invalid_argument("TriangleParams: r1 must satisfy r1 >= 1, got " +
                                        std::to_string(r1));
        if (!(r2 >= 1.0))
            throw std::invalid_argument("TriangleParams: r2 must satisfy r2 >= 1, got " +
                                        std::to_string(r2));
        if (!(alpha > 0.0) || !(alpha < 2.0 * std::numbers::pi))
            throw std::invalid_argument(
                "TriangleParams: alpha must lie strictly inside (0, 2*pi), got " +
                std::to_string(alpha));
        p.r1 = r1;
        p.r2 = r2;
        if (p.r1 < p.r2) {
            std::swap(p.r1, p.r2);  // keep the r1 >= r2 normalisation
            p.swapped = true;
        }
        p.alpha = alpha;
        p.theta = (std::numbers::pi - alpha) / 2.0;
        return p;
    }

    static TriangleParams from_m(double m1, double m2, double alpha) {
        if (m1 < 0.0 || m2 < 0.0)
            throw std::invalid_argument("TriangleParams: distances m1, m2 must be >= 0");
        return from_r(std::cosh(m1 / 2.0), std::cosh(m2 / 2.0), alpha);
    }
};

/// Order-2 complex reflection fixing the geodesic polar to c:
/// z |-> -z + 2 <z,c>/<c,c> c. Determinant is exactly 1.
inline Isometry reflection_matrix(const HVector& c, const Tolerances& tol = {}) {
    if (classify_vector(c, tol) != VectorClass::positive)
        throw std::domain_error("reflection_matrix: polar vector must be positive");
    const double cc = herm(c, c).real();
    const cplx coords[3] = {c.z1, c.z2, c.z3};
    Isometry m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // row vector of <.,c> in coordinates is (conj c3, conj c2, conj c1)
            const cplx row_j = std::conj(coords[2 - j]);
            m.at(i, j) = (i == j ? -1.0 : 0.0) + (2.0 / cc) * coords[i] * row_j;
        }
    return m;
}

struct TriangleRep {
    TriangleParams params;
    HVector c1, c2, c3;  ///< normalised polar vectors
    Isometry i1, i2, i3; ///< the reflection generators

    const Isometry& generator(int k) const {
        switch (k) {
            case 1: return i1;
            case 2: return i2;
            case 3: return i3;
        }
        throw std::invalid_argument("TriangleRep::generator: index must be 1, 2 or 3");
    }
};

inline TriangleRep build_rep(const TriangleParams& p, const Tolerances& tol = {}) {
    const double s2 = std::numbers::sqrt2;
    const cplx eit = std::polar(1.0, p.theta);
    TriangleRep rep;
    rep.params = p;
    rep.c1 = {s2 * p.r2 * std::conj(eit), 1.0, 0.0};
    rep.c2 = {-s2 * p.r1 * eit, 1.0, 0.0};
    rep.c3 = {1.0 / s2, 0.0, 1.0 / s2};
    rep.i1 = reflection_matrix(rep.c1, tol);
    rep.i2 = reflection_matrix(rep.c2, tol);
    rep.i3 = reflection_matrix(rep.c3, tol);
    return rep;
}

inline TriangleRep build_rep(double r1, double r2, double alpha, const Tolerances& tol = {}) {
    return build_rep(TriangleParams::from_r(r1, r2, alpha), tol);
}

/// Existence of an [m1,m2,m3] triangle with angular invariant alpha:
/// cos(alpha) < (r1^2 + r2^2 + r3^2 - 1) / (2 r1 r2 r3), strictly.
inline bool existence_check(double r1, double r2, double r3, double alpha) {
    if (r1 < 1.0 || r2 < 1.0 || r3 < 1.0)
        throw std::invalid_argument("existence_check: each r must be >= 1");
    return std::cos(alpha) < (r1 * r1 + r2 * r2 + r3 * r3 - 1.0) / (2.0 * r1 * r2 * r3);
}

struct RepDiagnostics {
    struct Entry {
        std::string name;
        double residual;
        double tolerance;
    };
    std::vector<Entry> entries;
    double max_residual = 0.0;
    bool pass = true;

    void add(std::string name, double residual, double tolerance) {
        max_residual = std::max(max_residual, residual);
        if (residual > tolerance) pass = false;
        entries.push_back({std::move(name), residual, tolerance});
    }
};

/// Recompute every construction identity of a representation and report
/// the residuals: polar normalisation, the pairing magnitudes (r1, r2, 1),
/// the angular invariant, involutivity, determinants and form preservation.
inline RepDiagnostics verify_rep(const TriangleRep& rep, const Tolerances& tol = {}) {
    constexpr double pairing_tol = 1e-10;
    RepDiagnostics d;
    const double pi2 = 2.0 * std::numbers::pi;

    const HVector* cs[3] = {&rep.c1, &rep.c2, &rep.c3};
    for (int k = 0; k < 3; ++k)
        d.add("norm_c" + std::to_string(k + 1),
              std::abs(herm(*cs[k], *cs[k]) - cplx(1.0)), pairing_tol);

    const cplx h32 = herm(rep.c3, rep.c2);
    const cplx h13 = herm(rep.c1, rep.c3);
    const cplx h21 = herm(rep.c2, rep.c1);
    d.add("pairing_r1", std::abs(std::abs(h32) - rep.params.r1), pairing_tol);
    d.add("pairing_r2", std::abs(std::abs(h13) - rep.params.r2), pairing_tol);
    d.add("pairing_unit", std::abs(std::abs(h21) - 1.0), pairing_tol);

    double ang = std::arg(h32 * h13 * h21);
    double diff = std::fmod(ang - rep.params.alpha, pi2);
    if (diff > std::numbers::pi) diff -= pi2;
    if (diff < -std::numbers::pi) diff += pi2;
    d.add("angular_invariant", std::abs(diff), pairing_tol);

    const Isometry* is[3] = {&rep.i1, &rep.i2, &rep.i3};
    const Isometry id = Isometry::identity();
    for (int k = 0; k < 3; ++k) {
        const Isometry& m = *is[k];
        d.add("involution_i" + std::to_string(k + 1),
              (m * m).max_entry_distance(id), tol.form);
        d.add("det_i" + std::to_string(k + 1), std::abs(m.det() - cplx(1.0)), 1e-10);
        d.add("form_i" + std::to_string(k + 1), m.form_residual(), tol.form);
    }
    return d;
}

}  // namespace ultrapar
