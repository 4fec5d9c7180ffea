#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

// Linear algebra over C^{2,1}: the vector space C^3 carrying the
// signature-(2,1) Hermitian form
//
//     <z,w> = z1*conj(w3) + z2*conj(w2) + z3*conj(w1),
//
// together with form-preserving 3x3 matrices (SU(2,1) representatives)
// and the trace-based classification of isometries of the complex
// hyperbolic plane.

namespace ultrapar {

using cplx = std::complex<double>;

/// Global numerical tolerances. All classification bands are reported,
/// never silently resolved; callers may tighten or loosen per call.
struct Tolerances {
    double sig     = 1e-10;  ///< relative band for vector sign classification
    double deltoid = 1e-9;   ///< relative band around the deltoid curve
    double star    = 1e-12;  ///< absolute slack on criterion inequalities
    double form    = 1e-9;   ///< max residual for Hermitian form preservation
};

/// A vector of C^{2,1} in homogeneous coordinates.
struct HVector {
    cplx z1{}, z2{}, z3{};
};

/// The signature-(2,1) Hermitian pairing. Antilinear in the second slot.
inline cplx herm(const HVector& z, const HVector& w) {
    return z.z1 * std::conj(w.z3) + z.z2 * std::conj(w.z2) + z.z3 * std::conj(w.z1);
}

/// Squared Euclidean norm of the coordinate triple (scale gauge for tolerances).
inline double coord_norm_sq(const HVector& z) {
    return std::norm(z.z1) + std::norm(z.z2) + std::norm(z.z3);
}

inline HVector scale_vec(const HVector& z, cplx lambda) {
    return {lambda * z.z1, lambda * z.z2, lambda * z.z3};
}

/// True when z and w agree up to a nonzero complex scalar.
inline bool projectively_equal(const HVector& z, const HVector& w, double eps = 1e-9) {
    // cross-ratio style test: z_i * w_j - z_j * w_i all vanish
    const cplx a = z.z1 * w.z2 - z.z2 * w.z1;
    const cplx b = z.z1 * w.z3 - z.z3 * w.z1;
    const cplx c = z.z2 * w.z3 - z.z3 * w.z2;
    const double scale2 = std::sqrt(coord_norm_sq(z) * coord_norm_sq(w));
    return std::abs(a) + std::abs(b) + std::abs(c) <= eps * std::max(1.0, scale2);
}

enum class VectorClass { negative, null, positive };

/// Sign of <z,z> with a relative dead band of tol.sig around zero.
inline VectorClass classify_vector(const HVector& z, const Tolerances& tol = {}) {
    const double n2 = coord_norm_sq(z);
    if (n2 == 0.0)
        throw std::invalid_argument("classify_vector: zero vector has no class");
    const double h = herm(z, z).real();
    const double band = tol.sig * n2;
    if (h < -band) return VectorClass::negative;
    if (h > band) return VectorClass::positive;
    return VectorClass::null;
}

/// A 3x3 complex matrix acting on C^{2,1}. Entries row-major; (r,c) are
/// zero-based, so the classical one-based entry h_31 lives at(2,0).
class Isometry {
  public:
    Isometry() = default;

    static Isometry identity() {
        Isometry m;
        m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = 1.0;
        return m;
    }

    cplx& at(int r, int c) { return e_[static_cast<std::size_t>(3 * r + c)]; }
    cplx at(int r, int c) const { return e_[static_cast<std::size_t>(3 * r + c)]; }

    cplx trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }

    cplx det() const {
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
             - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
             + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }

    /// Inverse through form-unitarity: M^{-1} = J M^dagger J with J the
    /// anti-diagonal Gram matrix of the form. Exact for form-preserving M.
    Isometry inverse() const {
        Isometry r;
        // (J M^dagger J)_{ij} = conj(M_{(2-j)(2-i)})
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.at(i, j) = std::conj(at(2 - j, 2 - i));
        return r;
    }

    /// max |(M^dagger J M - J)_{ij}| ; zero for exact elements of U(2,1).
    double form_residual() const {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                // (M^dagger J M)_{ij} = sum_k conj(M_{ki}) M_{(2-k)j}
                cplx s = 0.0;
                for (int k = 0; k < 3; ++k) s += std::conj(at(k, i)) * at(2 - k, j);
                const cplx target = (i + j == 2) ? cplx(1.0) : cplx(0.0);
                worst = std::max(worst, std::abs(s - target));
            }
        }
        return worst;
    }

    double max_entry_distance(const Isometry& other) const {
        double worst = 0.0;
        for (int i = 0; i < 9; ++i)
            worst = std::max(worst, std::abs(e_[static_cast<std::size_t>(i)] -
                                             other.e_[static_cast<std::size_t>(i)]));
        return worst;
    }

    friend Isometry operator*(const Isometry& a, const Isometry& b) {
        Isometry r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < 3; ++k) s += a.at(i, k) * b.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

  private:
    std::array<cplx, 9> e_{};
};

inline Isometry compose(const Isometry& a, const Isometry& b) { return a * b; }

inline HVector apply(const Isometry& m, const HVector& z) {
    return {m.at(0, 0) * z.z1 + m.at(0, 1) * z.z2 + m.at(0, 2) * z.z3,
            m.at(1, 0) * z.z1 + m.at(1, 1) * z.z2 + m.at(1, 2) * z.z3,
            m.at(2, 0) * z.z1 + m.at(2, 1) * z.z2 + m.at(2, 2) * z.z3};
}

inline cplx trace(const Isometry& m) { return m.trace(); }

inline Isometry matrix_power(Isometry base, long long n) {
    if (n < 0) {
        base = base.inverse();
        n = -n;
    }
    Isometry acc = Isometry::identity();
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

/// Discriminant of the deltoid curve in the trace plane:
/// |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27. Negative inside, positive outside.
inline double deltoid_discriminant(cplx z) {
    const double n = std::norm(z);  // |z|^2
    return n * n - 8.0 * (z * z * z).real() + 18.0 * n - 27.0;
}

struct IsometryClass {
    enum class Tag { regular_elliptic, loxodromic, boundary };
    Tag tag;
    double discriminant;
};

/// Trace classification of an SU(2,1) element. Traces inside the deltoid
/// are regular elliptic, outside loxodromic; a relative band around the
/// curve is reported as boundary and left to the caller to interpret.
inline IsometryClass classify_isometry(const Isometry& m, const Tolerances& tol = {}) {
    const cplx t = m.trace();
    const double disc = deltoid_discriminant(t);
    const double scale4 = std::max(1.0, std::norm(t) * std::norm(t));  // |t|^4
    const double band = tol.deltoid * scale4;
    using Tag = IsometryClass::Tag;
    if (disc < -band) return {Tag::regular_elliptic, disc};
    if (disc > band) return {Tag::loxodromic, disc};
    return {Tag::boundary, disc};
}

/// Distance in the complex hyperbolic plane between the projective points
/// of two negative vectors:  cosh^2(d/2) = <p,q><q,p> / (<p,p><q,q>).
inline double bergman_distance(const HVector& p, const HVector& q, const Tolerances& tol = {}) {
    if (classify_vector(p, tol) != VectorClass::negative ||
        classify_vector(q, tol) != VectorClass::negative)
        throw std::domain_error("bergman_distance: arguments must be negative vectors");
    const cplx pq = herm(p, q);
    const double ratio = (pq * std::conj(pq)).real() /
                         (herm(p, p).real() * herm(q, q).real());
    const double c = std::sqrt(std::max(ratio, 1.0));
    return 2.0 * std::acosh(c);
}

}  // namespace ultrapar
