#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "ultrapar/triangle.hpp"

// Words in the abstract group generated by three involutions, their matrix
// evaluation in a triangle representation, the planar half-turn group
// generated by the rotations J1, J2 (the action of <I1, I2> on vertical
// chains), and a bounded search for regular elliptic elements with no
// detectable finite order -- the numerical witnesses of non-discreteness.

namespace ultrapar {

struct Word {
    std::vector<int> letters;  ///< generator indices, each in {1,2,3}

    bool operator==(const Word& o) const { return letters == o.letters; }
};

inline void validate_letters(const Word& w) {
    for (int l : w.letters)
        if (l < 1 || l > 3)
            throw std::invalid_argument("Word: letters must be 1, 2 or 3");
}

/// Free-product normal form: each generator is its own inverse, so adjacent
/// equal letters cancel. One stack pass reaches the reduced word.
inline Word reduce(const Word& w) {
    validate_letters(w);
    Word out;
    for (int l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

inline Word concat(const Word& u, const Word& v) {
    Word out = u;
    out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
    return out;
}

inline Isometry evaluate(const Word& w, const TriangleRep& rep) {
    validate_letters(w);
    Isometry m = Isometry::identity();
    for (int l : w.letters) m = m * rep.generator(l);
    return m;
}

/// w_A^(ell) = I1 (I2 I1)^ell I3, reduced. Negative ell expands through the
/// inverse letters, which coincide with the letters themselves.
inline Word word_wA(long long ell) {
    Word w;
    w.letters.push_back(1);
    if (ell >= 0) {
        for (long long i = 0; i < ell; ++i) {
            w.letters.push_back(2);
            w.letters.push_back(1);
        }
    } else {
        for (long long i = 0; i < -ell; ++i) {
            w.letters.push_back(1);
            w.letters.push_back(2);
        }
    }
    w.letters.push_back(3);
    return reduce(w);
}

inline Word word_wB() { return Word{{1, 2, 3}}; }

// ------------------------------------------------------ the planar group

/// Elements of the group generated by the half-turns J1, J2 of the plane,
/// written as alternating products: (J2 J1)^ell or J1 (J2 J1)^ell.
struct LambdaElement {
    enum class Form { translation, with_j1 };
    Form form;
    long long ell;
};

/// Orbit of the origin in closed form:
///   (J2 J1)^ell (0)    = -2 ell (r2 e^{i theta} + r1 e^{-i theta}),
///   J1 (J2 J1)^ell (0) = 2 r2 e^{i theta} + 2 ell (r2 e^{i theta} + r1 e^{-i theta}).
inline cplx lambda_orbit_point(const LambdaElement& e, double r1, double r2, double theta) {
    const cplx eit = std::polar(1.0, theta);
    const cplx step = r2 * eit + r1 * std::conj(eit);
    if (e.form == LambdaElement::Form::translation)
        return -2.0 * static_cast<double>(e.ell) * step;
    return 2.0 * r2 * eit + 2.0 * static_cast<double>(e.ell) * step;
}

inline double lambda_orbit_norm(const LambdaElement& e, double r1, double r2, double theta) {
    return std::abs(lambda_orbit_point(e, r1, r2, theta));
}

/// Brute-force check that every nontrivial element of the half-turn group
/// moves the origin by at least 2, over |ell| <= window. The orbit is built
/// by iterating the actual point reflections z |-> 2p - z, independently of
/// any closed form.
inline bool lambda_condition_check(double r1, double r2, double alpha, long long window) {
    if (window < 1)
        throw std::invalid_argument("lambda_condition_check: window must be >= 1");
    const double theta = (std::numbers::pi - alpha) / 2.0;
    const cplx p1 = r2 * std::polar(1.0, theta);    // centre of J1
    const cplx p2 = -r1 * std::polar(1.0, -theta);  // centre of J2
    const auto j1 = [&](cplx z) { return 2.0 * p1 - z; };
    const auto j2 = [&](cplx z) { return 2.0 * p2 - z; };

    // J1 itself (ell = 0 of the odd family)
    if (std::abs(j1(cplx{})) < 2.0) return false;
    cplx fwd{};  // (J2 J1)^ell (0) for ell = 0, 1, 2, ...
    cplx bwd{};  // ... and ell = 0, -1, -2, ...
    for (long long ell = 1; ell <= window; ++ell) {
        fwd = j2(j1(fwd));
        bwd = j1(j2(bwd));
        if (std::abs(fwd) < 2.0 || std::abs(bwd) < 2.0) return false;
        if (std::abs(j1(fwd)) < 2.0 || std::abs(j1(bwd)) < 2.0) return false;
    }
    return true;
}

// ------------------------------------------------- ellipticity witnesses

/// Eigenvalues of a form-preserving matrix with det 1: the characteristic
/// polynomial is x^3 - tau x^2 + conj(tau) x - 1. Solved in closed form and
/// polished with Newton steps.
inline std::array<cplx, 3> su21_eigenvalues(const Isometry& m) {
    const cplx a = -m.trace();
    const cplx b = std::conj(m.trace());
    const cplx c = cplx(-1.0);
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    std::array<cplx, 3> roots;
    const cplx disc = q * q / 4.0 + p * p * p / 27.0;
    cplx u = std::pow(-q / 2.0 + std::sqrt(disc), 1.0 / 3.0);
    if (std::abs(u) < 1e-30) u = std::pow(-q, cplx(1.0 / 3.0));
    const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
        cplx t = (std::abs(u) < 1e-30) ? cplx{} : u - p / (3.0 * u);
        roots[static_cast<std::size_t>(k)] = t - a / 3.0;
        u *= omega;
    }
    for (auto& r : roots)
        for (int it = 0; it < 4; ++it) {
            const cplx f = ((r + a) * r + b) * r + c;
            const cplx fp = (3.0 * r + 2.0 * a) * r + b;
            if (std::abs(fp) < 1e-30) break;
            r -= f / fp;
        }
    return roots;
}

struct FiniteOrderScan {
    std::optional<int> order;     ///< smallest confirmed n with m^n = id
    long long best_power = 0;     ///< n minimising the rotation-angle residue
    double best_angle_dev = 0.0;  ///< that minimal residue (radians)
    bool used_fallback = false;
};

/// Look for n <= max_order with m^n equal to the identity within tol (max
/// entry deviation). Candidate orders come from the eigenvalue rotation
/// angles and are confirmed by an actual matrix power; if the eigenvalues
/// are numerically unreliable the scan falls back to iterated products.
inline FiniteOrderScan detect_finite_order(const Isometry& m, int max_order, double tol) {
    if (max_order < 2)
        throw std::invalid_argument("detect_finite_order: max_order must be >= 2");
    FiniteOrderScan out;
    out.best_angle_dev = std::numeric_limits<double>::infinity();

    const auto eig = su21_eigenvalues(m);
    bool stable = true;
    for (const auto& l : eig)
        if (std::abs(std::abs(l) - 1.0) > 1e-6) stable = false;

    if (stable) {
        const double twopi = 2.0 * std::numbers::pi;
        const std::array<double, 3> ang = {std::arg(eig[0]), std::arg(eig[1]),
                                           std::arg(eig[2])};
        for (int n = 1; n <= max_order; ++n) {
            double dev = 0.0;
            for (double beta : ang)
                dev = std::max(dev, std::abs(std::remainder(n * beta, twopi)));
            if (dev < out.best_angle_dev) {
                out.best_angle_dev = dev;
                out.best_power = n;
            }
            if (dev < 1e-4) {
                if (matrix_power(m, n).max_entry_distance(Isometry::identity()) < tol) {
                    out.order = n;
                    return out;
                }
            }
        }
        return out;
    }

    out.used_fallback = true;
    Isometry acc = Isometry::identity();
    for (int n = 1; n <= max_order; ++n) {
        acc = acc * m;
        const double dev = acc.max_entry_distance(Isometry::identity());
        if (dev < out.best_angle_dev) {
            out.best_angle_dev = dev;
            out.best_power = n;
        }
        if (dev < tol) {
            out.order = n;
            return out;
        }
    }
    return out;
}

struct EllipticWitness {
    Word word;
    cplx trace;
    double discriminant = 0.0;           ///< deltoid discriminant, < 0
    int min_order_tested = 0;
    std::optional<int> finite_order;     ///< absent for emitted witnesses
    long long best_power = 0;            ///< closest-to-identity power found
    double best_angle_dev = 0.0;         ///< its rotation-angle residue
    double noise_floor = 0.0;            ///< residues below this prove nothing
};

/// Outcome of screening one matrix word as a non-discreteness witness.
struct WitnessCheck {
    std::optional<EllipticWitness> witness;
    std::optional<int> finite_order;
    bool near_deltoid = false;   ///< trace too close to the curve at this scale
    bool noise_limited = false;  ///< a power came back within numerical noise
};

inline double max_entry_magnitude(const Isometry& m) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s = std::max(s, std::abs(m.at(i, j)));
    return s;
}

/// Screen a word for soundness before reporting it. Long products accumulate
/// error proportional to their entry scale; the trace of a word conjugate to
/// a generator is exactly -1 yet its computed discriminant lands a noise
/// width away from zero, and matrix powers of such products cannot confirm
/// the (true) finite order. Both effects are bounded from the entry scale:
/// the ellipticity band widens by the induced discriminant uncertainty, and
/// rotation-angle residues below the noise floor are treated as possible
/// finite order rather than evidence of its absence.
inline WitnessCheck screen_witness(const Isometry& m, const Word& word, int max_order,
                                   double tol, const Tolerances& tols = {}) {
    WitnessCheck out;
    const cplx tau = m.trace();
    const double a = std::abs(tau);
    const double scale = max_entry_magnitude(m);
    const double word_len = std::max<std::size_t>(word.letters.size(), 1);
    const double trace_err = 1e-15 * scale * word_len;
    const double disc_slope = 4.0 * a * a * a + 24.0 * a * a + 36.0 * a + 1.0;
    const double band = tols.deltoid * std::max(1.0, a * a * a * a) +
                        100.0 * disc_slope * trace_err;
    const double disc = deltoid_discriminant(tau);
    if (!(disc < -band)) {
        out.near_deltoid = disc >= -band && disc <= band;
        return out;
    }
    const FiniteOrderScan scan = detect_finite_order(m, max_order, tol);
    if (scan.order.has_value()) {
        out.finite_order = scan.order;
        return out;
    }
    const double floor = 100.0 * std::sqrt(trace_err);
    if (scan.best_angle_dev < floor) {
        out.noise_limited = true;
        return out;
    }
    EllipticWitness w;
    w.word = word;
    w.trace = tau;
    w.discriminant = disc;
    w.min_order_tested = max_order;
    w.best_power = scan.best_power;
    w.best_angle_dev = scan.best_angle_dev;
    w.noise_floor = floor;
    out.witness = std::move(w);
    return out;
}

/// Enumerate every reduced word up to max_len, evaluate it, and emit the
/// regular elliptic elements for which no power up to max_order returns to
/// the identity within tol. Output is ordered length-lexicographically.
/// Witnesses are evidence of non-discreteness, not proof: infinite order is
/// not certifiable in floating point.
inline std::vector<EllipticWitness> search_elliptic_infinite_order(
    const TriangleRep& rep, int max_len = 12, int max_order = 2000, double tol = 1e-8,
    const Tolerances& tols = {}) {
    if (max_len < 1 || max_len > 20)
        throw std::invalid_argument("search_elliptic_infinite_order: max_len must be in [1,20]");
    if (max_order < 2)
        throw std::invalid_argument("search_elliptic_infinite_order: max_order must be >= 2");

    std::vector<EllipticWitness> found;
    std::vector<int> letters;
    std::vector<Isometry> prefix = {Isometry::identity()};

    const auto visit = [&](const Isometry& m) {
        // cheap reject before the full screen
        if (classify_isometry(m, tols).tag != IsometryClass::Tag::regular_elliptic)
            return;
        WitnessCheck check = screen_witness(m, Word{letters}, max_order, tol, tols);
        if (check.witness.has_value()) found.push_back(std::move(*check.witness));
    };

    // depth-first over reduced words (no immediate letter repeats)
    const auto dfs = [&](auto&& self, int depth) -> void {
        if (depth == max_len) return;
        for (int l = 1; l <= 3; ++l) {
            if (!letters.empty() && letters.back() == l) continue;
            letters.push_back(l);
            prefix.push_back(prefix.back() * rep.generator(l));
            visit(prefix.back());
            self(self, depth + 1);
            prefix.pop_back();
            letters.pop_back();
        }
    };
    dfs(dfs, 0);

    std::sort(found.begin(), found.end(), [](const EllipticWitness& a, const EllipticWitness& b) {
        if (a.word.letters.size() != b.word.letters.size())
            return a.word.letters.size() < b.word.letters.size();
        return a.word.letters < b.word.letters;
    });
    return found;
}

}  // namespace ultrapar
