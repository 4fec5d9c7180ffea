#pragma once

#include <string>

#include "ultrapar/heisenberg.hpp"
#include "ultrapar/words.hpp"

// Closed-form discreteness and non-discreteness criteria for ultra-parallel
// [m1,m2,0] triangle groups, all expressed in r_j = cosh(m_j/2) and the
// angular invariant alpha:
//
//   f_A(l) = (1 - (l r1 - (l+1) r2)^2) / (l (l+1)),   f_B = 1 - (r1 - r2)^2,
//
// conditions (*): 4 r1 r2 sin^2(alpha/2) >= f_B and >= f_A(l) for every
// integer l outside {-1, 0}; the (X, Y) region picture with
// X = (r1^2 - r2^2)/(r2^2 - 1), Y = 1/(r2^2 - 1); the hyperbolae Phi_k
// certifying discreteness for every alpha; the trace formulas for the word
// families w_A^(l) = I1 (I2 I1)^l I3 and w_B = I1 I2 I3; the cubic Q(X)
// governing the ellipticity of w_B; and a composite per-point verdict.

namespace ultrapar {

// ----------------------------------------------------------- f_A and f_B

inline double f_B(double r1, double r2) {
    return 1.0 - (r1 - r2) * (r1 - r2);
}

inline double f_A(long long ell, double r1, double r2) {
    if (ell == 0 || ell == -1)
        throw std::invalid_argument("f_A: ell must avoid {-1, 0}");
    const double le = static_cast<double>(ell);
    const double t = le * r1 - (le + 1.0) * r2;
    return (1.0 - t * t) / (le * (le + 1.0));
}

/// Partial-fraction rearrangement of the same function; agrees with f_A to
/// roundoff and exposes the tail behaviour.
inline double f_A_rearranged(long long ell, double r1, double r2) {
    if (ell == 0 || ell == -1)
        throw std::invalid_argument("f_A_rearranged: ell must avoid {-1, 0}");
    const double le = static_cast<double>(ell);
    return (r1 * r1 - 1.0) / (le + 1.0) - (r2 * r2 - 1.0) / le -
           (r1 - r2) * (r1 - r2);
}

struct SupFA {
    double value = 0.0;
    long long argmax = 0;
    long long window = 0;   ///< scanned |ell| bound
    bool saturated = false; ///< window hit the hard cap
};

/// Supremum of f_A over the integers outside {-1, 0}. Scans |ell| <= L with
/// L = 2 + ceil((r1^2 + r2^2 - 2)/max((r1-r2)^2, 1e-8)), capped at 1e6: the
/// rearranged form bounds the tail by -(r1-r2)^2 + (r1^2+r2^2-2)/(|ell|-1),
/// which is negative beyond L, so a nonnegative left-hand side in any
/// comparison is unaffected by the unscanned tail. For r1 = r2 every value
/// is -(r2^2-1)/(l(l+1)) <= 0 and the supremum 0 is reported directly.
inline SupFA sup_f_A(double r1, double r2) {
    if (r1 < r2) std::swap(r1, r2);
    if (r2 < 1.0) throw std::invalid_argument("sup_f_A: needs r1 >= r2 >= 1");
    constexpr long long cap = 1000000;
    const double S2 = r1 * r1 + r2 * r2 - 2.0;
    const double P2 = (r1 - r2) * (r1 - r2);
    const double raw = 2.0 + std::ceil(S2 / std::max(P2, 1e-8));
    SupFA out;
    out.saturated = raw > static_cast<double>(cap);
    out.window = out.saturated ? cap : static_cast<long long>(raw);

    if (r1 == r2) {
        out.value = 0.0;       // limit value; attained everywhere when r2 = 1
        out.argmax = out.window;
        out.saturated = false; // the closed form needs no scan
        return out;
    }

    const double A = r1 * r1 - r2 * r2;
    double best = -std::numeric_limits<double>::infinity();
    long long arg = 1;
    for (long long ell = 1; ell <= out.window; ++ell) {
        const double v = f_A(ell, r1, r2);
        if (v > best) {
            best = v;
            arg = ell;
        }
        // everything beyond ell is at most -P2 + A/(ell+2)
        if (-P2 + A / (static_cast<double>(ell) + 2.0) <= best) break;
    }
    if (best < -P2) {
        // negative side is bounded above by -P2, so it only matters here
        for (long long ell = -2; ell >= -out.window; --ell) {
            const double v = f_A(ell, r1, r2);
            if (v > best) {
                best = v;
                arg = ell;
            }
        }
    }
    out.value = best;
    out.argmax = arg;
    return out;
}

// ------------------------------------------------------- conditions (*)

struct StarCheck {
    double lhs = 0.0;      ///< 4 r1 r2 sin^2(alpha/2)
    double sup_fa = 0.0;
    double f_b = 0.0;
    long long argmax_ell = 0;
    long long scan_window = 0;
    bool holds = false;
    bool saturated = false;
};

inline StarCheck conditions_star(double r1, double r2, double alpha,
                                 const Tolerances& tol = {}) {
    if (r1 < r2) std::swap(r1, r2);
    const double s = std::sin(alpha / 2.0);
    StarCheck out;
    out.lhs = 4.0 * r1 * r2 * s * s;
    const SupFA sup = sup_f_A(r1, r2);
    out.sup_fa = sup.value;
    out.argmax_ell = sup.argmax;
    out.scan_window = sup.window;
    out.saturated = sup.saturated;
    out.f_b = f_B(r1, r2);
    out.holds = out.lhs >= std::max(out.sup_fa, out.f_b) - tol.star;
    return out;
}

/// The closed forms behind conditions (*): a(l) is the distance from
/// the origin to J1 (J2 J1)^l (0) halved, b the halved translation length.
inline double star_a(long long ell, double r1, double r2, double theta) {
    const cplx eit = std::polar(1.0, theta);
    return std::abs(r2 * eit + static_cast<double>(ell) * (r2 * eit + r1 * std::conj(eit)));
}

inline double star_b(double r1, double r2, double theta) {
    const cplx eit = std::polar(1.0, theta);
    return std::abs(r2 * eit + r1 * std::conj(eit));
}

/// Direct evaluation of conditions (*) from a(l) >= 1, b >= 1 over a window.
inline bool conditions_star_direct(double r1, double r2, double alpha, long long window,
                                   const Tolerances& tol = {}) {
    if (r1 < r2) std::swap(r1, r2);
    const double theta = (std::numbers::pi - alpha) / 2.0;
    if (star_b(r1, r2, theta) < 1.0 - tol.star) return false;
    for (long long ell = -window; ell <= window; ++ell) {
        if (ell == 0 || ell == -1) continue;
        if (star_a(ell, r1, r2, theta) < 1.0 - tol.star) return false;
    }
    return true;
}

/// The coarse test: sin(alpha/2) >= 1/(r1 + r2) already implies (*).
inline bool simple_sine_test(double r1, double r2, double alpha,
                             const Tolerances& tol = {}) {
    return std::sin(alpha / 2.0) >= 1.0 / (r1 + r2) - tol.star;
}

// -------------------------------------------------------- trace formulas

/// trace of w_A^(l): 4 (l r1 - (l+1) r2)^2 - 1 + 16 l (l+1) r1 r2 sin^2(alpha/2).
/// Always real and >= -1; the element is non-elliptic iff the value is >= 3.
inline double trace_wA(long long ell, double r1, double r2, double alpha) {
    const double le = static_cast<double>(ell);
    const double t = le * r1 - (le + 1.0) * r2;
    const double s = std::sin(alpha / 2.0);
    return 4.0 * t * t - 1.0 + 16.0 * le * (le + 1.0) * r1 * r2 * s * s;
}

/// trace of w_B: -(4 r1^2 + 4 r2^2 + 1) + 8 r1 r2 e^{i alpha}; it moves on a
/// circle of radius 8 r1 r2 around -(4 r1^2 + 4 r2^2 + 1).
inline cplx trace_wB(double r1, double r2, double alpha) {
    return cplx(-(4.0 * r1 * r1 + 4.0 * r2 * r2 + 1.0)) +
           8.0 * r1 * r2 * std::polar(1.0, alpha);
}

// -------------------------------------------------------- region picture

struct RegionPoint {
    double x = 0.0, y = 0.0;
    bool defined = false;  ///< false when r2 = 1 (the coordinates degenerate)
};

inline RegionPoint region_point(double r1, double r2) {
    if (r1 < r2) std::swap(r1, r2);
    const double den = r2 * r2 - 1.0;
    if (den <= 1e-12) return {};
    return {(r1 * r1 - r2 * r2) / den, 1.0 / den, true};
}

/// The hyperbola whose sublevel set certifies discreteness for all alpha:
/// Phi_k(X) = (k^2 X - 2k - 1)^2 / (4 k (k+1) (k X - 1)).
inline double phi_k(int k, double x) {
    if (k < 1) throw std::invalid_argument("phi_k: k must be >= 1");
    const double kd = k;
    const double num = kd * kd * x - 2.0 * kd - 1.0;
    return num * num / (4.0 * kd * (kd + 1.0) * (kd * x - 1.0));
}

enum class RegionTag { type_a, type_b, ideal_type_b, boundary };

inline const char* to_string(RegionTag t) {
    switch (t) {
        case RegionTag::type_a: return "type-a";
        case RegionTag::type_b: return "type-b";
        case RegionTag::ideal_type_b: return "ideal-type-b";
        case RegionTag::boundary: return "boundary";
    }
    return "?";
}

struct RegionVerdict {
    RegionTag tag = RegionTag::type_b;
    int k = 0;  ///< strip index: the relevant w_A^(k) for type-a points
    RegionPoint point;
    bool all_alpha_discrete = false;
    bool phi_k_satisfied = false;
    struct Adjacent {
        RegionTag tag;
        int k;
    };
    std::vector<Adjacent> adjacent;  ///< the two neighbouring verdicts on a boundary
};

namespace detail {

struct XYTag {
    RegionTag tag;
    int k;
    bool operator==(const XYTag& o) const { return tag == o.tag && k == o.k; }
};

inline int strip_of(double x) {
    if (x >= 2.0) return 1;
    if (x < 2e-7) return 0;  // effectively the Y axis; no finite strip
    return static_cast<int>(std::ceil(2.0 / x - 1e-12));
}

inline XYTag classify_xy(double x, double y) {
    const int k = strip_of(x);
    if (k == 0) return {RegionTag::type_b, 0};
    const double lower = std::max(1.0 / k + (k + 1.0) * y, 2.0 / k);
    if (x >= lower) return {RegionTag::type_a, k};
    return {RegionTag::type_b, 0};
}

}  // namespace detail

/// Membership of (r1, r2) in the union of the all-alpha discreteness
/// intervals: r1 - r2 >= r2 + 1, or (r2+1)/k <= r1 - r2 <= (r2-1)/(k-1) for
/// some k >= 2 (nonempty only once r2 >= 2k - 1).
inline bool all_alpha_intervals(double r1, double r2, const Tolerances& tol = {}) {
    if (r1 < r2) std::swap(r1, r2);
    const double gap = r1 - r2;
    if (gap >= r2 + 1.0 - tol.star) return true;
    const int kmax = static_cast<int>(std::floor((r2 + 1.0) / 2.0));
    for (int k = 2; k <= kmax; ++k) {
        if (gap >= (r2 + 1.0) / k - tol.star && gap <= (r2 - 1.0) / (k - 1.0) + tol.star)
            return true;
    }
    return false;
}

/// Classify (r1, r2) against the region picture. Points within a narrow
/// relative band (1e-8) of a region edge are tagged boundary and carry the
/// verdicts on both sides instead of an arbitrary choice.
inline RegionVerdict classify_region(double r1, double r2, const Tolerances& tol = {}) {
    if (r1 < r2) std::swap(r1, r2);
    if (r2 < 1.0) throw std::invalid_argument("classify_region: needs r1 >= r2 >= 1");
    RegionVerdict v;
    v.point = region_point(r1, r2);

    const double sqrt3 = std::sqrt(3.0);
    if (!v.point.defined) {
        // ideal family m2 = 0: below r1 = sqrt(3) the w_B condition rules,
        // above it the w_A^(1) strip begins
        const double band = 1e-9 * std::max(1.0, r1);
        if (std::abs(r1 - sqrt3) <= band) {
            v.tag = RegionTag::boundary;
            v.k = 1;
            v.adjacent = {{RegionTag::ideal_type_b, 0}, {RegionTag::type_a, 1}};
        } else if (r1 < sqrt3) {
            v.tag = RegionTag::ideal_type_b;
            v.k = 0;
        } else {
            v.tag = RegionTag::type_a;
            v.k = 1;
        }
        v.phi_k_satisfied = false;
        v.all_alpha_discrete = all_alpha_intervals(r1, r2, tol);  // reduces to r1 >= 3
        return v;
    }

    const double x = v.point.x, y = v.point.y;
    const double delta = std::max(1e-8 * std::max(1.0, std::abs(x)), 1e-11);
    const detail::XYTag at = detail::classify_xy(x, y);
    const detail::XYTag lo = detail::classify_xy(x - delta, y);
    const detail::XYTag hi = detail::classify_xy(x + delta, y);
    if (lo == hi) {
        v.tag = at.tag;
        v.k = at.k;
    } else {
        v.tag = RegionTag::boundary;
        v.k = at.k;
        v.adjacent = {{lo.tag, lo.k}, {hi.tag, hi.k}};
    }

    const int ks = detail::strip_of(x);
    v.phi_k_satisfied = ks >= 1 && y <= phi_k(ks, x) + tol.star;
    v.all_alpha_discrete = all_alpha_intervals(r1, r2, tol) || v.phi_k_satisfied;
    return v;
}

// --------------------------------------------------- ellipticity of w_B

/// Q(X) = 4X^3 + X^2 - 2X + 1 + 4(r1^2+r2^2) X (1+X) + 4 (r1^2-r2^2)^2.
/// Its roots in [-1, 1] are the cosines parametrising the deltoid points
/// crossed by the trace circle of w_B.
inline double wb_cubic(double x, double r1, double r2) {
    const double S = r1 * r1 + r2 * r2;
    const double D = r1 * r1 - r2 * r2;
    return 4.0 * x * x * x + x * x - 2.0 * x + 1.0 + 4.0 * S * x * (1.0 + x) +
           4.0 * D * D;
}

namespace detail {

inline double wb_cubic_deriv(double x, double S) {
    return 12.0 * x * x + 2.0 * x - 2.0 + 4.0 * S * (1.0 + 2.0 * x);
}

inline double polish_root(double x, double lo, double hi, double r1, double r2) {
    const double S = r1 * r1 + r2 * r2;
    for (int it = 0; it < 40; ++it) {
        const double f = wb_cubic(x, r1, r2);
        const double fp = wb_cubic_deriv(x, S);
        if (fp == 0.0) break;
        const double nx = x - f / fp;
        if (nx < lo || nx > hi || !std::isfinite(nx)) break;
        if (std::abs(nx - x) < 1e-16) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

inline double bisect_root(double lo, double hi, double r1, double r2) {
    double flo = wb_cubic(lo, r1, r2);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = wb_cubic(mid, r1, r2);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    return polish_root(0.5 * (lo + hi), lo - 1e-12, hi + 1e-12, r1, r2);
}

/// Real roots of x^3 + b x^2 + c x + d by the trigonometric / Cardano split.
inline std::vector<double> solve_cubic_real(double b, double c, double d) {
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    std::vector<double> roots;
    if (disc <= 0.0 && p < 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double th = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(th - 2.0 * std::numbers::pi * k / 3.0) - b / 3.0);
    } else {
        const double sq = std::sqrt(std::max(disc, 0.0));
        roots.push_back(std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) - b / 3.0);
    }
    return roots;
}

}  // namespace detail

/// All roots of Q in [-1, 1], ascending. Closed-form solve with Newton
/// polish; brackets from the critical-point structure (the only interior
/// critical point is X = -1/2) back the result up by bisection when needed.
inline std::vector<double> wb_cubic_roots(double r1, double r2) {
    const double S = r1 * r1 + r2 * r2;
    const double qm = wb_cubic(-0.5, r1, r2);
    if (qm > 0.0) return {};
    const double qleft = wb_cubic(-1.0, r1, r2);  // = 4 (r1^2 - r2^2)^2 >= 0

    std::vector<double> roots;
    const double D = r1 * r1 - r2 * r2;
    const double scale = std::max({1.0, 4.0 * S, 4.0 * D * D});
    auto closed = detail::solve_cubic_real((1.0 + 4.0 * S) / 4.0, (4.0 * S - 2.0) / 4.0,
                                           (1.0 + 4.0 * D * D) / 4.0);
    for (double r : closed) {
        if (r < -1.0 - 1e-9 || r > 1.0 + 1e-9) continue;
        const double x = detail::polish_root(std::clamp(r, -1.0, 1.0), -1.0, 1.0, r1, r2);
        if (std::abs(wb_cubic(x, r1, r2)) <= 1e-9 * scale) roots.push_back(x);
    }
    // fall back on the certified brackets if the closed form lost a root
    if (roots.size() < 2) {
        roots.clear();
        roots.push_back(qleft <= 1e-14 * scale ? -1.0
                                               : detail::bisect_root(-1.0, -0.5, r1, r2));
        roots.push_back(detail::bisect_root(-0.5, 1.0, r1, r2));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                roots.end());
    return roots;
}

/// Map a deltoid parameter cos(theta) = x to the alpha at which the trace
/// circle of w_B meets that deltoid point (representative in [0, pi]).
inline double wb_alpha_of_root(double x, double r1, double r2) {
    const double th = std::acos(std::clamp(x, -1.0, 1.0));
    const cplx z = 2.0 * std::polar(1.0, th) + std::polar(1.0, -2.0 * th);
    const cplx w = (z + cplx(4.0 * r1 * r1 + 4.0 * r2 * r2 + 1.0)) / (8.0 * r1 * r2);
    return std::atan2(w.imag(), w.real());
}

struct WbEllipticity {
    enum class Kind { never_elliptic, window, isosceles_threshold };
    Kind kind = Kind::never_elliptic;
    double alpha1 = 0.0, alpha2 = 0.0;  ///< elliptic for alpha in (alpha1, alpha2)
    double alpha0 = 0.0;                ///< isosceles: elliptic for alpha in (0, alpha0)
    std::vector<double> q_roots;        ///< roots of Q in [-1, 1]
    double q_critical = 0.0;            ///< Q(-1/2)
    bool empirically_verified = true;   ///< sampled alphas confirm the split
};

/// Where is w_B elliptic as alpha varies? Never, when
/// 7 - 4(r1^2+r2^2) + 16(r1^2-r2^2)^2 > 0; otherwise inside the window cut
/// out by the roots of Q. Windows live in (0, pi) and repeat mirrored at
/// 2 pi - alpha. The split is re-checked empirically on sampled alphas.
inline WbEllipticity wb_ellipticity(double r1, double r2, const Tolerances& tol = {}) {
    if (r1 < r2) std::swap(r1, r2);
    WbEllipticity out;
    out.q_critical = wb_cubic(-0.5, r1, r2);
    out.q_roots = wb_cubic_roots(r1, r2);

    const bool isosceles = std::abs(r1 - r2) <= 1e-12;
    double lo = 0.0, hi = 0.0;
    if (4.0 * out.q_critical > 0.0) {
        out.kind = WbEllipticity::Kind::never_elliptic;
    } else {
        std::vector<double> alphas;
        for (double x : out.q_roots) alphas.push_back(wb_alpha_of_root(x, r1, r2));
        std::sort(alphas.begin(), alphas.end());
        lo = alphas.empty() ? 0.0 : alphas.front();
        hi = alphas.empty() ? 0.0 : alphas.back();
        if (isosceles) {
            out.kind = WbEllipticity::Kind::isosceles_threshold;
            out.alpha0 = hi;  // the nonzero crossing; alpha = 0 sits on the deltoid
            lo = 0.0;
        } else {
            out.kind = WbEllipticity::Kind::window;
            out.alpha1 = lo;
            out.alpha2 = hi;
        }
    }

    // empirical confirmation on a coarse alpha sweep
    const double band = tol.deltoid;
    for (int i = 1; i <= 24 && out.empirically_verified; ++i) {
        const double a = std::numbers::pi * i / 25.0;
        if (out.kind != WbEllipticity::Kind::never_elliptic &&
            (std::abs(a - lo) < 1e-5 || std::abs(a - hi) < 1e-5))
            continue;
        const bool expect_elliptic =
            out.kind != WbEllipticity::Kind::never_elliptic && a > lo && a < hi;
        const double disc = deltoid_discriminant(trace_wB(r1, r2, a));
        const double scale = std::max(1.0, std::pow(std::abs(trace_wB(r1, r2, a)), 4.0));
        if (std::abs(disc) <= band * scale) continue;  // too close to the curve
        if ((disc < 0.0) != expect_elliptic) out.empirically_verified = false;
    }
    return out;
}

// ------------------------------------------------ elliptic w_A^(k) window

struct WakWindow {
    bool region_ok = false;  ///< hypothesis (the type-A(k) strip, k >= 2) holds
    bool nonempty = false;
    std::string reason;
    double s2_lo = 0.0, s2_hi = 0.0;      ///< window in sin^2(alpha/2)
    double alpha_lo = 0.0, alpha_hi = 0.0;///< representative interval in (0, pi]
};

/// Alpha window on which w_A^(k) is regular elliptic while every other
/// w_A^(l) stays non-elliptic: max{f_A(k+1), f_A(k-1)} <= 4 r1 r2 s^2 < f_A(k),
/// valid in the type-A(k) strip for k >= 2.
inline WakWindow wak_elliptic_window(double r1, double r2, int k,
                                     const Tolerances& tol = {}) {
    if (r1 < r2) std::swap(r1, r2);
    WakWindow out;
    if (k < 2) {
        out.reason = "k must be >= 2";
        return out;
    }
    const RegionPoint pt = region_point(r1, r2);
    if (!pt.defined) {
        out.reason = "requires r2 > 1";
        return out;
    }
    const double lower = std::max(1.0 / k + (k + 1.0) * pt.y, 2.0 / k);
    const double upper = 2.0 / (k - 1.0);
    if (!(pt.x >= lower - tol.star && pt.x <= upper + tol.star)) {
        out.reason = "parameters outside the type-A(" + std::to_string(k) + ") strip";
        return out;
    }
    out.region_ok = true;
    const double fak = f_A(k, r1, r2);
    if (fak <= 0.0) {
        out.reason = "f_A(k) <= 0: w_A^(k) is never elliptic here";
        return out;
    }
    const double lo = std::max({f_A(k + 1, r1, r2), f_A(k - 1, r1, r2), 0.0});
    if (lo >= fak) {
        out.reason = "window empty: neighbouring f_A values dominate f_A(k)";
        return out;
    }
    out.nonempty = true;
    const double den = 4.0 * r1 * r2;
    out.s2_lo = lo / den;
    out.s2_hi = fak / den;
    out.alpha_lo = 2.0 * std::asin(std::sqrt(std::min(out.s2_lo, 1.0)));
    out.alpha_hi = 2.0 * std::asin(std::sqrt(std::min(out.s2_hi, 1.0)));
    return out;
}

// -------------------------------------------------------------- verdicts

enum class Verdict { discrete, discrete_and_faithful, non_discrete, undetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::discrete: return "discrete";
        case Verdict::discrete_and_faithful: return "discrete-and-faithful";
        case Verdict::non_discrete: return "non-discrete";
        case Verdict::undetermined: return "undetermined";
    }
    return "?";
}

struct Evidence {
    std::string criterion;
    bool holds = false;
    double margin = 0.0;  ///< inequality slack, positive when satisfied
    std::string note;
};

struct DecideOptions {
    bool witness_search = true;  ///< fall back to word enumeration when unresolved
    int max_word_len = 12;
    int max_order = 2000;
    double tol = 1e-8;
};

struct Decision {
    TriangleParams params;
    Verdict verdict = Verdict::undetermined;
    std::string verdict_note;
    RegionVerdict region;
    StarCheck star;
    bool simple = false;
    double simple_margin = 0.0;
    ShimizuReport shimizu;
    double trace_wa_k = 0.0;  ///< trace of w_A^(region.k), when k >= 1
    cplx trace_wb;
    bool conflict = false;  ///< mutually exclusive criteria both fired
    std::vector<Evidence> evidence;
    std::vector<EllipticWitness> witnesses;
};

/// Composite verdict for a single parameter point. Sufficient discreteness
/// conditions and the Shimizu certificate are evaluated side by side; in a
/// type-A(k) strip with m2 > 0 the two-sided criterion on trace(w_A^(k))
/// applies, and elliptic-of-infinite-order witnesses (numerical evidence,
/// not proof) settle otherwise undetermined points when enabled.
inline Decision decide(double r1, double r2, double alpha, const DecideOptions& opts = {},
                       const Tolerances& tol = {}) {
    Decision d;
    d.params = TriangleParams::from_r(r1, r2, alpha);
    const double R1 = d.params.r1, R2 = d.params.r2;

    d.region = classify_region(R1, R2, tol);
    d.star = conditions_star(R1, R2, alpha, tol);
    d.simple_margin = std::sin(alpha / 2.0) - 1.0 / (R1 + R2);
    d.simple = d.simple_margin >= -tol.star;
    d.shimizu = shimizu_test(d.params, tol);
    d.trace_wb = trace_wB(R1, R2, alpha);

    d.evidence.push_back({"conditions-star", d.star.holds,
                          d.star.lhs - std::max(d.star.sup_fa, d.star.f_b),
                          "4 r1 r2 sin^2(a/2) vs max(sup f_A, f_B)"});
    d.evidence.push_back({"simple-sine", d.simple, d.simple_margin,
                          "sin(a/2) vs 1/(r1+r2)"});
    d.evidence.push_back({"all-alpha-region", d.region.all_alpha_discrete, 0.0,
                          "interval / Phi_k membership of (r1, r2)"});
    d.evidence.push_back({"shimizu", d.shimizu.non_discrete,
                          d.shimizu.x_threshold - d.shimizu.x_value,
                          "X = 64 r1 r2 sin^2(a/2) below the translation bound"});

    const bool type_a_interior = d.region.tag == RegionTag::type_a && d.region.point.defined;
    const bool type_b_like =
        d.region.tag == RegionTag::type_b || d.region.tag == RegionTag::ideal_type_b;
    const double re_wb = d.trace_wb.real();

    bool wa_nonelliptic = false;
    if (d.region.k >= 1) {
        d.trace_wa_k = trace_wA(d.region.k, R1, R2, alpha);
        const double band = 1e-9 * std::max(1.0, std::abs(d.trace_wa_k));
        wa_nonelliptic = d.trace_wa_k >= 3.0 - band;
        d.evidence.push_back({"trace-wa-k", wa_nonelliptic, d.trace_wa_k - 3.0,
                              "trace(w_A^(k)) vs 3 at k = " + std::to_string(d.region.k)});
    }
    const bool wb_condition = type_b_like && re_wb <= -5.0 + tol.star;
    if (type_b_like)
        d.evidence.push_back({"re-trace-wb", wb_condition, -5.0 - re_wb,
                              "Re trace(w_B) vs -5"});

    const bool discrete_signal = d.star.holds || d.simple || d.region.all_alpha_discrete ||
                                 wb_condition || (type_a_interior && wa_nonelliptic);
    if (d.shimizu.non_discrete && discrete_signal) {
        d.conflict = true;
        d.verdict = Verdict::undetermined;
        d.verdict_note = "conflicting criteria fired; residuals are unreliable here";
        return d;
    }

    if (d.shimizu.non_discrete) {
        d.verdict = Verdict::non_discrete;
        d.verdict_note = "translation length certificate";
        return d;
    }

    if (type_a_interior) {
        if (wa_nonelliptic) {
            d.verdict = Verdict::discrete_and_faithful;
            d.verdict_note = "type-A(" + std::to_string(d.region.k) +
                             ") strip with non-elliptic w_A^(k)";
            return d;
        }
        // two-sided criterion: elliptic w_A^(k) rules out discrete-and-faithful
        const TriangleRep rep = build_rep(d.params, tol);
        const Word w = word_wA(d.region.k);
        const Isometry m = evaluate(w, rep);
        WitnessCheck check = screen_witness(m, w, opts.max_order, opts.tol, tol);
        if (check.witness.has_value()) {
            d.witnesses.push_back(std::move(*check.witness));
            d.verdict = Verdict::non_discrete;
            d.verdict_note = "w_A^(" + std::to_string(d.region.k) +
                             ") is elliptic with no detected finite order";
        } else if (check.finite_order.has_value()) {
            d.verdict = Verdict::undetermined;
            d.verdict_note = "w_A^(" + std::to_string(d.region.k) +
                             ") is elliptic of finite order " +
                             std::to_string(*check.finite_order) +
                             "; the representation is not discrete-and-faithful";
        } else {
            d.verdict = Verdict::undetermined;
            d.verdict_note = "w_A^(" + std::to_string(d.region.k) +
                             ") is elliptic but numerically ambiguous; not "
                             "discrete-and-faithful, no witness certified";
        }
        return d;
    }

    if (discrete_signal) {
        d.verdict = Verdict::discrete;
        d.verdict_note = d.star.holds    ? "conditions (*) hold"
                         : d.simple      ? "simple sine bound"
                         : wb_condition  ? "Re trace(w_B) <= -5 in a type-B region"
                                         : "discrete for every alpha at these distances";
        return d;
    }

    if (opts.witness_search) {
        const TriangleRep rep = build_rep(d.params, tol);
        d.witnesses = search_elliptic_infinite_order(rep, opts.max_word_len,
                                                     opts.max_order, opts.tol, tol);
        if (!d.witnesses.empty()) {
            d.verdict = Verdict::non_discrete;
            d.verdict_note = "elliptic element with no detected finite order (numerical witness)";
            return d;
        }
    }

    d.verdict = Verdict::undetermined;
    d.verdict_note = "no criterion settled this point";
    return d;
}

}  // namespace ultrapar
