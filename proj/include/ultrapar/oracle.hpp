#pragma once

#include <random>
#include <sstream>

#include "ultrapar/criteria.hpp"

// Cross-module consistency suites: every closed form in the library is
// checked against an independent route (matrix words for the traces, the
// orbit of the half-turn group for conditions (*), the I2*I1 entries for
// the shimizu data, direct geometry for the boundary). Runs are seeded and
// reproducible; a deliberate perturbation hook serves as negative control.

namespace ultrapar {

struct OracleOptions {
    unsigned long long seed = 12345;
    int samples = 500;
    bool inject_trace_error = false;  ///< poison the trace suite (test hook)
};

struct SuiteResult {
    std::string name;
    bool pass = true;
    double max_residual = 0.0;
    int checked = 0;
    std::string detail;
};

namespace detail {

struct OracleRng {
    std::mt19937_64 eng;
    explicit OracleRng(unsigned long long seed) : eng(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
    void params(double& r1, double& r2, double& alpha) {
        r1 = uniform(1.0, 5.0);
        r2 = uniform(1.0, r1);
        alpha = uniform(1e-6, 2.0 * std::numbers::pi - 1e-6);
    }
};

}  // namespace detail

inline SuiteResult oracle_traces(const OracleOptions& opt) {
    SuiteResult res;
    res.name = "trace-closed-forms-vs-matrix-words";
    detail::OracleRng rng(opt.seed);
    const double poison = opt.inject_trace_error ? 1e-3 : 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        double r1, r2, alpha;
        rng.params(r1, r2, alpha);
        const TriangleRep rep = build_rep(r1, r2, alpha);
        for (long long ell = -6; ell <= 6; ++ell) {
            if (ell == 0 || ell == -1) continue;
            const cplx t = trace(evaluate(word_wA(ell), rep));
            const double closed = trace_wA(ell, r1, r2, alpha) + poison;
            res.max_residual = std::max(res.max_residual, std::abs(t - cplx(closed)));
            ++res.checked;
        }
        const cplx tb = trace(evaluate(word_wB(), rep));
        const cplx closed_b = trace_wB(r1, r2, alpha) + poison;
        res.max_residual = std::max(res.max_residual, std::abs(tb - closed_b));
        ++res.checked;
    }
    res.pass = res.max_residual < 1e-9;
    return res;
}

inline SuiteResult oracle_star(const OracleOptions& opt) {
    SuiteResult res;
    res.name = "conditions-star-triple-equivalence";
    detail::OracleRng rng(opt.seed + 1);
    int mismatches = 0;
    while (res.checked < opt.samples) {
        double r1, r2, alpha;
        rng.params(r1, r2, alpha);
        const StarCheck star = conditions_star(r1, r2, alpha);
        if (std::abs(star.lhs - std::max(star.sup_fa, star.f_b)) < 1e-9) continue;
        const long long window = std::min<long long>(star.scan_window, 100000);
        const bool direct = conditions_star_direct(r1, r2, alpha, window);
        const bool orbit = lambda_condition_check(r1, r2, alpha, window);
        if (direct != star.holds || orbit != star.holds) ++mismatches;
        ++res.checked;
    }
    res.pass = mismatches == 0;
    if (mismatches) res.detail = std::to_string(mismatches) + " boolean mismatches";
    return res;
}

inline SuiteResult oracle_shimizu(const OracleOptions& opt) {
    SuiteResult res;
    res.name = "shimizu-closed-form-vs-direct";
    detail::OracleRng rng(opt.seed + 2);
    int mismatches = 0;
    for (int i = 0; i < opt.samples * 2; ++i) {
        double r1, r2, alpha;
        rng.params(r1, r2, alpha);
        const ShimizuReport rep = shimizu_test(TriangleParams::from_r(r1, r2, alpha));
        res.max_residual = std::max(res.max_residual,
                                    std::abs(rep.rhs - rep.rhs_direct) / (1.0 + rep.rhs));
        if (std::abs(rep.rhs_direct - rep.lhs) < 1e-9) continue;  // threshold point
        if (!rep.direct_agrees) ++mismatches;
        ++res.checked;
    }
    res.pass = mismatches == 0 && res.max_residual < 1e-8;
    if (mismatches) res.detail = std::to_string(mismatches) + " verdict mismatches";
    return res;
}

inline SuiteResult oracle_geometry(const OracleOptions& opt) {
    SuiteResult res;
    res.name = "boundary-geometry";
    detail::OracleRng rng(opt.seed + 3);
    int violations = 0;
    for (int i = 0; i < opt.samples * 4; ++i) {
        const HeisPoint a = HeisPoint::finite({rng.uniform(-3, 3), rng.uniform(-3, 3)},
                                              rng.uniform(-3, 3));
        const HeisPoint b = HeisPoint::finite({rng.uniform(-3, 3), rng.uniform(-3, 3)},
                                              rng.uniform(-3, 3));
        const HeisPoint c = HeisPoint::finite({rng.uniform(-3, 3), rng.uniform(-3, 3)},
                                              rng.uniform(-3, 3));
        if (cygan_distance(a, c) > cygan_distance(a, b) + cygan_distance(b, c) + 1e-12)
            ++violations;
        ++res.checked;
    }
    const TriangleRep rep = build_rep(1.7, 1.3, 2.1);
    for (int i = 0; i < 20; ++i) {
        const double rho = 0.05 + 0.9 * i / 19.0;
        const double v = std::sqrt(1.0 - rho * rho * rho * rho) * (i % 2 ? 1.0 : -1.0);
        const HeisPoint p = HeisPoint::finite(std::polar(rho, 0.41 * i), v);
        const double resid = std::abs(unit_spinal_residual(boundary_action(rep.i3, p)));
        res.max_residual = std::max(res.max_residual, resid);
        ++res.checked;
    }
    res.pass = violations == 0 && res.max_residual < 1e-9;
    if (violations) res.detail = std::to_string(violations) + " triangle violations";
    return res;
}

inline std::vector<SuiteResult> run_oracle_suites(const OracleOptions& opt) {
    return {oracle_traces(opt), oracle_star(opt), oracle_shimizu(opt),
            oracle_geometry(opt)};
}

inline std::string format_oracle_report(const std::vector<SuiteResult>& suites) {
    std::ostringstream os;
    char buf[40];
    for (const auto& s : suites) {
        std::snprintf(buf, sizeof buf, "%.17g", s.max_residual);
        os << (s.pass ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.checked
           << " checks, max residual " << buf;
        if (!s.detail.empty()) os << " (" << s.detail << ")";
        os << '\n';
    }
    return os.str();
}

inline bool oracle_all_pass(const std::vector<SuiteResult>& suites) {
    for (const auto& s : suites)
        if (!s.pass) return false;
    return true;
}

}  // namespace ultrapar
