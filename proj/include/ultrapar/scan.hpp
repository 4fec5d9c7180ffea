#pragma once

#include <cstdio>
#include <ostream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "ultrapar/criteria.hpp"

// Parameter-space scanning: rectangular grids over (r1, r2) or over the
// figure coordinates (X, Y), and alpha sweeps at a fixed parameter point.
// Records are indexed by grid position and evaluated independently, so the
// output is byte-identical for any worker count. CSV prints floats with 17
// significant digits; SVG renders the region picture with the piecewise
// linear type-A boundary, the gradient-1/2 ray and the Phi_k hyperbolae.

namespace ultrapar {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Vertices (2/k, 1/(k(k+1))) of the broken line separating the type-A
/// strips from the type-B region, k = 1..kmax.
inline std::vector<std::pair<double, double>> region_boundary_vertices(int kmax) {
    std::vector<std::pair<double, double>> v;
    for (int k = 1; k <= kmax; ++k)
        v.emplace_back(2.0 / k, 1.0 / (static_cast<double>(k) * (k + 1)));
    return v;
}

struct ScanConfig {
    enum class Mode { r_grid, xy_grid };
    Mode mode = Mode::xy_grid;
    double x_lo = 0.0, x_hi = 3.0;  ///< X range, or r1 range in r_grid mode
    double y_lo = 0.01, y_hi = 0.6; ///< Y range, or r2 range in r_grid mode
    int nx = 61, ny = 60;
    int workers = 1;
    Tolerances tol;

    void validate() const {
        if (nx < 2 || ny < 2)
            throw std::invalid_argument("scan: resolutions must be >= 2");
        if (!(x_hi > x_lo) || !(y_hi > y_lo))
            throw std::invalid_argument("scan: ranges must be non-degenerate");
        if (mode == Mode::xy_grid && y_lo <= 0.0)
            throw std::invalid_argument("scan: Y range must be positive (r2 > 1)");
        if (mode == Mode::r_grid && (x_lo < 1.0 || y_lo < 1.0))
            throw std::invalid_argument("scan: r ranges must start at >= 1");
    }
};

struct RegionScanRecord {
    long long index = 0;
    double r1 = 0, r2 = 0;
    double x = 0, y = 0;
    bool xy_defined = false;
    bool valid = false;  ///< grid point satisfies r1 >= r2 >= 1
    RegionTag tag = RegionTag::type_b;
    int k = 0;
    bool all_alpha = false, phi_k_ok = false;
    double star_s2 = 0;     ///< conditions (*) hold iff sin^2(a/2) >= this
    double simple_s2 = 0;   ///< simple test holds iff sin^2(a/2) >= this
    double shimizu_s2 = 0;  ///< certificate fires iff sin^2(a/2) < this
    int wb_kind = 0;        ///< 0 never-elliptic, 1 window, 2 isosceles threshold
    double wb_alpha1 = 0, wb_alpha2 = 0;
};

namespace detail {

inline RegionScanRecord eval_region_point(const ScanConfig& cfg, long long index,
                                          double gx, double gy) {
    RegionScanRecord rec;
    rec.index = index;
    if (cfg.mode == ScanConfig::Mode::xy_grid) {
        rec.x = gx;
        rec.y = gy;
        rec.xy_defined = true;
        rec.r2 = std::sqrt(1.0 + 1.0 / gy);
        rec.r1 = std::sqrt(1.0 + (1.0 + gx) / gy);
        rec.valid = gx >= 0.0;
    } else {
        rec.r1 = gx;
        rec.r2 = gy;
        rec.valid = rec.r1 >= rec.r2 && rec.r2 >= 1.0;
    }
    if (!rec.valid) return rec;

    const RegionVerdict rv = classify_region(rec.r1, rec.r2, cfg.tol);
    rec.tag = rv.tag;
    rec.k = rv.k;
    rec.all_alpha = rv.all_alpha_discrete;
    rec.phi_k_ok = rv.phi_k_satisfied;
    if (rv.point.defined && cfg.mode == ScanConfig::Mode::r_grid) {
        rec.x = rv.point.x;
        rec.y = rv.point.y;
        rec.xy_defined = true;
    }

    const SupFA sup = sup_f_A(rec.r1, rec.r2);
    rec.star_s2 = std::max({sup.value, f_B(rec.r1, rec.r2), 0.0}) / (4.0 * rec.r1 * rec.r2);
    rec.simple_s2 = 1.0 / ((rec.r1 + rec.r2) * (rec.r1 + rec.r2));
    rec.shimizu_s2 =
        std::max(shimizu_coefficients(rec.r1, rec.r2).x_threshold, 0.0) /
        (64.0 * rec.r1 * rec.r2);

    const WbEllipticity wb = wb_ellipticity(rec.r1, rec.r2, cfg.tol);
    switch (wb.kind) {
        case WbEllipticity::Kind::never_elliptic: rec.wb_kind = 0; break;
        case WbEllipticity::Kind::window:
            rec.wb_kind = 1;
            rec.wb_alpha1 = wb.alpha1;
            rec.wb_alpha2 = wb.alpha2;
            break;
        case WbEllipticity::Kind::isosceles_threshold:
            rec.wb_kind = 2;
            rec.wb_alpha2 = wb.alpha0;
            break;
    }
    return rec;
}

template <typename Fn>
inline void parallel_for(long long n, int workers, Fn&& fn) {
    const int w = std::max(1, workers);
    if (w == 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&fn, t, w, n] {
            for (long long i = t; i < n; i += w) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

inline std::vector<RegionScanRecord> run_region_scan(const ScanConfig& cfg) {
    cfg.validate();
    const long long total = static_cast<long long>(cfg.nx) * cfg.ny;
    std::vector<RegionScanRecord> out(static_cast<std::size_t>(total));
    detail::parallel_for(total, cfg.workers, [&](long long i) {
        const long long ix = i % cfg.nx, iy = i / cfg.nx;
        const double gx = cfg.x_lo + (cfg.x_hi - cfg.x_lo) * static_cast<double>(ix) / (cfg.nx - 1);
        const double gy = cfg.y_lo + (cfg.y_hi - cfg.y_lo) * static_cast<double>(iy) / (cfg.ny - 1);
        out[static_cast<std::size_t>(i)] = detail::eval_region_point(cfg, i, gx, gy);
    });
    return out;
}

// ------------------------------------------------------------ alpha sweep

struct AlphaScanConfig {
    double r1 = 1.0, r2 = 1.0;
    double alpha_lo = 0.02, alpha_hi = 6.26;
    int n = 64;
    int workers = 1;
    bool witness_search = false;  ///< decide() falls back to word search when on
    DecideOptions decide_opts;
    Tolerances tol;

    void validate() const {
        if (n < 2) throw std::invalid_argument("alpha-scan: resolution must be >= 2");
        if (!(alpha_hi > alpha_lo) || alpha_lo <= 0.0 ||
            alpha_hi >= 2.0 * std::numbers::pi)
            throw std::invalid_argument(
                "alpha-scan: range must sit strictly inside (0, 2*pi)");
        if (r1 < 1.0 || r2 < 1.0)
            throw std::invalid_argument("alpha-scan: r1, r2 must be >= 1");
    }
};

struct AlphaScanRecord {
    long long index = 0;
    double alpha = 0, s2 = 0;
    bool star_holds = false, simple_holds = false, shimizu_fires = false;
    RegionTag tag = RegionTag::type_b;
    int k = 0;
    double trace_wa_k = 0;
    double re_trace_wb = 0, im_trace_wb = 0;
    Verdict verdict = Verdict::undetermined;
};

inline std::vector<AlphaScanRecord> run_alpha_scan(const AlphaScanConfig& cfg) {
    cfg.validate();
    std::vector<AlphaScanRecord> out(static_cast<std::size_t>(cfg.n));
    DecideOptions opts = cfg.decide_opts;
    opts.witness_search = cfg.witness_search;
    detail::parallel_for(cfg.n, cfg.workers, [&](long long i) {
        AlphaScanRecord rec;
        rec.index = i;
        rec.alpha = cfg.alpha_lo +
                    (cfg.alpha_hi - cfg.alpha_lo) * static_cast<double>(i) / (cfg.n - 1);
        const double s = std::sin(rec.alpha / 2.0);
        rec.s2 = s * s;
        const Decision d = decide(cfg.r1, cfg.r2, rec.alpha, opts, cfg.tol);
        rec.star_holds = d.star.holds;
        rec.simple_holds = d.simple;
        rec.shimizu_fires = d.shimizu.non_discrete;
        rec.tag = d.region.tag;
        rec.k = d.region.k;
        rec.trace_wa_k = d.trace_wa_k;
        rec.re_trace_wb = d.trace_wb.real();
        rec.im_trace_wb = d.trace_wb.imag();
        rec.verdict = d.verdict;
        out[static_cast<std::size_t>(i)] = rec;
    });
    return out;
}

// ---------------------------------------------------------------- output

inline void write_region_csv(std::ostream& os, const std::vector<RegionScanRecord>& recs) {
    os << "index,r1,r2,X,Y,xy_defined,valid,region,k,all_alpha_discrete,"
          "phi_k_satisfied,star_s2,simple_s2,shimizu_s2,wb_kind,wb_alpha1,wb_alpha2\n";
    for (const auto& r : recs) {
        os << r.index << ',' << fmt17(r.r1) << ',' << fmt17(r.r2) << ',' << fmt17(r.x)
           << ',' << fmt17(r.y) << ',' << (r.xy_defined ? 1 : 0) << ','
           << (r.valid ? 1 : 0) << ',' << to_string(r.tag) << ',' << r.k << ','
           << (r.all_alpha ? 1 : 0) << ',' << (r.phi_k_ok ? 1 : 0) << ','
           << fmt17(r.star_s2) << ',' << fmt17(r.simple_s2) << ',' << fmt17(r.shimizu_s2)
           << ',' << r.wb_kind << ',' << fmt17(r.wb_alpha1) << ',' << fmt17(r.wb_alpha2)
           << '\n';
    }
}

inline void write_region_json(std::ostream& os, const std::vector<RegionScanRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs) {
        arr.push_back({{"index", r.index},
                       {"r1", r.r1},
                       {"r2", r.r2},
                       {"X", r.x},
                       {"Y", r.y},
                       {"xy_defined", r.xy_defined},
                       {"valid", r.valid},
                       {"region", to_string(r.tag)},
                       {"k", r.k},
                       {"all_alpha_discrete", r.all_alpha},
                       {"phi_k_satisfied", r.phi_k_ok},
                       {"star_s2", r.star_s2},
                       {"simple_s2", r.simple_s2},
                       {"shimizu_s2", r.shimizu_s2},
                       {"wb_kind", r.wb_kind},
                       {"wb_alpha1", r.wb_alpha1},
                       {"wb_alpha2", r.wb_alpha2}});
    }
    os << arr.dump(2) << '\n';
}

inline void write_alpha_csv(std::ostream& os, const std::vector<AlphaScanRecord>& recs) {
    os << "index,alpha,sin2_half,star_holds,simple_holds,shimizu_fires,region,k,"
          "trace_wa_k,re_trace_wb,im_trace_wb,verdict\n";
    for (const auto& r : recs) {
        os << r.index << ',' << fmt17(r.alpha) << ',' << fmt17(r.s2) << ','
           << (r.star_holds ? 1 : 0) << ',' << (r.simple_holds ? 1 : 0) << ','
           << (r.shimizu_fires ? 1 : 0) << ',' << to_string(r.tag) << ',' << r.k << ','
           << fmt17(r.trace_wa_k) << ',' << fmt17(r.re_trace_wb) << ','
           << fmt17(r.im_trace_wb) << ',' << to_string(r.verdict) << '\n';
    }
}

inline void write_alpha_json(std::ostream& os, const std::vector<AlphaScanRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs) {
        arr.push_back({{"index", r.index},
                       {"alpha", r.alpha},
                       {"sin2_half", r.s2},
                       {"star_holds", r.star_holds},
                       {"simple_holds", r.simple_holds},
                       {"shimizu_fires", r.shimizu_fires},
                       {"region", to_string(r.tag)},
                       {"k", r.k},
                       {"trace_wa_k", r.trace_wa_k},
                       {"re_trace_wb", r.re_trace_wb},
                       {"im_trace_wb", r.im_trace_wb},
                       {"verdict", to_string(r.verdict)}});
    }
    os << arr.dump(2) << '\n';
}

namespace detail {

struct SvgMapper {
    double x_lo, x_hi, y_lo, y_hi;
    double w = 840.0, h = 640.0, margin = 60.0;
    double px(double x) const { return margin + (x - x_lo) / (x_hi - x_lo) * (w - 2 * margin); }
    double py(double y) const { return h - margin - (y - y_lo) / (y_hi - y_lo) * (h - 2 * margin); }
    bool inside(double x, double y) const {
        return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
    }
};

inline const char* region_colour(RegionTag tag, int k) {
    switch (tag) {
        case RegionTag::type_a: return (k % 2 == 1) ? "#4878b0" : "#6ea3d8";
        case RegionTag::type_b: return "#e8a33d";
        case RegionTag::ideal_type_b: return "#58a062";
        case RegionTag::boundary: return "#888888";
    }
    return "#000000";
}

}  // namespace detail

/// Region figure: scanned points coloured by tag, the broken type-A
/// boundary with its labelled vertices, the gradient-1/2 ray from (2, 1/2)
/// and the hyperbolae Phi_1..Phi_5.
inline void write_region_svg(std::ostream& os, const ScanConfig& cfg,
                             const std::vector<RegionScanRecord>& recs) {
    detail::SvgMapper m{cfg.x_lo, cfg.x_hi, 0.0, cfg.y_hi};
    if (cfg.mode == ScanConfig::Mode::r_grid) {
        // plot whatever maps into the figure plane
        m.x_lo = 0.0;
        m.x_hi = 3.0;
        m.y_hi = 0.6;
    }
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << m.w << "\" height=\""
       << m.h << "\" viewBox=\"0 0 " << m.w << ' ' << m.h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& r : recs) {
        if (!r.valid || !r.xy_defined || !m.inside(r.x, r.y)) continue;
        os << "<circle cx=\"" << m.px(r.x) << "\" cy=\"" << m.py(r.y)
           << "\" r=\"2.4\" fill=\"" << detail::region_colour(r.tag, r.k) << "\"/>\n";
    }

    // axes
    os << "<line x1=\"" << m.px(m.x_lo) << "\" y1=\"" << m.py(0) << "\" x2=\""
       << m.px(m.x_hi) << "\" y2=\"" << m.py(0) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << m.px(std::max(0.0, m.x_lo)) << "\" y1=\"" << m.py(m.y_lo)
       << "\" x2=\"" << m.px(std::max(0.0, m.x_lo)) << "\" y2=\"" << m.py(m.y_hi)
       << "\" stroke=\"black\"/>\n";

    // broken line through (2/k, 1/(k(k+1))) and the ray of gradient 1/2
    os << "<polyline fill=\"none\" stroke=\"#b03030\" stroke-width=\"2\" points=\"";
    const auto verts = region_boundary_vertices(40);
    for (auto it = verts.rbegin(); it != verts.rend(); ++it)
        if (it->first >= m.x_lo - 1e-9 && it->first <= m.x_hi + 1e-9)
            os << m.px(it->first) << ',' << m.py(it->second) << ' ';
    if (m.x_hi > 2.0)
        os << m.px(m.x_hi) << ',' << m.py(0.5 + (m.x_hi - 2.0) / 2.0);
    os << "\"/>\n";

    for (const auto& [vx, vy] : region_boundary_vertices(3)) {
        if (!m.inside(vx, vy)) continue;
        os << "<circle cx=\"" << m.px(vx) << "\" cy=\"" << m.py(vy)
           << "\" r=\"3\" fill=\"#b03030\"/>\n";
        os << "<text x=\"" << m.px(vx) + 6 << "\" y=\"" << m.py(vy) - 6
           << "\" font-size=\"13\">(" << fmt17(vx).substr(0, 7) << ", "
           << fmt17(vy).substr(0, 7) << ")</text>\n";
    }

    // Phi_k hyperbolae over their strips
    for (int k = 1; k <= 5; ++k) {
        const double lo = std::max(2.0 / k, m.x_lo);
        const double hi = std::min(k == 1 ? m.x_hi : 2.0 / (k - 1), m.x_hi);
        if (!(hi > lo)) continue;
        os << "<polyline fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"1.5\" "
              "stroke-dasharray=\"5,3\" points=\"";
        for (int i = 0; i <= 64; ++i) {
            const double x = lo + (hi - lo) * i / 64.0;
            const double y = phi_k(k, x);
            if (y < 0.0 || y > m.y_hi) continue;
            os << m.px(x) << ',' << m.py(y) << ' ';
        }
        os << "\"/>\n";
    }

    os << "<text x=\"" << m.px(m.x_hi) - 20 << "\" y=\"" << m.py(0) + 30
       << "\" font-size=\"14\">X</text>\n";
    os << "<text x=\"" << m.px(std::max(0.0, m.x_lo)) - 30 << "\" y=\"" << m.py(m.y_hi)
       << "\" font-size=\"14\">Y</text>\n";
    os << "</svg>\n";
}

}  // namespace ultrapar
