// Command line surface for the ultrapar library: classify single parameter
// points, scan the (r1, r2) or (X, Y) parameter plane, sweep the angular
// invariant, run the cross-module oracle suites, and search for elliptic
// witness words.
//
// Exit codes: 0 success, 2 invalid arguments, 3 internal residual failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultrapar/oracle.hpp"
#include "ultrapar/ultrapar.hpp"

using nlohmann::json;
using namespace ultrapar;

namespace {

struct ParamArgs {
    double r1 = std::nan(""), r2 = std::nan("");
    double m1 = std::nan(""), m2 = std::nan("");

    void attach(CLI::App* cmd) {
        cmd->add_option("--r1", r1, "cosh(m1/2)");
        cmd->add_option("--r2", r2, "cosh(m2/2)");
        cmd->add_option("--m1", m1, "distance m1 (alternative to --r1)");
        cmd->add_option("--m2", m2, "distance m2 (alternative to --r2)");
    }

    std::pair<double, double> resolve() const {
        double a = r1, b = r2;
        if (std::isnan(a) && !std::isnan(m1)) a = std::cosh(m1 / 2.0);
        if (std::isnan(b) && !std::isnan(m2)) b = std::cosh(m2 / 2.0);
        if (std::isnan(a) || std::isnan(b))
            throw CLI::ValidationError("parameters", "need --r1/--r2 or --m1/--m2");
        return {a, b};
    }
};

std::pair<double, double> parse_range(const std::string& text, const char* name) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError(name, "range must look like lo:hi");
    try {
        const double lo = std::stod(text.substr(0, colon));
        const double hi = std::stod(text.substr(colon + 1));
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError(name, "range must look like lo:hi");
    }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

json witness_to_json(const EllipticWitness& w) {
    std::string word_str;
    for (int l : w.word.letters) {
        if (!word_str.empty()) word_str += ' ';
        word_str += std::to_string(l);
    }
    return {{"word", w.word.letters},
            {"word_str", word_str},
            {"trace", {{"re", w.trace.real()}, {"im", w.trace.imag()}}},
            {"discriminant", w.discriminant},
            {"min_order_tested", w.min_order_tested},
            {"finite_order_detected", w.finite_order.has_value()},
            {"best_power", w.best_power},
            {"best_angle_dev", w.best_angle_dev},
            {"noise_floor", w.noise_floor}};
}

json decision_to_json(const Decision& d) {
    json evid = json::array();
    for (const auto& e : d.evidence)
        evid.push_back({{"criterion", e.criterion},
                        {"holds", e.holds},
                        {"margin", e.margin},
                        {"note", e.note}});
    json wit = json::array();
    for (const auto& w : d.witnesses) wit.push_back(witness_to_json(w));

    json region = {{"tag", to_string(d.region.tag)},
                   {"k", d.region.k},
                   {"all_alpha_discrete", d.region.all_alpha_discrete},
                   {"phi_k_satisfied", d.region.phi_k_satisfied},
                   {"xy_defined", d.region.point.defined}};
    if (d.region.point.defined) {
        region["X"] = d.region.point.x;
        region["Y"] = d.region.point.y;
    }
    if (!d.region.adjacent.empty()) {
        json adj = json::array();
        for (const auto& a : d.region.adjacent)
            adj.push_back({{"tag", to_string(a.tag)}, {"k", a.k}});
        region["adjacent"] = adj;
    }

    return {{"params",
             {{"r1", d.params.r1},
              {"r2", d.params.r2},
              {"m1", d.params.m1()},
              {"m2", d.params.m2()},
              {"alpha", d.params.alpha},
              {"theta", d.params.theta},
              {"swapped_inputs", d.params.swapped}}},
            {"verdict", to_string(d.verdict)},
            {"verdict_note", d.verdict_note},
            {"region", region},
            {"criteria", evid},
            {"traces",
             {{"w_b", {{"re", d.trace_wb.real()}, {"im", d.trace_wb.imag()}}},
              {"w_a_k", d.trace_wa_k}}},
            {"shimizu",
             {{"xi", {{"re", d.shimizu.xi.real()}, {"im", d.shimizu.xi.imag()}}},
              {"v", d.shimizu.v},
              {"lhs", d.shimizu.lhs},
              {"rhs", d.shimizu.rhs},
              {"rhs_direct", d.shimizu.rhs_direct},
              {"case", d.shimizu.case_tag},
              {"b", d.shimizu.b_coef},
              {"c", d.shimizu.c_coef},
              {"d", d.shimizu.d_coef},
              {"x_value", d.shimizu.x_value},
              {"x_threshold", d.shimizu.x_threshold},
              {"non_discrete", d.shimizu.non_discrete}}},
            {"witnesses", wit}};
}

int run_oracle(const OracleOptions& opt) {
    const auto suites = run_oracle_suites(opt);
    std::cout << format_oracle_report(suites);
    return oracle_all_pass(suites) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ultra-parallel complex hyperbolic triangle groups: "
                 "discreteness criteria, region scans and witness searches"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");

    // ------------------------------------------------------------ classify
    auto* classify = app.add_subcommand(
        "classify", "evaluate every criterion at one parameter point");
    ParamArgs cp;
    cp.attach(classify);
    double c_alpha = std::nan("");
    classify->add_option("--alpha", c_alpha, "angular invariant in (0, 2*pi)")->required();
    double c_tol = 1e-9;
    classify->add_option("--tol", c_tol, "classification band (default 1e-9)");
    DecideOptions c_opts;
    classify->add_option("--max-word-len", c_opts.max_word_len, "witness search depth");
    classify->add_option("--max-order", c_opts.max_order, "finite-order test cap");
    bool c_no_witness = false;
    classify->add_flag("--no-witness-search", c_no_witness,
                       "skip the elliptic witness fallback");
    std::string c_out;
    classify->add_option("--out", c_out, "write JSON here instead of stdout");

    // ---------------------------------------------------------------- scan
    auto* scan = app.add_subcommand("scan", "classify a rectangular parameter grid");
    std::string s_grid = "xy";
    scan->add_option("--grid", s_grid, "grid coordinates: xy (figure plane) or r1r2")
        ->check(CLI::IsMember({"xy", "r1r2"}));
    std::string s_xrange = "0:3", s_yrange = "0.01:0.6";
    scan->add_option("--xrange", s_xrange, "x range lo:hi (default 0:3)");
    scan->add_option("--yrange", s_yrange, "y range lo:hi (default 0.01:0.6)");
    std::string s_res = "61";
    scan->add_option("--resolution", s_res, "points per axis, N or NxM");
    std::string s_format = "csv";
    scan->add_option("--format", s_format, "csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    std::string s_out;
    scan->add_option("--out", s_out, "output path (default stdout)");
    int s_workers = 1;
    scan->add_option("--workers", s_workers, "parallel workers");
    double s_tol = 1e-9;
    scan->add_option("--tol", s_tol, "classification band (default 1e-9)");

    // ---------------------------------------------------------- alpha-scan
    auto* ascan = app.add_subcommand(
        "alpha-scan", "sweep the angular invariant at fixed distances");
    ParamArgs ap;
    ap.attach(ascan);
    std::string a_range = "0.02:6.26";
    ascan->add_option("--xrange", a_range, "alpha range lo:hi inside (0, 2*pi)");
    int a_res = 128;
    ascan->add_option("--resolution", a_res, "number of alpha samples");
    std::string a_format = "csv";
    ascan->add_option("--format", a_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    std::string a_out;
    ascan->add_option("--out", a_out, "output path (default stdout)");
    int a_workers = 1;
    ascan->add_option("--workers", a_workers, "parallel workers");
    double a_tol = 1e-9;
    ascan->add_option("--tol", a_tol, "classification band (default 1e-9)");
    bool a_witness = false;
    ascan->add_flag("--witness-search", a_witness,
                    "let undetermined points fall back to word enumeration");

    // -------------------------------------------------------------- oracle
    auto* oracle = app.add_subcommand(
        "oracle", "run the cross-module consistency suites");
    OracleOptions o_opts;
    oracle->add_option("--seed", o_opts.seed, "rng seed (default 12345)");
    oracle->add_option("--samples", o_opts.samples, "samples per suite (default 500)");
    oracle->add_flag("--inject-trace-error", o_opts.inject_trace_error,
                     "negative control: poison the trace suite");

    // ------------------------------------------------------ witness-search
    auto* wsearch = app.add_subcommand(
        "witness-search", "enumerate words and report elliptic witnesses");
    ParamArgs wp;
    wp.attach(wsearch);
    double w_alpha = std::nan("");
    wsearch->add_option("--alpha", w_alpha, "angular invariant")->required();
    int w_len = 12, w_order = 2000;
    double w_tol = 1e-8;
    wsearch->add_option("--max-word-len", w_len, "maximum word length (<= 20)");
    wsearch->add_option("--max-order", w_order, "finite-order test cap");
    wsearch->add_option("--tol", w_tol, "identity tolerance for powers");
    std::string w_out;
    wsearch->add_option("--out", w_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classify) {
            const auto [r1, r2] = cp.resolve();
            Tolerances tol;
            tol.deltoid = c_tol;
            c_opts.witness_search = !c_no_witness;
            const Decision d = decide(r1, r2, c_alpha, c_opts, tol);
            std::ofstream file;
            std::ostream& os = open_output(file, c_out);
            os << decision_to_json(d).dump(2) << '\n';
            if (d.conflict) {
                std::cerr << "internal residual failure: " << d.verdict_note << '\n';
                return 3;
            }
            return 0;
        }

        if (*scan) {
            ScanConfig cfg;
            cfg.mode = s_grid == "xy" ? ScanConfig::Mode::xy_grid : ScanConfig::Mode::r_grid;
            if (cfg.mode == ScanConfig::Mode::r_grid) {
                // defaults appropriate for the r plane when not given explicitly
                if (scan->count("--xrange") == 0) s_xrange = "1:4";
                if (scan->count("--yrange") == 0) s_yrange = "1:4";
            }
            std::tie(cfg.x_lo, cfg.x_hi) = parse_range(s_xrange, "--xrange");
            std::tie(cfg.y_lo, cfg.y_hi) = parse_range(s_yrange, "--yrange");
            const auto cross = s_res.find('x');
            cfg.nx = std::stoi(s_res.substr(0, cross));
            cfg.ny = cross == std::string::npos ? cfg.nx : std::stoi(s_res.substr(cross + 1));
            cfg.workers = s_workers;
            cfg.tol.deltoid = s_tol;
            const auto recs = run_region_scan(cfg);
            std::ofstream file;
            std::ostream& os = open_output(file, s_out);
            if (s_format == "csv")
                write_region_csv(os, recs);
            else if (s_format == "json")
                write_region_json(os, recs);
            else
                write_region_svg(os, cfg, recs);
            return 0;
        }

        if (*ascan) {
            AlphaScanConfig cfg;
            std::tie(cfg.r1, cfg.r2) = ap.resolve();
            std::tie(cfg.alpha_lo, cfg.alpha_hi) = parse_range(a_range, "--xrange");
            cfg.n = a_res;
            cfg.workers = a_workers;
            cfg.tol.deltoid = a_tol;
            cfg.witness_search = a_witness;
            const auto recs = run_alpha_scan(cfg);
            std::ofstream file;
            std::ostream& os = open_output(file, a_out);
            if (a_format == "csv")
                write_alpha_csv(os, recs);
            else
                write_alpha_json(os, recs);
            return 0;
        }

        if (*oracle) return run_oracle(o_opts);

        if (*wsearch) {
            const auto [r1, r2] = wp.resolve();
            const TriangleRep rep = build_rep(r1, r2, w_alpha);
            const auto witnesses = search_elliptic_infinite_order(rep, w_len, w_order, w_tol);
            json arr = json::array();
            for (const auto& w : witnesses) arr.push_back(witness_to_json(w));
            std::ofstream file;
            std::ostream& os = open_output(file, w_out);
            os << arr.dump(2) << '\n';
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
