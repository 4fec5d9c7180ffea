#include <catch2/catch.hpp>

#include "ultrapar/oracle.hpp"

using namespace ultrapar;

TEST_CASE("oracle suites pass on defaults", "[oracle]") {
    OracleOptions opt;
    opt.samples = 200;
    const auto suites = run_oracle_suites(opt);
    REQUIRE(suites.size() == 4);
    for (const auto& s : suites) {
        INFO(s.name << " " << s.detail);
        CHECK(s.pass);
        CHECK(s.checked > 0);
    }
    CHECK(oracle_all_pass(suites));
}

TEST_CASE("oracle reports are reproducible for a fixed seed", "[oracle]") {
    OracleOptions opt;
    opt.seed = 424242;
    opt.samples = 120;
    const std::string first = format_oracle_report(run_oracle_suites(opt));
    const std::string second = format_oracle_report(run_oracle_suites(opt));
    CHECK(first == second);

    OracleOptions other = opt;
    other.seed = 424243;
    CHECK(format_oracle_report(run_oracle_suites(other)) != first);
}

TEST_CASE("injected trace perturbation is caught", "[oracle]") {
    OracleOptions opt;
    opt.samples = 50;
    opt.inject_trace_error = true;
    const auto suites = run_oracle_suites(opt);
    CHECK_FALSE(suites[0].pass);  // the trace suite
    CHECK_FALSE(oracle_all_pass(suites));
}
