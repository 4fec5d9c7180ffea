#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "ultrapar/heisenberg.hpp"

using namespace ultrapar;
using testutil::Rng;

TEST_CASE("stereographic projection", "[heisenberg]") {
    const HeisPoint o = stereo_project({0, 0, 1});
    CHECK_FALSE(o.infinite);
    CHECK(std::abs(o.zeta) < 1e-15);
    CHECK(o.v == Approx(0.0).margin(1e-15));

    CHECK(stereo_project({1, 0, 0}).infinite);

    const HVector p{cplx(0, 1), 0, 1};
    REQUIRE(classify_vector(p) == VectorClass::null);
    const HeisPoint q = stereo_project(p);
    CHECK(std::abs(q.zeta) < 1e-15);
    CHECK(q.v == Approx(1.0));

    CHECK_THROWS_AS(stereo_project({0, 1, 0}), std::domain_error);
}

TEST_CASE("null lift round trip", "[heisenberg]") {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const HeisPoint p = HeisPoint::finite(testutil::random_cplx(rng, 3),
                                              rng.uniform(-5, 5));
        const HVector z = null_lift(p);
        CHECK(classify_vector(z) == VectorClass::null);
        const HeisPoint q = stereo_project(z);
        CHECK(std::abs(q.zeta - p.zeta) < 1e-12);
        CHECK(q.v == Approx(p.v).margin(1e-12));
    }
    CHECK(stereo_project(null_lift(HeisPoint::at_infinity())).infinite);
}

TEST_CASE("cygan metric basics", "[heisenberg]") {
    const HeisPoint o = HeisPoint::finite(0, 0);
    CHECK(cygan_distance(o, HeisPoint::finite(1, 0)) == Approx(1.0));
    CHECK(cygan_distance(o, HeisPoint::finite(0, 1)) == Approx(1.0));

    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const cplx zeta = testutil::random_cplx(rng, 2);
        const double v = rng.uniform(-4, 4);
        const HeisPoint p = HeisPoint::finite(zeta, v);
        CHECK(cygan_distance(o, p) ==
              Approx(std::sqrt(std::abs(cplx(std::norm(zeta), -v)))).margin(1e-12));
        CHECK(cygan_distance(p, o) == Approx(cygan_distance(o, p)).margin(1e-14));
        CHECK(cygan_distance(p, p) == 0.0);
    }
    CHECK_THROWS_AS(cygan_distance(o, HeisPoint::at_infinity()), std::invalid_argument);
}

TEST_CASE("cygan metric axioms on random triples", "[heisenberg]") {
    Rng rng(13);
    int violations = 0;
    for (int i = 0; i < 2000; ++i) {
        const HeisPoint a = HeisPoint::finite(testutil::random_cplx(rng, 3), rng.uniform(-5, 5));
        const HeisPoint b = HeisPoint::finite(testutil::random_cplx(rng, 3), rng.uniform(-5, 5));
        const HeisPoint c = HeisPoint::finite(testutil::random_cplx(rng, 3), rng.uniform(-5, 5));
        if (cygan_distance(a, c) > cygan_distance(a, b) + cygan_distance(b, c) + 1e-12)
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("heisenberg translations", "[heisenberg]") {
    const double t = 1.7;
    const Isometry vert = heis_translation(0, t);
    CHECK(std::abs(vert.at(0, 2) - cplx(0, t)) < 1e-15);
    CHECK(std::abs(vert.at(0, 1)) + std::abs(vert.at(1, 2)) < 1e-15);

    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        const cplx tau = testutil::random_cplx(rng, 2);
        const double s = rng.uniform(-3, 3);
        const Isometry m = heis_translation(tau, s);
        CHECK(m.form_residual() < 1e-12);

        // action on the origin lands on (tau, s)
        const HeisPoint img = boundary_action(m, HeisPoint::finite(0, 0));
        CHECK(std::abs(img.zeta - tau) < 1e-12);
        CHECK(img.v == Approx(s).margin(1e-12));

        // matrix action matches the boundary formula everywhere
        const HeisPoint p = HeisPoint::finite(testutil::random_cplx(rng, 2), rng.uniform(-3, 3));
        const HeisPoint via_matrix = boundary_action(m, p);
        const HeisPoint via_formula = heis_translate(tau, s, p);
        CHECK(std::abs(via_matrix.zeta - via_formula.zeta) < 1e-11);
        CHECK(via_matrix.v == Approx(via_formula.v).margin(1e-11));

        // composition law of the translation matrices
        const cplx tau2 = testutil::random_cplx(rng, 2);
        const double s2 = rng.uniform(-3, 3);
        const Isometry prod = m * heis_translation(tau2, s2);
        const Isometry direct = heis_translation(
            tau + tau2, s + s2 + 2.0 * (tau * std::conj(tau2)).imag());
        CHECK(prod.max_entry_distance(direct) < 1e-12);
    }
}

TEST_CASE("cygan distance is translation invariant", "[heisenberg]") {
    Rng rng(34);
    for (int i = 0; i < 200; ++i) {
        const cplx tau = testutil::random_cplx(rng, 2);
        const double t = rng.uniform(-3, 3);
        const HeisPoint p = HeisPoint::finite(testutil::random_cplx(rng, 3), rng.uniform(-4, 4));
        const HeisPoint q = HeisPoint::finite(testutil::random_cplx(rng, 3), rng.uniform(-4, 4));
        const double before = cygan_distance(p, q);
        const double after = cygan_distance(heis_translate(tau, t, p), heis_translate(tau, t, q));
        CHECK(after == Approx(before).margin(1e-10));
    }
}

TEST_CASE("I2 I1 is the expected heisenberg translation", "[heisenberg]") {
    Rng rng(55);
    for (int i = 0; i < 100; ++i) {
        const auto pr = testutil::random_params(rng);
        const TriangleParams p = TriangleParams::from_r(pr.r1, pr.r2, pr.alpha);
        const TriangleRep rep = build_rep(p);
        const Isometry g = rep.i2 * rep.i1;

        const cplx eit = std::polar(1.0, p.theta);
        const cplx xi = 2.0 * (p.r1 * std::conj(eit) + p.r2 * eit);
        const double v_mag = std::abs(8.0 * p.r1 * p.r2 * std::sin(2.0 * p.theta));

        const cplx xi_m = g.at(1, 2) / std::numbers::sqrt2;
        const double v_m = g.at(0, 2).imag();
        CHECK(std::abs(xi_m - xi) < 1e-10 * (1.0 + std::abs(xi)));
        CHECK(std::abs(v_m) == Approx(v_mag).margin(1e-9));
        CHECK(g.max_entry_distance(heis_translation(xi, v_m)) < 1e-10);
    }
}

TEST_CASE("chains and their polar vectors", "[heisenberg]") {
    const double s2 = std::numbers::sqrt2;
    const Chain unit = chain_from_polar({1.0 / s2, 0.0, 1.0 / s2});
    REQUIRE(unit.kind == Chain::Kind::finite);
    CHECK(std::abs(unit.zeta0) < 1e-14);
    CHECK(unit.v0 == Approx(0.0).margin(1e-14));
    CHECK(unit.radius == Approx(1.0));

    const cplx z0(0.7, -0.2);
    const Chain vert = chain_from_polar({-s2 * std::conj(z0), 1.0, 0.0});
    REQUIRE(vert.kind == Chain::Kind::vertical);
    CHECK(std::abs(vert.zeta0 - z0) < 1e-14);

    CHECK(projectively_equal(polar_of_chain(Chain::vertical(0)), {0, 1, 0}));

    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Chain ch = rng.integer(0, 1) == 0
                       ? Chain::vertical(testutil::random_cplx(rng, 2))
                       : Chain::finite(HeisPoint::finite(testutil::random_cplx(rng, 2),
                                                         rng.uniform(-2, 2)),
                                       rng.uniform(0.2, 2.5));
        const cplx lambda = cplx(rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0));
        const Chain back = chain_from_polar(scale_vec(polar_of_chain(ch), lambda));
        REQUIRE(back.kind == ch.kind);
        CHECK(std::abs(back.zeta0 - ch.zeta0) < 1e-10);
        if (ch.kind == Chain::Kind::finite) {
            CHECK(back.v0 == Approx(ch.v0).margin(1e-10));
            CHECK(back.radius == Approx(ch.radius).margin(1e-10));
        }
    }
}

TEST_CASE("vertical chain inversion acts by half turns", "[heisenberg]") {
    const cplx xi(1.2, -0.4);
    CHECK(std::abs(vertical_inversion_action(0, xi) + xi) < 1e-15);
    CHECK(std::abs(vertical_inversion_action(xi, xi) - xi) < 1e-15);

    Rng rng(29);
    for (int i = 0; i < 100; ++i) {
        const cplx zeta = testutil::random_cplx(rng, 2);
        const cplx target = testutil::random_cplx(rng, 2);
        const Isometry inv = reflection_matrix(polar_of_chain(Chain::vertical(zeta)));
        const HVector moved = apply(inv, polar_of_chain(Chain::vertical(target)));
        const Chain back = chain_from_polar(moved);
        REQUIRE(back.kind == Chain::Kind::vertical);
        CHECK(std::abs(back.zeta0 - vertical_inversion_action(zeta, target)) < 1e-10);
    }
}

TEST_CASE("isometric sphere radius", "[heisenberg]") {
    const TriangleRep rep = build_rep(1.3, 1.1, 2.0);
    CHECK(isometric_sphere_radius(rep.i3) == Approx(1.0));

    Rng rng(6);
    for (int i = 0; i < 30; ++i) {
        const Isometry t = heis_translation(testutil::random_cplx(rng, 2), rng.uniform(-2, 2));
        const Isometry h = t * rep.i3 * t.inverse();
        CHECK(isometric_sphere_radius(h) ==
              Approx(1.0 / std::sqrt(std::abs(h.at(2, 0)))).margin(1e-13));
    }
    CHECK_THROWS_AS(isometric_sphere_radius(heis_translation(1, 0)), std::domain_error);
}

TEST_CASE("unit spinal sphere and I3 invariance", "[heisenberg]") {
    CHECK(unit_spinal_residual(HeisPoint::finite(1, 0)) == Approx(0.0).margin(1e-15));
    CHECK(unit_spinal_residual(HeisPoint::finite(0, 0)) == Approx(-1.0));
    CHECK_THROWS_AS(unit_spinal_residual(HeisPoint::at_infinity()), std::invalid_argument);

    const TriangleRep rep = build_rep(2.0, 1.5, 1.0);
    for (int i = 0; i < 20; ++i) {
        // sample the sphere |zeta|^4 + v^2 = 1
        const double rho = 0.05 + 0.9 * i / 19.0;
        const double phi = 0.37 * i;
        const double v = std::sqrt(1.0 - rho * rho * rho * rho) * (i % 2 ? 1.0 : -1.0);
        const HeisPoint p = HeisPoint::finite(std::polar(rho, phi), v);
        REQUIRE(std::abs(unit_spinal_residual(p)) < 1e-12);
        const HeisPoint q = boundary_action(rep.i3, p);
        CHECK(std::abs(unit_spinal_residual(q)) < 1e-9);
    }
}

TEST_CASE("shimizu certificate", "[heisenberg]") {
    // ideal isosceles threshold: fires iff sin^2(alpha/2) < (3 - 2 sqrt 2)/64
    const double thr = (3.0 - 2.0 * std::numbers::sqrt2) / 64.0;
    const double below = 2.0 * std::asin(std::sqrt(thr * 0.9));
    const double above = 2.0 * std::asin(std::sqrt(thr * 1.1));
    const ShimizuReport fires = shimizu_test(TriangleParams::from_r(1, 1, below));
    CHECK(fires.non_discrete);
    CHECK(fires.direct_agrees);
    const ShimizuReport idle = shimizu_test(TriangleParams::from_r(1, 1, above));
    CHECK_FALSE(idle.non_discrete);
    CHECK(idle.direct_agrees);

    // at alpha = pi the right side is far above 1: |xi|^2 = 16
    const ShimizuReport far = shimizu_test(TriangleParams::from_r(1, 1, std::numbers::pi));
    CHECK_FALSE(far.non_discrete);
    CHECK(std::norm(far.xi) == Approx(16.0).margin(1e-12));
    CHECK(far.rhs > 1.0);

    // the branch split follows the sign of the quartic discriminant
    auto quartic = [](double r1, double r2) {
        return 34.0 * r1 * r1 * r2 * r2 - 15.0 * std::pow(r1, 4) - 15.0 * std::pow(r2, 4) +
               2.0 * r1 * r1 + 2.0 * r2 * r2;
    };
    const ShimizuReport iso = shimizu_test(TriangleParams::from_r(1.5, 1.5, 1.0));
    REQUIRE(quartic(1.5, 1.5) >= 0.0);
    CHECK(iso.case_tag == 1);
    CHECK(iso.branch_disc == Approx(quartic(1.5, 1.5)).epsilon(1e-12));
    const ShimizuReport sep = shimizu_test(TriangleParams::from_r(2.0, 1.0, 1.0));
    REQUIRE(quartic(2.0, 1.0) < 0.0);
    CHECK(sep.case_tag == 2);

    // degenerate corner: real branch roots but d <= 0. The reduced system
    // demands X < d as well, so the certificate must stay silent even though
    // the smaller quadratic root is positive.
    {
        const double r1 = 3.3, r2 = 3.0;
        REQUIRE(quartic(r1, r2) >= 0.0);
        const ShimizuCoefficients co = shimizu_coefficients(r1, r2);
        REQUIRE(co.d <= 0.0);
        REQUIRE(co.b - std::sqrt(co.branch_disc) > 0.0);
        CHECK(co.x_threshold <= 0.0);
        for (double alpha : {1e-4, 1e-3, 0.01, 0.4}) {
            const ShimizuReport edge = shimizu_test(TriangleParams::from_r(r1, r2, alpha));
            CHECK_FALSE(edge.non_discrete);
            CHECK(edge.rhs_direct > 1.0);
            CHECK(edge.direct_agrees);
        }
    }

    // sign identity: d^2 - 2bd + c = -2d(r1^2+r2^2) - 16(r1-r2)^4, negative once d > 0
    testutil::Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const auto pr = testutil::random_params(rng);
        const ShimizuReport rep = shimizu_test(TriangleParams::from_r(pr.r1, pr.r2, pr.alpha));
        const double lhs = rep.d_coef * rep.d_coef - 2.0 * rep.b_coef * rep.d_coef + rep.c_coef;
        const double P2 = (pr.r1 - pr.r2) * (pr.r1 - pr.r2);
        const double rhs = -2.0 * rep.d_coef * (pr.r1 * pr.r1 + pr.r2 * pr.r2) -
                           16.0 * P2 * P2;
        CHECK(lhs == Approx(rhs).margin(1e-9 * (1.0 + std::abs(rhs))));
        if (rep.d_coef > 0.0) CHECK(lhs < 0.0);
        CHECK(std::abs(rep.rhs - rep.rhs_direct) < 1e-8 * (1.0 + rep.rhs));
    }
}
