#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "ultrapar/triangle.hpp"

using namespace ultrapar;
using testutil::Rng;

namespace {

// two independent solutions of <z, c> = 0 for the row (conj c3, conj c2, conj c1)
std::pair<HVector, HVector> orthogonal_pair(const HVector& c) {
    const cplx a = std::conj(c.z3), b = std::conj(c.z2), d = std::conj(c.z1);
    if (std::abs(a) > 0.5) return {{-b, a, 0.0}, {-d, 0.0, a}};
    if (std::abs(b) > 0.5) return {{b, -a, 0.0}, {0.0, -d, b}};
    return {{d, 0.0, -a}, {0.0, d, -b}};
}

}  // namespace

TEST_CASE("build_rep at the ideal symmetric point", "[triangle]") {
    const TriangleRep rep = build_rep(1.0, 1.0, std::numbers::pi);
    CHECK(rep.params.theta == Approx(0.0).margin(1e-15));
    CHECK(std::abs(rep.c1.z1 - cplx(std::numbers::sqrt2)) < 1e-15);
    CHECK(rep.c1.z2 == cplx(1.0));
    CHECK(std::abs(rep.c2.z1 - cplx(-std::numbers::sqrt2)) < 1e-15);
    // m = 0: the pairing magnitude equals cosh(0/2) = 1
    CHECK(std::abs(herm(rep.c2, rep.c1)) == Approx(1.0).margin(1e-14));
}

TEST_CASE("build_rep parameter validation", "[triangle]") {
    CHECK_THROWS_AS(build_rep(0.5, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rep(2.0, 0.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rep(2.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rep(2.0, 1.0, 2.0 * std::numbers::pi), std::invalid_argument);

    const TriangleRep swapped = build_rep(1.5, 3.0, 1.0);
    CHECK(swapped.params.swapped);
    CHECK(swapped.params.r1 == 3.0);
    CHECK(swapped.params.r2 == 1.5);

    const TriangleParams m = TriangleParams::from_m(0.0, 0.0, 1.0);
    CHECK(m.r1 == 1.0);
    CHECK(m.r2 == 1.0);
}

TEST_CASE("pairing magnitudes and angular invariant", "[triangle]") {
    const TriangleRep rep = build_rep(2.0, 1.5, std::numbers::pi / 2.0);
    CHECK(std::abs(herm(rep.c2, rep.c1)) == Approx(1.0).margin(1e-14));
    CHECK(std::abs(herm(rep.c3, rep.c2)) == Approx(2.0).margin(1e-14));
    CHECK(std::abs(herm(rep.c1, rep.c3)) == Approx(1.5).margin(1e-14));

    Rng rng(41);
    for (int i = 0; i < 500; ++i) {
        const auto p = testutil::random_params(rng);
        const TriangleRep r = build_rep(p.r1, p.r2, p.alpha);
        const cplx prod = herm(r.c3, r.c2) * herm(r.c1, r.c3) * herm(r.c2, r.c1);
        double diff = std::remainder(std::arg(prod) - p.alpha, 2.0 * std::numbers::pi);
        CHECK(std::abs(diff) < 1e-10);
    }
}

TEST_CASE("reflection matrices", "[triangle]") {
    const Isometry mid = reflection_matrix({0.0, 1.0, 0.0});
    CHECK(std::abs(mid.at(0, 0) - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(mid.at(1, 1) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(mid.at(2, 2) - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(mid.at(0, 1)) + std::abs(mid.at(1, 0)) < 1e-15);

    const double s2 = std::numbers::sqrt2;
    const Isometry i3 = reflection_matrix({1.0 / s2, 0.0, 1.0 / s2});
    const double expected3[3][3] = {{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(std::abs(i3.at(r, c) - cplx(expected3[r][c])) < 1e-15);

    // inversion in a vertical chain
    const cplx z0(0.4, -0.9);
    const Isometry vert = reflection_matrix({-s2 * std::conj(z0), 1.0, 0.0});
    CHECK(std::abs(vert.at(0, 0) - cplx(-1.0)) < 1e-14);
    CHECK(std::abs(vert.at(0, 1) - (-2.0 * s2 * std::conj(z0))) < 1e-14);
    CHECK(std::abs(vert.at(0, 2) - cplx(4.0 * std::norm(z0))) < 1e-14);
    CHECK(std::abs(vert.at(2, 2) - cplx(-1.0)) < 1e-14);

    CHECK_THROWS_AS(reflection_matrix({0.0, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(reflection_matrix({-1.0, 0.0, 1.0}), std::domain_error);
}

TEST_CASE("reflections are involutions fixing their geodesic", "[triangle]") {
    Rng rng(17);
    const Isometry id = Isometry::identity();
    for (int i = 0; i < 500; ++i) {
        const auto p = testutil::random_params(rng);
        const TriangleRep rep = build_rep(p.r1, p.r2, p.alpha);
        for (int k = 1; k <= 3; ++k) {
            const Isometry& m = rep.generator(k);
            CHECK((m * m).max_entry_distance(id) < 1e-9);
            CHECK(std::abs(m.det() - cplx(1.0)) < 1e-10);
            const HVector& c = k == 1 ? rep.c1 : (k == 2 ? rep.c2 : rep.c3);
            const auto [u, v] = orthogonal_pair(c);
            // points of the polar geodesic are sent to their negatives
            CHECK(projectively_equal(apply(m, u), u));
            CHECK(std::abs(herm(apply(m, u), c) + herm(u, c)) < 1e-9);
            CHECK(std::abs(herm(apply(m, v), c) + herm(v, c)) < 1e-9);
        }
    }
}

TEST_CASE("existence bound", "[triangle]") {
    for (double alpha : {0.3, 1.0, 2.0, 3.1, 4.5, 6.0})
        CHECK(existence_check(2.3, 1.4, 1.0, alpha));
    CHECK_FALSE(existence_check(1.0, 1.0, 1.0, 0.0));
    CHECK(existence_check(2.0, 2.0, 2.0, std::numbers::pi));
    CHECK_THROWS_AS(existence_check(0.4, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("verify_rep reports residuals", "[triangle]") {
    const TriangleRep good = build_rep(3.0, 2.0, 1.0);
    const RepDiagnostics d = verify_rep(good);
    CHECK(d.pass);
    for (const auto& e : d.entries)
        if (e.name.rfind("involution", 0) != 0 && e.name.rfind("form", 0) != 0)
            CHECK(e.residual < 1e-10);

    TriangleRep bad = good;
    bad.c1 = scale_vec(bad.c1, 2.0);
    const RepDiagnostics db = verify_rep(bad);
    CHECK_FALSE(db.pass);
    bool found = false;
    for (const auto& e : db.entries)
        if (e.name == "norm_c1") {
            found = true;
            CHECK(e.residual == Approx(3.0).margin(1e-12));
        }
    CHECK(found);
}
