#pragma once

#include <random>

#include "ultrapar/heisenberg.hpp"
#include "ultrapar/triangle.hpp"

// Shared test utilities: seeded parameter sampling and random
// form-preserving matrices assembled from reflections and translations.

namespace testutil {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed = 20240901ull) : eng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
    long long integer(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(eng);
    }
};

struct Params {
    double r1, r2, alpha;
};

inline Params random_params(Rng& rng, double r_max = 5.0) {
    const double r1 = rng.uniform(1.0, r_max);
    const double r2 = rng.uniform(1.0, r1);
    const double alpha = rng.uniform(1e-6, 2.0 * std::numbers::pi - 1e-6);
    return {r1, r2, alpha};
}

inline ultrapar::cplx random_cplx(Rng& rng, double scale = 1.0) {
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

/// A positive vector: the polar vector of a random finite chain.
inline ultrapar::HVector random_positive_vector(Rng& rng) {
    const auto centre = ultrapar::HeisPoint::finite(random_cplx(rng), rng.uniform(-1.5, 1.5));
    return ultrapar::polar_of_chain(
        ultrapar::Chain::finite(centre, rng.uniform(0.3, 2.0)));
}

/// Random element of the isometry group: a short product of reflections in
/// random chains and Heisenberg translations.
inline ultrapar::Isometry random_form_preserving(Rng& rng, int factors = 3) {
    ultrapar::Isometry m = ultrapar::Isometry::identity();
    for (int i = 0; i < factors; ++i) {
        if (rng.integer(0, 1) == 0)
            m = m * ultrapar::reflection_matrix(random_positive_vector(rng));
        else
            m = m * ultrapar::heis_translation(random_cplx(rng), rng.uniform(-2.0, 2.0));
    }
    return m;
}

inline ultrapar::HVector random_negative_vector(Rng& rng) {
    // <base,base> = |z2|^2 - 2 < 0, and isometries preserve the class
    const ultrapar::HVector base{-1.0, random_cplx(rng, 0.4), 1.0};
    return ultrapar::apply(random_form_preserving(rng), base);
}

}  // namespace testutil
