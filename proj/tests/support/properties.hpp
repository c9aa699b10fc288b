#pragma once
// Randomized invariant suites shared by the unit tests and the acceptance
// binary. Each returns how many of `count` trials held.

#include "pnforge/factor.hpp"
#include "pnforge/geometry.hpp"

#include "support/oracles.hpp"

namespace pnforge::props {

/// Frames with exact complements: (a, b) against a × b in (3,0), and
/// (a, b, c) against their complement vector in (3,1); both role orders.
inline int duality_trials(Metric m, int count, std::uint64_t seed) {
    oracle::Random rng(seed);
    int ok = 0, done = 0;
    while (done < count) {
        std::vector<PolyVec> V, W;
        if (m == Metric::euclidean3()) {
            PolyVec a = rng.polyvec(3, 1), b = rng.polyvec(3, 1);
            V = {a, b};
            W = {cross3(a, b)};
        } else {
            PolyVec a = rng.polyvec(4, 1), b = rng.polyvec(4, 1), c = rng.polyvec(4, 1);
            V = {a, b, c};
            W = {complement_vector4(a, b, c, m)};
        }
        if (gram_det(V, m).is_zero() || gram_det(W, m).is_zero()) continue;
        if (done % 2) std::swap(V, W);
        auto c = complement_duality_check(V, W, m);
        if (c && sgn(*c) != 0) ++ok;
        ++done;
    }
    return ok;
}

inline int gram_trials(int count, std::uint64_t seed) {
    oracle::Random rng(seed);
    int ok = 0;
    for (int t = 0; t < count; ++t) {
        PolyVec a = rng.polyvec(3, 2), b = rng.polyvec(3, 2);
        auto c = cross3(a, b);
        if (gram_det({a, b}, Metric::euclidean3()) == inner(c, c, Metric::euclidean3())) ++ok;
    }
    return ok;
}

inline int square_root_trials(int count, std::uint64_t seed) {
    oracle::Random rng(seed);
    int ok = 0;
    for (int t = 0; t < count; ++t) {
        BiPoly s = rng.nonzero_poly(rng.integer(0, 4));
        auto r = perfect_square_root(s * s);
        if (r && *r * *r == s * s && (*r == s || *r == -s)) ++ok;
    }
    return ok;
}

}  // namespace pnforge::props
