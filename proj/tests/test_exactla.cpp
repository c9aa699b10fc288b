#include "pnforge/exactla.hpp"
#include "pnforge/pn.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace pnforge;

namespace {

LinearSystem<Rational> random_system(oracle::Random& rng, std::size_t m, std::size_t n, int sparsity) {
    LinearSystem<Rational> sys{Matrix<Rational>(m, n), std::vector<Rational>(m), {}};
    for (std::size_t c = 0; c < n; ++c) sys.labels.push_back({0, static_cast<int>(c), 0, 0});
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng.integer(0, sparsity) == 0) sys.matrix(r, c) = rng.rational(6, 3);
    return sys;
}

}  // namespace

TEST_CASE("linear forms") {
    using LF = LinearForm<Rational>;
    LF a = LF::unknown(0, 2) + LF::unknown(1) + LF(3);
    LF b = LF::unknown(1, -1);
    LF s = a + b;
    CHECK(s.coeffs().size() == 1);
    CHECK(s.evaluate({Rational(5), Rational(100)}) == 13);
    CHECK((a * LF(2)).constant() == 6);
    CHECK_THROWS_AS(a * b, Error);
    try {
        (void)(a * b);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonAffineDependence);
    }
}

TEST_CASE("identity constraints match coefficients") {
    SystemBuilder<Rational> b;
    auto x = b.unknown_polyvec(1, 1);  // x0 + x1 v + x2 u (graded-lex: 1, v, u)
    CHECK(b.unknowns() == 3);
    LinPoly<Rational> target = LinPoly<Rational>::u() + LinPoly<Rational>(LinearForm<Rational>(Rational(2)));
    b.add_identity_zero(x[0] - target);
    auto fam = solve_affine(b.build());
    CHECK(fam.dimension() == 0);
    auto sol = assemble(fam.labels, fam.particular, 1);
    CHECK(sol[0] == BiPoly::u() + BiPoly(2));
}

TEST_CASE("rank agrees with textbook elimination") {
    oracle::Random rng(7);
    for (int t = 0; t < 60; ++t) {
        std::size_t m = rng.integer(1, 7), n = rng.integer(1, 7);
        auto sys = random_system(rng, m, n, rng.integer(0, 3));
        oracle::Rows rows(m, std::vector<Rational>(n));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c) rows[r][c] = sys.matrix(r, c);
        CHECK(rank(sys.matrix) == oracle::gauss_rank(rows));
    }
}

TEST_CASE("nullspace and affine solutions are exact") {
    oracle::Random rng(99);
    for (int t = 0; t < 40; ++t) {
        std::size_t m = rng.integer(1, 6), n = rng.integer(2, 8);
        auto sys = random_system(rng, m, n, 1);
        // rhs in the image so the system is consistent
        std::vector<Rational> x0(n);
        for (auto& x : x0) x = rng.rational();
        sys.rhs = sys.matrix.apply(x0);
        auto fam = solve_affine(sys);
        CHECK(fam.dimension() + fam.rank == n);
        CHECK(satisfies(sys, fam.particular));
        for (const auto& b : fam.basis) CHECK(satisfies(sys, b, true));
        std::vector<Rational> t2(fam.dimension());
        for (auto& s : t2) s = rng.rational();
        CHECK(satisfies(sys, fam.member(t2)));
        auto ker = nullspace(sys);
        CHECK(ker.dimension() == fam.dimension());
    }
}

TEST_CASE("inconsistent systems are rejected") {
    LinearSystem<Rational> sys{Matrix<Rational>(2, 1), {Rational(1), Rational(2)}, {{0, 0, 0, 0}}};
    sys.matrix(0, 0) = 1;
    sys.matrix(1, 0) = 1;
    try {
        solve_affine(sys);
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Inconsistent);
    }
}

TEST_CASE("elimination over Q(sqrt 2)") {
    using K = QSqrt2;
    K r = K::root();
    LinearSystem<K> sys{Matrix<K>(2, 2), {K(1), K(0)}, {{0, 0, 0, 0}, {0, 1, 0, 0}}};
    sys.matrix(0, 0) = r;
    sys.matrix(0, 1) = K(1);
    sys.matrix(1, 0) = K(1);
    sys.matrix(1, 1) = -r;
    auto fam = solve_affine(sys);
    REQUIRE(fam.dimension() == 0);
    CHECK(satisfies(sys, fam.particular));
    CHECK(fam.particular[0] == r / K(3));
    // rank drops when the rows become dependent over the extension
    sys.matrix(1, 1) = K(1) / r;
    CHECK(rank(sys.matrix) == 1);
}
