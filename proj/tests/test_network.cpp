#include "pnforge/network.hpp"

#include "support/datasets.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace pnforge;
using testdata::q;

namespace {
const BiPoly u = BiPoly::u(), v = BiPoly::v();

ImplicitPoly plane_z(double c) {
    return {{{{0, 0, 1}, Rational(1)}, {{0, 0, 0}, -rationalize(c, 1e-15)}}};
}
}  // namespace

TEST_CASE("edges") {
    PolyVec x{u, v, u * v};
    CHECK(restrict_to_edge<Rational, Rational>(x, Edge::V1) == PolyVec{u, BiPoly(1), u});
    CHECK(restrict_to_edge<Rational, Rational>(x, Edge::Diagonal)[2] == u - u * u);
    CHECK(restrict_to_edge<Rational, Rational>(x, Edge::U0)[0].is_zero());
}

TEST_CASE("reflection needs an edge in the mirror plane") {
    NormalField n{{BiPoly(), BiPoly(), BiPoly(1)}, BiPoly(1), FieldKind::Pythagorean3};
    auto p = make_patch(PolyVec{u, v, BiPoly()}, n);
    auto r = reflect_extend(p, 0);
    CHECK(check_patch(r));
    CHECK(r.x[0] == -u);
    auto oct = assemble_octants(p);
    CHECK(oct.size() == 8);
    auto shifted = make_patch(PolyVec{u + BiPoly(1), v + BiPoly(1), BiPoly()}, n);
    try {
        reflect_extend(shifted, 0);
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConstraintNotSatisfied);
    }
    CHECK_THROWS_AS(reflect_extend(p, 3), Error);
}

TEST_CASE("linear side constraints") {
    auto sys = make_surface_system<Rational>(3, 2);
    add_tangency(sys, testdata::sphere_field().n, Metric::euclidean3());
    add_linear_side_constraints(sys, {{{q(1), q(0), q(0)}, Edge::U0}});
    auto fam = solve_surface(sys);
    for (std::size_t k = 0; k < fam.dimension(); ++k)
        CHECK(restrict_to_edge<Rational, Rational>(fam.direction(k), Edge::U0)[0].is_zero());
    CHECK_THROWS_AS(add_linear_side_constraints(sys, {{{q(1), q(0)}, Edge::U0}}), Error);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (int n : {1, 4, 9}) {
        auto rule = gauss_legendre01(n);
        CHECK(rule.size() == static_cast<std::size_t>(n));
        for (int k = 0; k < 2 * n; ++k) {
            double s = 0;
            for (auto [x, w] : rule) s += w * std::pow(x, k);
            CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
        }
    }
    auto tri = quadrature_nodes(Domain::triangle(), 8);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; i + j <= 5; ++j) {
            double s = 0;
            for (auto [a, b, w] : tri) s += w * std::pow(a, i) * std::pow(b, j);
            CHECK(s == doctest::Approx(oracle::triangle_monomial_integral(i, j)).epsilon(1e-13));
        }
    double area = 0;
    for (auto [a, b, w] : quadrature_nodes(Domain::square(), 3)) area += w;
    CHECK(area == doctest::Approx(1.0));
}

TEST_CASE("implicit polynomial derivatives") {
    ImplicitPoly f = ImplicitPoly::quadric(4, 9, 9, 9);
    std::array<double, 3> p{0.3, -0.2, 0.7};
    CHECK(f.value(p) == doctest::Approx(4 * 0.09 + 9 * 0.04 + 9 * 0.49 - 9));
    auto g = f.gradient(p);
    CHECK(g[0] == doctest::Approx(2.4));
    CHECK(g[2] == doctest::Approx(12.6));
    auto h = f.hessian(p);
    CHECK(h[1][1] == doctest::Approx(18));
    CHECK(h[0][1] == doctest::Approx(0));
}

TEST_CASE("Gauss-Newton recovers a plane offset") {
    SampledFamily s;
    s.directions.resize(1);
    for (auto [a, b, w] : quadrature_nodes(Domain::square(), 4)) {
        s.weights.push_back(w);
        s.base.push_back({a, b, 0.0});
        s.directions[0].push_back({0.0, 0.0, 2.0});
    }
    ImplicitPoly f = plane_z(0.75);
    CHECK(fit_objective(s, f, {0.0}) == doctest::Approx(0.5625));
    FitOptions opt;
    auto tr = gauss_newton_fit(s, f, opt);
    CHECK(tr.converged);
    REQUIRE(tr.t.size() == 1);
    CHECK(tr.t[0] == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(tr.phi < 1e-20);
}

TEST_CASE("fit selects the exact sphere member of a family") {
    // x = t·(u, v, 0) + (0, 0, 1): f = x² + y² + z² - 1 is minimized at t = 0
    NormalField n{{BiPoly(), BiPoly(), BiPoly(1)}, BiPoly(1), FieldKind::Pythagorean3};
    auto sys = make_surface_system<Rational>(3, 1);
    add_tangency(sys, n.n, Metric::euclidean3());
    add_point(sys, {0, 0}, RVec{q(0), q(0), q(1)});
    auto fam = solve_surface(sys);
    REQUIRE(fam.dimension() == 4);  // a u + b v in x and y
    auto fit = fit_to_implicit(fam, ImplicitPoly::quadric(1, 1, 1, 1));
    CHECK(fit.phi_exact < 1e-20);
    for (const auto& t : fit.t_exact) CHECK(sgn(t) == 0);
}

TEST_CASE("two-stage and direct grid solves agree") {
    auto g = testdata::sphere_grid(2, 1);
    auto a = interpolate_grid(g, 7), b = interpolate_grid_direct(g, 7);
    CHECK(a.dimension() == 23);
    CHECK(b.dimension() == a.dimension());
    CHECK(check_grid(a, a.particular).all());
    CHECK(check_grid(b, b.particular).all());
    std::vector<Rational> t(a.dimension(), Rational(0));
    t[0] = q(1, 2);
    t.back() = q(-3);
    auto net = a.member(t);
    CHECK(check_grid(a, net).all());
    CHECK(check_patch(a.patch(net, 1, 0)));

    // a corrupted member breaks the shared edge
    net[0][0][2] += u * v;
    CHECK(!check_grid(a, net).positions);
}

TEST_CASE("grid validation") {
    auto g = testdata::sphere_grid(1, 1);
    g.points[1].pop_back();
    CHECK_THROWS_AS(g.check(), Error);
}
