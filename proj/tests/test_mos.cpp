#include "pnforge/mos.hpp"

#include "support/datasets.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace pnforge;
using testdata::q;

namespace {
const BiPoly u = BiPoly::u(), v = BiPoly::v();
const Metric mk = Metric::minkowski31();

PolyVec flip_r(PolyVec x) {
    x[3] = -x[3];
    return x;
}

template <std::size_t N>
std::array<MOSHermitePoint, N> as_array(const std::vector<MOSHermitePoint>& v) {
    std::array<MOSHermitePoint, N> a;
    for (std::size_t k = 0; k < N; ++k) a[k] = v[k];
    return a;
}
}  // namespace

TEST_CASE("first forms") {
    PolyVec x{u, v, BiPoly(), u * u};
    auto F = minkowski_first_form(x);
    CHECK(F.E == BiPoly(1) - BiPoly(4) * u * u);
    CHECK(F.F.is_zero());
    CHECK(F.G == BiPoly(1));
    try {
        mos_certify(x);
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotMOS);
    }
    auto Fe = euclidean_first_form(PolyVec{u, v, u * v});
    CHECK(Fe.discriminant() == BiPoly(1) + u * u + v * v);
    CHECK(mos_certify(PolyVec{u, v, BiPoly(), BiPoly(1)}) == BiPoly(1));
}

TEST_CASE("quadratic MOS family of the isotropic sphere field") {
    auto n = testdata::isotropic_sphere_field();
    auto fam = mos_family(n, std::nullopt, 1);
    REQUIRE(fam.dimension() == 5);
    std::vector<PolyVec> xs;
    for (std::size_t k = 0; k < 5; ++k) {
        auto p = fam.patch(k);
        CHECK(check_mos_patch(p));
        auto F = minkowski_first_form(p.x);
        CHECK(F.discriminant() == p.sigma * p.sigma);
        xs.push_back(p.x);
    }
    std::vector<PolyVec> shown;
    for (auto& g : testdata::mos_quadratic_generators()) shown.push_back(flip_r(g));
    CHECK(oracle::same_span(xs, shown));

    // the displayed generators belong to the companion field with n4 negated
    NormalField companion = n;
    companion.n[3] = -companion.n[3];
    CHECK(inner(companion.n, companion.n, mk).is_zero());
    auto fam2 = mos_family(companion, std::nullopt, 1);
    std::vector<PolyVec> ys;
    for (std::size_t k = 0; k < fam2.dimension(); ++k) ys.push_back(fam2.family.surface(k));
    CHECK(oracle::same_span(ys, testdata::mos_quadratic_generators()));
}

TEST_CASE("MOS Hermite quad, degree 6") {
    MOSOptions opt;
    auto r = hermite_quad_mos(as_array<4>(testdata::mos_quad()), 6, opt);
    REQUIRE(r.dimension() == 8);
    auto nq = testdata::mos_quad_normals();
    for (std::size_t k = 0; k < 4; ++k) CHECK(r.corner_normals[k].nplus == nq[k][0]);
    auto p = r.member({q(1), q(0), q(-1, 2), q(0), q(0), q(3), q(0), q(1, 5)});
    CHECK(check_mos_patch(p));
    for (const auto& res : r.corner_residuals(p.x))
        for (const auto& c : res) CHECK(sgn(c) == 0);
    for (const auto& res : r.corner_normal_residuals(p.x))
        for (const auto& c : res) CHECK(sgn(c) == 0);
    CHECK_THROWS_AS(hermite_quad_mos(as_array<4>(testdata::mos_quad()), 5, opt), Error);
}

TEST_CASE("MOS Hermite triangle, degree 4") {
    auto r = hermite_tri_mos(as_array<3>(testdata::mos_tri()), 4);
    REQUIRE(r.dimension() == 7);
    CHECK(r.construction.field.n == testdata::mos_tri_nplus());
    auto p = r.representative();
    CHECK(check_mos_patch(p));
    for (const auto& res : r.corner_normal_residuals(p.x))
        for (const auto& c : res) CHECK(sgn(c) == 0);
    std::vector<int> tried;
    auto s = hermite_mos_search(testdata::mos_tri(), {}, &tried);
    CHECK(s.degree() == 4);
}

TEST_CASE("envelope of a constant-radius plane family") {
    PolyVec x{u, v, BiPoly(), BiPoly(1)};
    auto env = envelope(x, mos_certify(x));
    CHECK(check_envelope(x, env).all());
    for (const auto* b : {&env.bplus, &env.bminus}) {
        auto z = divide_exact(b->num[2], b->den);
        REQUIRE(z.has_value());
        CHECK((*z == BiPoly(1) || *z == BiPoly(-1)));
        CHECK(divide_exact(b->num[0], b->den) == u);
        CHECK(divide_exact(b->num[1], b->den) == v);
    }
    CHECK(divide_exact(env.bplus.num[2], env.bplus.den) != divide_exact(env.bminus.num[2], env.bminus.den));
    // r = 0 on a plane: the medial form vanishes identically
    CHECK_THROWS_AS(envelope(PolyVec{u, u, BiPoly(), BiPoly()}, BiPoly()), Error);
}

TEST_CASE("envelope of a Hermite MOS member") {
    auto r = hermite_tri_mos(as_array<3>(testdata::mos_tri()), 4);
    auto p = r.member({q(0), q(1), q(0), q(0), q(-1, 3), q(0), q(0)});
    auto env = envelope(p);
    auto chk = check_envelope(p.x, env);
    CHECK(chk.unit_normals);
    CHECK(chk.distance);
    CHECK(chk.perpendicular);
    auto pt = env.bplus.eval(0.25, 0.25);
    for (double c : pt) CHECK(std::isfinite(c));
}
