#include "pnforge/gaussfield.hpp"

#include "support/datasets.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <set>

using namespace pnforge;
using testdata::q;

namespace {
const Metric mk = Metric::minkowski31();

std::set<RVec> as_set(const IsotropicPair& p) { return {p.nplus, p.nminus}; }
}  // namespace

TEST_CASE("stereographic projection against the closed formula") {
    oracle::Random rng(3);
    for (int t = 0; t < 100; ++t) {
        PlanarPoint a{rng.rational(6, 5), rng.rational(6, 5)};
        RVec N = stereo_unproject(a);
        CHECK(dot(N, N) == 1);
        std::vector<std::string> warn;
        auto img = stereo_project(N, default_center(), default_near_center_threshold(), &warn);
        CHECK(img == oracle::stereo_north(N));
        CHECK(img == a);
    }
    try {
        stereo_project(default_center());
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AtCenter);
    }
    std::vector<std::string> warn;
    stereo_project(RVec{q(0), q(3, 5), q(4, 5)}, default_center(), default_near_center_threshold(), &warn);
    CHECK(warn.empty());  // margin 1/5
    stereo_project(RVec{q(0), q(8, 17), q(15, 17)}, default_center(), default_near_center_threshold(), &warn);
    CHECK(warn.size() == 1);  // margin 2/17 < 1/8
}

TEST_CASE("Pythagorean lift has square norm") {
    oracle::Random rng(8);
    for (int t = 0; t < 30; ++t) {
        PolyVec Nhat = rng.polyvec(2, 2);
        auto f = lift_pythagorean(Nhat);
        CHECK(inner(f.n, f.n, Metric::euclidean3()) == f.sigma * f.sigma);
        auto iso = lift_isotropic(Nhat);
        CHECK(inner(iso.n, iso.n, mk).is_zero());
    }
}

TEST_CASE("quad planar patch and field from the example data") {
    std::vector<RVec> N;
    for (auto& p : testdata::pn_quad()) N.push_back(p.unit_normal);
    auto fc = pn_normal_field(N);
    CHECK(fc.rotation.is_identity());
    CHECK(fc.nhat == testdata::pn_quad_nhat());
    CHECK(inner(fc.field.n, fc.field.n, Metric::euclidean3()) == fc.field.sigma * fc.field.sigma);
    for (std::size_t k = 0; k < 4; ++k) {
        auto c = quad_corners()[k];
        RVec at = evaluate(fc.field.n, Rational(c[0]), Rational(c[1]));
        auto lam = proportionality(at, N[k]);
        REQUIRE(lam.has_value());
        CHECK(*lam == fc.corner_scales[k]);
    }
}

TEST_CASE("automatic rotation avoids the center") {
    // a normal at the default center forces another candidate
    std::vector<RVec> N{{q(0), q(0), q(1)}, {q(1), q(0), q(0)}, {q(0), q(1), q(0)}};
    auto fc = pn_normal_field(N);
    CHECK(!fc.rotation.is_identity());
    for (std::size_t k = 0; k < 3; ++k) {
        auto c = tri_corners()[k];
        CHECK(proportionality(evaluate(fc.field.n, Rational(c[0]), Rational(c[1])), N[k]).has_value());
    }
    ProjectionOptions fixed;
    fixed.auto_rotate = false;
    CHECK_THROWS_AS(pn_normal_field(N, fixed), Error);
}

TEST_CASE("isotropic normals of the MOS tables") {
    auto quad = testdata::mos_quad();
    auto qn = testdata::mos_quad_normals();
    for (std::size_t k = 0; k < quad.size(); ++k) {
        auto pr = isotropic_normals(quad[k].tangent1, quad[k].tangent2);
        for (const auto& n : {pr.nplus, pr.nminus}) {
            CHECK(inner(n, n, mk) == 0);
            CHECK(inner(n, quad[k].tangent1, mk) == 0);
            CHECK(inner(n, quad[k].tangent2, mk) == 0);
            CHECK(sgn(n[3]) > 0);
        }
        CHECK(as_set(pr) == std::set<RVec>{qn[k][0], qn[k][1]});
        CHECK(pr.nplus == qn[k][0]);
    }
    auto tri = testdata::mos_tri();
    auto tn = testdata::mos_tri_normals();
    for (std::size_t k = 0; k < tri.size(); ++k) {
        auto pr = isotropic_normals(tri[k].tangent1, tri[k].tangent2);
        CHECK(as_set(pr) == std::set<RVec>{tn[k][0], tn[k][1]});
    }
    RVec listed = testdata::mos_tri_listed_n10plus();
    CHECK(inner(listed, listed, mk) == 8);
}

TEST_CASE("isotropic normal failures") {
    RVec e1{q(1), q(0), q(0), q(0)}, e4{q(0), q(0), q(0), q(1)};
    try {
        isotropic_normals(e1, RVec{q(0), q(1), q(1), q(0)});
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IrrationalIsotropics);
    }
    IsotropicOptions approx;
    approx.approximate = true;
    auto pr = isotropic_normals(e1, RVec{q(0), q(1), q(1), q(0)}, approx);
    CHECK(sgn(pr.nplus[3]) > 0);
    try {
        isotropic_normals(e1, e4);  // timelike plane
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoRealIsotropics);
    }
    CHECK_THROWS_AS(isotropic_normals(e1, e1), Error);
}

TEST_CASE("MOS triangular field") {
    std::vector<RVec> np;
    for (auto& p : testdata::mos_tri()) np.push_back(isotropic_normals(p.tangent1, p.tangent2).nplus);
    auto fc = mos_normal_field(np);
    CHECK(fc.field.n == testdata::mos_tri_nplus());
    CHECK(inner(fc.field.n, fc.field.n, mk).is_zero());
    CHECK(sphere_direction(np[1]) == RVec{q(2, 3), q(-1, 3), q(-2, 3)});
}
