// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "pnforge/mos.hpp"
#include "pnforge/network.hpp"
#include "pnforge/pn.hpp"
#include "pnforge/syzygy.hpp"

#include "support/datasets.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace pnforge;
using testdata::q;

namespace {

// pinned tolerances; every other criterion is exact
constexpr double kPhiBound = 5e-6;
constexpr double kPhiTarget = 2.4e-6;
constexpr std::uint64_t kSeed = 20240917;

const BiPoly u = BiPoly::u(), v = BiPoly::v();
const Metric e3 = Metric::euclidean3();
const Metric mk = Metric::minkowski31();

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << "[failed: " << what << "] ";
        }
    }
};

bool all_zero(const std::vector<RVec>& rs) {
    for (const auto& r : rs)
        for (const auto& c : r)
            if (sgn(c) != 0) return false;
    return true;
}

template <std::size_t N, class P>
std::array<P, N> as_array(const std::vector<P>& v) {
    std::array<P, N> a;
    for (std::size_t k = 0; k < N; ++k) a[k] = v[k];
    return a;
}

// ---------------------------------------------------------------- criteria

void cubic_family(Outcome& o) {
    auto fam = pn_family(testdata::sphere_field(), 2);
    o.require(fam.dimension() == 3, "dimension 3");
    std::vector<PolyVec> xs;
    for (std::size_t k = 0; k < fam.dimension(); ++k) xs.push_back(fam.family.surface(k));
    o.require(oracle::same_span(xs, testdata::cubic_generators()), "span equals the displayed family");
    o.note << "dim " << fam.dimension() << ", spans equal over Q";
}

void syzygy_basis(Outcome& o) {
    auto s = testdata::sphere_syzygy();
    auto c = syzygy_basis_check(s.q, s.r, s.n);
    o.require(c && *c == 1, "c = 1");
    // Syz(n) in degree <= 4, computed independently as a kernel
    SystemBuilder<Rational> b;
    auto p = b.unknown_polyvec(3, 4);
    b.add_identity_zero(inner(p, s.n, e3));
    auto ker = nullspace(b.build());
    oracle::Random rng(kSeed);
    int ok = 0;
    for (int t = 0; t < 50; ++t) {
        std::vector<Rational> coeff(ker.dimension());
        for (auto& x : coeff) x = rng.integer(-3, 3);
        PolyVec m = assemble(ker.labels, ker.member(coeff), 3);
        auto ab = c ? decompose_syzygy(m, s.q, s.r, s.n, *c) : std::nullopt;
        if (ab && ab->first * s.q + ab->second * s.r == m) ++ok;
    }
    o.require(ok == 50, "50 decompositions");
    o.note << "c = " << (c ? to_string(*c) : "none") << ", " << ok << "/50 members of Syz_4 decomposed";
}

void quadratic_mos(Outcome& o) {
    auto fam = mos_family(testdata::isotropic_sphere_field(), std::nullopt, 1);
    o.require(fam.dimension() == 5, "dimension 5");
    oracle::Random rng(kSeed + 1);
    int squares = 0, trials = 0;
    std::vector<PolyVec> xs;
    for (std::size_t k = 0; k < fam.dimension(); ++k) xs.push_back(fam.family.surface(k));
    for (int t = 0; t < 25; ++t) {
        std::vector<Rational> c(fam.dimension());
        for (auto& x : c) x = rng.rational();
        PolyVec x = t < static_cast<int>(xs.size()) ? xs[t] : fam.family.surface_from(fam.family.solution.member(c));
        auto disc = minkowski_first_form(x).discriminant();
        auto s = oracle::sqrt_via_squarefree(disc);
        if (s && *s * *s == disc) ++squares;
        ++trials;
    }
    o.require(squares == trials, "perfect squares");
    std::vector<PolyVec> shown;
    for (auto g : testdata::mos_quadratic_generators()) {
        g[3] = -g[3];
        shown.push_back(g);
    }
    o.require(oracle::same_span(xs, shown), "span equals the displayed family (r -> -r)");
    o.note << "dim " << fam.dimension() << ", EG-F^2 square for " << squares << "/" << trials << " members";
}

void quad_pn(Outcome& o) {
    auto r = hermite_quad(as_array<4>(testdata::pn_quad()), 8);
    o.require(r.construction.nhat == testdata::pn_quad_nhat(), "planar patch");
    const auto& N = r.construction.nhat;
    BiPoly s = N[0] * N[0] + N[1] * N[1] + BiPoly(1);
    o.require(inner(r.construction.field.n, r.construction.field.n, e3) == s * s, "|n|^2 = (N.N + 1)^2");
    o.require(r.dimension() == 2, "dimension 2");
    o.require(all_zero(r.corner_residuals(r.family.particular())), "corner residuals");
    o.require(check_patch(r.representative()), "patch certificate");
    o.note << "degree 8, dim " << r.dimension() << ", residuals zero";
}

void tri_pn(Outcome& o) {
    auto r = hermite_tri(as_array<3>(testdata::pn_tri()), 4);
    o.require(r.dimension() == 1, "dimension 1");
    o.require(r.construction.field.n == testdata::pn_tri_field(), "n");
    BiPoly s = (BiPoly(10) * u * u + BiPoly(2) * u * v + BiPoly(5) * v * v + BiPoly(50)).scaled(q(1, 50));
    o.require(inner(r.construction.field.n, r.construction.field.n, e3) == s * s, "|n|^2");
    o.require(all_zero(r.corner_residuals(r.family.particular())), "corner residuals");
    o.note << "degree 4, dim " << r.dimension() << ", n exact";
}

void mos_hermite(Outcome& o) {
    auto pairs_match = [&](const std::vector<MOSHermitePoint>& pts, const std::vector<std::array<RVec, 2>>& table) {
        for (std::size_t k = 0; k < pts.size(); ++k) {
            auto pr = isotropic_normals(pts[k].tangent1, pts[k].tangent2);
            if (std::set<RVec>{pr.nplus, pr.nminus} != std::set<RVec>{table[k][0], table[k][1]}) return false;
        }
        return true;
    };
    o.require(pairs_match(testdata::mos_quad(), testdata::mos_quad_normals()), "quad table");
    o.require(pairs_match(testdata::mos_tri(), testdata::mos_tri_normals()), "tri table");
    RVec listed = testdata::mos_tri_listed_n10plus();
    o.require(inner(listed, listed, mk) != 0, "listed tri n10+ is not isotropic as printed");
    auto quad = hermite_quad_mos(as_array<4>(testdata::mos_quad()), 6);
    o.require(quad.dimension() == 8, "quad dimension 8");
    o.require(check_mos_patch(quad.representative()), "quad certificate");
    auto tri = hermite_tri_mos(as_array<3>(testdata::mos_tri()), 4);
    o.require(tri.dimension() == 7, "tri dimension 7");
    o.require(tri.construction.field.n == testdata::mos_tri_nplus(), "tri n+");
    o.require(all_zero(tri.corner_normal_residuals(tri.family.particular())), "tri n- at corners");
    o.note << "tables match (tri n10+ read as (2,-1,-2,3)), quad d=6 dim " << quad.dimension() << ", tri d=4 dim "
           << tri.dimension();
}

void ellipsoid(Outcome& o) {
    auto fam = solve_surface(testdata::ellipsoid_system());
    o.require(fam.dimension() == 5, "dimension 5");
    auto fit = fit_to_implicit(fam, testdata::ellipsoid());
    o.require(fit.trace.phi <= kPhiBound, "Phi(t*) <= 5e-6");
    o.require(fit.phi_exact <= kPhiBound, "Phi of the rationalized member <= 5e-6");
    auto patch = make_patch(fit.member, testdata::ellipsoid_field());
    o.require(check_patch(patch), "exact member is PN");
    char buf[160];
    std::snprintf(buf, sizeof buf, "dim %zu, Phi(t*) = %.4e (exact member %.4e, target %.1e, bound %.0e), %d iterations",
                  fam.dimension(), fit.trace.phi, fit.phi_exact, kPhiTarget, kPhiBound, fit.trace.iterations);
    o.note << buf;
}

long long gen_choose2(long long m) { return m * (m - 1) / 2; }

void dimension_theory(Outcome& o) {
    auto mono = [](int i, int j, int k, int e) { return HomTriPoly::term(i * e, j * e, k * e, Rational(1)); };
    int agree = 0;
    for (int e : {1, 2}) {
        std::array<HomTriPoly, 3> f{mono(1, 0, 0, e), mono(0, 1, 0, e), mono(0, 0, 1, e)};
        HomNormalField N(f);
        for (int l = 0; l <= 8; ++l) {
            long long brute = oracle::brute_syzygy_dim(f, l);
            if (brute == hilbert_bound(e, l) && syzygy_dim(N, l) == brute) ++agree;
        }
    }
    o.require(agree == 18, "Hilbert bound equals brute-force dims");
    auto S = HomNormalField::from_field(testdata::sphere_syzygy().n);
    o.require(syzygy_dim(S, 1) == 1 && hilbert_bound(2, 1) == 0, "sphere: dim 1 > bound 0 at l = 1");
    const auto& c = S.components();
    o.require((HomTriPoly::term(0, 1, 0, Rational(1)) * c[0] - HomTriPoly::term(1, 0, 0, Rational(1)) * c[1]).is_zero(),
              "witness (v,-u,0)");
    int ids = 0;
    for (int k = 0; k <= 8; ++k)
        for (int l = 0; l <= 8; ++l)
            if (3 * gen_choose2(l - k + 2) - gen_choose2(l - 2 * k + 2) == 3 * gen_choose2(l + 2) - gen_choose2(l + k + 2))
                ++ids;
    o.require(ids == 81, "Lambda identity");
    o.note << agree << "/18 bounds tight, sphere witness at l=1, identity holds for " << ids << "/81 (k,l)";
}

void properties(Outcome& o) {
    int d3 = props::duality_trials(e3, 100, kSeed + 2), d31 = props::duality_trials(mk, 100, kSeed + 3);
    int g = props::gram_trials(100, kSeed + 4), sq = props::square_root_trials(100, kSeed + 5);
    o.require(d3 == 100 && d31 == 100, "duality");
    o.require(g == 100, "Gramian");
    o.require(sq == 100, "square roots");
    auto fam = interpolate_grid(testdata::sphere_grid(3, 3), 9);
    auto base = check_grid(fam, fam.particular);
    oracle::Random rng(kSeed + 6);
    std::vector<Rational> t(fam.dimension());
    for (auto& x : t) x = rng.rational();
    auto other = check_grid(fam, fam.member(t));
    o.require(base.all() && other.all(), "3x3 grid edges");
    o.note << "duality " << d3 << "+" << d31 << ", Gramian " << g << ", sqrt " << sq << ", 3x3 d=9 grid dim "
           << fam.dimension() << " edges exact";
}

void envelopes(Outcome& o) {
    PolyVec x{u, v, BiPoly(), BiPoly(1)};
    auto env = envelope(x, mos_certify(x));
    std::set<int> planes;
    for (const auto* b : {&env.bplus, &env.bminus}) {
        auto xx = divide_exact(b->num[0], b->den), yy = divide_exact(b->num[1], b->den), zz = divide_exact(b->num[2], b->den);
        if (xx == u && yy == v && zz && zz->is_constant()) planes.insert(static_cast<int>(zz->constant_term().get_d()));
    }
    o.require(planes == std::set<int>{-1, 1}, "planes z = +-1");

    auto quad = hermite_quad_mos(as_array<4>(testdata::mos_quad()), 6);
    std::vector<Rational> t(quad.dimension(), Rational(0));
    t[0] = q(1, 2);
    auto p = quad.member(t);
    auto e2 = envelope(p);
    auto chk = check_envelope(p.x, e2);
    o.require(chk.distance, "distance identity");
    // independent spot check at rational points
    bool spots = true;
    for (auto [a, b] : {std::pair{q(1, 3), q(2, 5)}, std::pair{q(-1, 2), q(3, 4)}, std::pair{q(7, 3), q(-2)}}) {
        Rational r = evaluate(p.x[3], a, b);
        for (const auto* s : {&e2.bplus, &e2.bminus}) {
            Rational den = evaluate(s->den, a, b), d2 = 0;
            if (sgn(den) == 0) continue;
            for (int c = 0; c < 3; ++c) {
                Rational diff = evaluate(s->num[c], a, b) / den - evaluate(p.x[c], a, b);
                d2 += diff * diff;
            }
            if (d2 != r * r) spots = false;
        }
    }
    o.require(spots, "spot evaluations");
    o.note << "planes z = -1, 1; MOS-quad member: <b-x, b-x> = r^2 exact";
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"cubic PN family", cubic_family},
        {"syzygy basis", syzygy_basis},
        {"quadratic MOS family", quadratic_mos},
        {"quad PN Hermite", quad_pn},
        {"tri PN Hermite", tri_pn},
        {"MOS Hermite", mos_hermite},
        {"ellipsoid fit", ellipsoid},
        {"dimension theory", dimension_theory},
        {"property suites", properties},
        {"envelope", envelopes},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[k].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << "[exception: " << e.what() << "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::printf("%s %2zu %-22s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.note.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failed;
}
