#pragma once
// Polynomial PN surfaces: surface systems, free families over a normal
// field, Hermite interpolation and area-element certificates.

#include "pnforge/exactla.hpp"
#include "pnforge/factor.hpp"
#include "pnforge/gaussfield.hpp"
#include "pnforge/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pnforge {

// ---------------------------------------------------------------- systems

/// Unknown surface x of a given dimension and degree plus its equations.
template <class K>
struct SurfaceSystem {
    int dim = 3;
    int degree = 0;
    SystemBuilder<K> builder;
    LinPolyVec<K> x;
};

template <class K>
SurfaceSystem<K> make_surface_system(int dim, int d) {
    if (d < 0) throw Error(ErrorKind::InvalidInput, "negative degree");
    SurfaceSystem<K> s;
    s.dim = dim;
    s.degree = d;
    s.x = s.builder.unknown_polyvec(dim, d);
    return s;
}

/// <x_u, n> ≡ 0 and <x_v, n> ≡ 0.
template <class K>
void add_tangency(SurfaceSystem<K>& s, const BasicPolyVec<K>& n, Metric m) {
    for (Var w : {Var::U, Var::V}) s.builder.add_identity_zero(inner(diff(s.x, w), n, m));
}

/// x(u0, v0) = p.
template <class K>
void add_point(SurfaceSystem<K>& s, std::array<int, 2> corner, const std::vector<K>& p) {
    if (static_cast<int>(p.size()) != s.dim) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from surface");
    for (int c = 0; c < s.dim; ++c)
        s.builder.add_equation(evaluate(s.x[c], K(corner[0]), K(corner[1])) - LinearForm<K>(p[c]));
}

/// <x_u(c), n> = <x_v(c), n> = 0 at one corner.
template <class K>
void add_corner_normal(SurfaceSystem<K>& s, std::array<int, 2> corner, const std::vector<K>& n, Metric m) {
    for (Var w : {Var::U, Var::V}) {
        auto d = diff(s.x, w);
        LinearForm<K> e;
        for (int c = 0; c < s.dim; ++c) {
            LinearForm<K> t = evaluate(d[c], K(corner[0]), K(corner[1])) * K(n[c]);
            if (m.sign(c) > 0)
                e += t;
            else
                e -= t;
        }
        s.builder.add_equation(e);
    }
}

/// Polynomial vector assembled from coefficient values by unknown labels
/// (only labels of the given block).
template <class K>
BasicPolyVec<K> assemble(const std::vector<UnknownLabel>& labels, const std::vector<K>& values, int dim, int block = 0) {
    BasicPolyVec<K> x(dim);
    for (std::size_t k = 0; k < labels.size(); ++k)
        if (labels[k].block == block) x[labels[k].coord].add_term({labels[k].i, labels[k].j}, values[k]);
    return x;
}

/// Affine family of surfaces: particular + span(basis).
template <class K>
struct SurfaceFamily {
    int dim = 3;
    int degree = 0;
    SolutionFamily<K> solution;

    std::size_t dimension() const { return solution.dimension(); }
    BasicPolyVec<K> particular() const { return assemble(solution.labels, solution.particular, dim); }
    BasicPolyVec<K> direction(std::size_t k) const { return assemble(solution.labels, solution.basis.at(k), dim); }
    BasicPolyVec<K> member(const std::vector<K>& t) const { return assemble(solution.labels, solution.member(t), dim); }
};

template <class K>
SurfaceFamily<K> solve_surface(const SurfaceSystem<K>& s) {
    return {s.dim, s.degree, solve_affine(s.builder.build())};
}

// ---------------------------------------------------------------- dimensions

/// C(n, 2) with C(n, 2) = 0 for n < 2.
long long choose2(long long n);

/// 3 C(l+2,2) - C(k+l+2,2), clamped at zero.
long long lambda_dim(int l, int k);
/// C(l+3,2) - 1.
long long omega_dim(int l);
/// 2 Λ(l,k) + 3 Ω(l) - 6 C(l+2,2), unclamped.
long long family_dim_bound(int l, int k);

// ---------------------------------------------------------------- patches

/// Parameter domain used for certification and sampling.
struct Domain {
    enum class Kind { UnitSquare, UnitTriangle, Box };
    Kind kind = Kind::UnitSquare;
    Rational u0{0}, u1{1}, v0{0}, v1{1};

    static Domain square() { return {}; }
    static Domain triangle() { return {Kind::UnitTriangle}; }
    static Domain box(Rational a, Rational b, Rational c, Rational d) { return {Kind::Box, a, b, c, d}; }

    /// Rational sample points on a (res+1) x (res+1) lattice, clipped to the
    /// triangle for UnitTriangle.
    std::vector<std::pair<Rational, Rational>> samples(int res) const;
};

template <class K>
struct BasicPNPatch {
    BasicPolyVec<K> x;
    BasicNormalField<K> field;
    BasicPoly<K> f;           // x_u × x_v = f n
    BasicPoly<K> sigma_area;  // f * sigma_n
};
using PNPatch = BasicPNPatch<Rational>;

template <class K>
struct Certificate {
    BasicPoly<K> f;
    BasicPoly<K> sigma_area;
    bool degenerate_locus_nonempty = false;
};

/// f with x_u × x_v = f n; throws NotProportional if no polynomial f exists.
template <class K>
BasicPoly<K> vanishing_factor(const BasicPolyVec<K>& x, const BasicPolyVec<K>& n) {
    auto c = cross3(diff(x, Var::U), diff(x, Var::V));
    std::size_t k = 0;
    while (k < 3 && n[k].is_zero()) ++k;
    if (k == 3) throw Error(ErrorKind::NotProportional, "normal field is zero");
    auto f = divide_exact(c[k], n[k]);
    if (!f) throw Error(ErrorKind::NotProportional, "x_u × x_v is not a polynomial multiple of n");
    for (int j = 0; j < 3; ++j)
        if (*f * n[j] != c[j]) throw Error(ErrorKind::NotProportional, "x_u × x_v is not a polynomial multiple of n");
    return *f;
}

/// Exact f and area element; the locus flag samples f's sign on a 33 x 33
/// lattice of the domain (a zero sample or a sign change counts).
template <class K>
Certificate<K> certify(const BasicPolyVec<K>& x, const BasicNormalField<K>& field, const Domain& dom = Domain::square()) {
    Certificate<K> out;
    out.f = vanishing_factor(x, field.n);
    out.sigma_area = out.f * field.sigma;
    if (out.f.is_zero()) {
        out.degenerate_locus_nonempty = true;
    } else if (!out.f.is_constant()) {
        int seen = 0;
        for (const auto& [a, b] : dom.samples(32)) {
            int s = real_sign(evaluate(out.f, K(a), K(b)));
            if (s == 0 || (seen != 0 && s != seen)) {
                out.degenerate_locus_nonempty = true;
                break;
            }
            seen = s;
        }
    }
    return out;
}

template <class K>
BasicPNPatch<K> make_patch(const BasicPolyVec<K>& x, const BasicNormalField<K>& field) {
    auto cert = certify(x, field);
    return {x, field, cert.f, cert.sigma_area};
}

/// Every PNPatch invariant: tangency, x_u × x_v = f n, Γ = sigma_area².
template <class K>
bool check_patch(const BasicPNPatch<K>& p) {
    const Metric e = Metric::euclidean3();
    auto xu = diff(p.x, Var::U), xv = diff(p.x, Var::V);
    if (!inner(xu, p.field.n, e).is_zero() || !inner(xv, p.field.n, e).is_zero()) return false;
    if (cross3(xu, xv) != p.f * p.field.n) return false;
    if (inner(p.field.n, p.field.n, e) != p.field.sigma * p.field.sigma) return false;
    BasicPoly<K> gram = inner(xu, xu, e) * inner(xv, xv, e) - inner(xu, xv, e) * inner(xu, xv, e);
    return gram == p.sigma_area * p.sigma_area;
}

Certificate<Rational> certify(const PNPatch& p, const Domain& dom = Domain::square());

// ---------------------------------------------------------------- families

/// Tangent-field pairs (q, r) of degree <= l with <q,n> ≡ <r,n> ≡ 0 for
/// every given field and q_v ≡ r_u; unknown blocks 0 (q) and 1 (r).
struct TangentFamily {
    Metric metric;
    int ell = 0;
    std::vector<PolyVec> fields;
    SolutionFamily<Rational> solution;

    std::size_t dimension() const { return solution.dimension(); }
    std::pair<PolyVec, PolyVec> qr(std::size_t k) const;
    /// ∫_0^u q du + ∫_0^v r(0,v) dv for basis element k.
    PolyVec surface(std::size_t k) const;
    /// Same from a full unknown vector, e.g. solution.member(t).
    PolyVec surface_from(const std::vector<Rational>& coeffs) const;
};

TangentFamily tangent_family(const std::vector<PolyVec>& fields, Metric m, int ell);

/// x with x_u = q, x_v = r, x(0,0) = 0. Requires q_v = r_u.
PolyVec integrate_pair(const PolyVec& q, const PolyVec& r);

struct PNFamily {
    NormalField field;
    TangentFamily family;
    long long lambda = 0, omega = 0, bound = 0;

    std::size_t dimension() const { return family.dimension(); }
    /// observed dimension minus the Δ = 0 bound
    long long empirical_delta() const { return static_cast<long long>(dimension()) - bound; }
    PNPatch patch(std::size_t k) const { return make_patch(family.surface(k), field); }
};

PNFamily pn_family(const NormalField& n, int ell);

// ---------------------------------------------------------------- Hermite

struct PNHermiteResult {
    FieldConstruction construction;
    SurfaceFamily<Rational> family;
    std::vector<PNHermitePoint> data;

    int degree() const { return family.degree; }
    std::size_t dimension() const { return family.dimension(); }
    PNPatch representative() const { return make_patch(family.particular(), construction.field); }
    PNPatch member(const std::vector<Rational>& t) const { return make_patch(family.member(t), construction.field); }
    /// x(corner) - p for every corner (all zero for a valid family).
    std::vector<RVec> corner_residuals(const PolyVec& x) const;
};

/// Hermite interpolation of 4 (quad, corners (0,0),(1,0),(1,1),(0,1)) or
/// 3 (triangle, corners (0,0),(1,0),(0,1)) points with unit normals at a
/// given degree. Throws Inconsistent when the degree is too low.
PNHermiteResult hermite_pn(const std::vector<PNHermitePoint>& data, int degree, const ProjectionOptions& opt = {});
PNHermiteResult hermite_quad(const std::array<PNHermitePoint, 4>& data, int degree, const ProjectionOptions& opt = {});
PNHermiteResult hermite_tri(const std::array<PNHermitePoint, 3>& data, int degree, const ProjectionOptions& opt = {});

/// Lowest solvable degree in [max(k,2), 2k+6], k the normal-field degree.
/// Throws Inconsistent if none is solvable; `tried` lists failed degrees.
PNHermiteResult hermite_pn_search(const std::vector<PNHermitePoint>& data, const ProjectionOptions& opt = {},
                                  std::vector<int>* tried = nullptr);

}  // namespace pnforge
