#pragma once
// Multi-patch PN assemblies: G1 grids, linear side constraints, symmetric
// extension and free-parameter selection by fitting to an implicit surface.

#include "pnforge/pn.hpp"

#include <array>
#include <string>
#include <vector>

namespace pnforge {

// ---------------------------------------------------------------- grids

/// (m+1) x (n+1) Hermite data; points[i][j] sits at grid node (i, j), with
/// i advancing along u and j along v.
struct HermiteGrid {
    int m = 0, n = 0;
    std::vector<std::vector<PNHermitePoint>> points;

    void check() const;
};

/// Affine family of networks: patch (i,j) of member t is
/// particular[i][j] + sum_k t_k directions[k][i][j].
struct GridFamily {
    int m = 0, n = 0, degree = 0;
    std::vector<std::vector<FieldConstruction>> fields;
    std::vector<std::vector<PolyVec>> particular;
    std::vector<std::vector<std::vector<PolyVec>>> directions;
    std::vector<std::vector<std::size_t>> patch_dimensions;  // per-patch family sizes before gluing

    std::size_t dimension() const { return directions.size(); }
    std::vector<std::vector<PolyVec>> member(const std::vector<Rational>& t) const;
    PNPatch patch(const std::vector<std::vector<PolyVec>>& net, int i, int j) const;
};

/// Solves every cell's Hermite system, then glues the per-cell families
/// along interior edges. Throws Inconsistent.
GridFamily interpolate_grid(const HermiteGrid& grid, int degree, const ProjectionOptions& opt = {});

/// One block system over all patch coefficients (patch-major); exact but
/// dense, intended for small grids and cross-checks.
GridFamily interpolate_grid_direct(const HermiteGrid& grid, int degree, const ProjectionOptions& opt = {});

/// Exact interior-edge checks for one member.
struct GridCheck {
    bool positions = true;  // x_{i,j}(u,1) = x_{i,j+1}(u,0), x_{i,j}(1,v) = x_{i+1,j}(0,v)
    bool normals = true;    // same identities for the per-cell normal fields
    bool tangency = true;   // every cell orthogonal to its field
    bool all() const { return positions && normals && tangency; }
};
GridCheck check_grid(const GridFamily& fam, const std::vector<std::vector<PolyVec>>& net);

// ---------------------------------------------------------------- side constraints

enum class Edge { V0, V1, U0, U1, Diagonal };  // v=0, v=1, u=0, u=1, u+v=1

/// (u(s), v(s)) along an edge, parametrized by u (V0, V1, Diagonal) or v.
template <class K>
std::pair<BasicPoly<K>, BasicPoly<K>> edge_curve(Edge e) {
    using P = BasicPoly<K>;
    switch (e) {
        case Edge::V0: return {P::u(), P()};
        case Edge::V1: return {P::u(), P(K(1))};
        case Edge::U0: return {P(), P::v()};
        case Edge::U1: return {P(K(1)), P::v()};
        case Edge::Diagonal: return {P::u(), P(K(1)) - P::u()};
    }
    return {P(), P()};
}

template <class C, class K>
BasicPolyVec<C> restrict_to_edge(const BasicPolyVec<C>& x, Edge e) {
    auto [pu, pv] = edge_curve<K>(e);
    return compose(x, pu, pv);
}

/// direction · x ≡ 0 along the edge.
struct SideConstraint {
    RVec direction;
    Edge edge;
};

template <class K>
void add_linear_side_constraints(SurfaceSystem<K>& s, const std::vector<SideConstraint>& constraints) {
    for (const auto& c : constraints) {
        if (static_cast<int>(c.direction.size()) != s.dim)
            throw Error(ErrorKind::DimensionMismatch, "constraint direction differs from surface dimension");
        auto xe = restrict_to_edge<LinearForm<K>, K>(s.x, c.edge);
        LinPoly<K> e;
        for (int k = 0; k < s.dim; ++k)
            if (sgn(c.direction[k]) != 0) e += xe[k].scaled(K(c.direction[k]));
        s.builder.add_identity_zero(e);
    }
}

// ---------------------------------------------------------------- reflection

/// Reflection in the coordinate plane x_axis = 0. Requires a boundary edge
/// lying in that plane (ConstraintNotSatisfied otherwise).
template <class K>
BasicPNPatch<K> reflect_extend(const BasicPNPatch<K>& p, int axis) {
    if (axis < 0 || axis > 2) throw Error(ErrorKind::InvalidInput, "axis must be 0, 1 or 2");
    bool on_plane = false;
    for (Edge e : {Edge::V0, Edge::V1, Edge::U0, Edge::U1, Edge::Diagonal})
        if (restrict_to_edge<K, K>(p.x, e)[axis].is_zero()) on_plane = true;
    if (!on_plane) throw Error(ErrorKind::ConstraintNotSatisfied, "no boundary edge lies in the reflection plane");
    BasicPNPatch<K> r = p;
    r.x[axis] = -r.x[axis];
    r.field.n[axis] = -r.field.n[axis];
    r.f = -r.f;
    r.sigma_area = -r.sigma_area;
    return r;
}

/// The patch and its images under all reflections in the three coordinate
/// planes (8 octants), ordered by reflection mask (bit k = axis k).
template <class K>
std::vector<BasicPNPatch<K>> assemble_octants(const BasicPNPatch<K>& p) {
    std::vector<BasicPNPatch<K>> out;
    for (int mask = 0; mask < 8; ++mask) {
        BasicPNPatch<K> q = p;
        for (int axis = 0; axis < 3; ++axis)
            if (mask & (1 << axis)) q = reflect_extend(q, axis);
        out.push_back(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------- fitting

/// Polynomial in (x, y, z) describing an implicit surface f = 0.
struct ImplicitPoly {
    std::vector<std::pair<std::array<int, 3>, Rational>> terms;

    double value(const std::array<double, 3>& p) const;
    std::array<double, 3> gradient(const std::array<double, 3>& p) const;
    std::array<std::array<double, 3>, 3> hessian(const std::array<double, 3>& p) const;

    /// a x² + b y² + c z² - d
    static ImplicitPoly quadric(const Rational& a, const Rational& b, const Rational& c, const Rational& d);
};

struct FitOptions {
    int quadrature_order = 16;
    Domain domain = Domain::triangle();
    int max_iterations = 100;
    double step_tolerance = 1e-12;
    double rationalize_tolerance = 1e-12;
};

/// Gauss-Legendre nodes and weights on [0, 1].
std::vector<std::pair<double, double>> gauss_legendre01(int order);

/// Quadrature nodes (u, v, weight) over the domain, the triangle via the
/// collapsed map u = s(1-t), v = t.
std::vector<std::array<double, 3>> quadrature_nodes(const Domain& dom, int order);

/// Sampled family: position of the particular member and of each direction
/// at every node.
struct SampledFamily {
    std::vector<double> weights;
    std::vector<std::array<double, 3>> base;
    std::vector<std::vector<std::array<double, 3>>> directions;  // [param][node]
};

struct FitTrace {
    std::vector<double> t;
    std::vector<double> scale;  // column scaling D; the optimizer works in y = D t
    double phi_start = 0, phi = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

/// Φ(t) = sum_q w_q f(x_q(t))² / ‖∇f(x_q(t))‖².
double fit_objective(const SampledFamily& s, const ImplicitPoly& f, const std::vector<double>& t);

/// Damped Gauss-Newton from t = 0 on the residuals sqrt(w) f / ‖∇f‖, in
/// parameters scaled by the starting Jacobian's column norms; the step
/// tolerance is relative in those scaled parameters. Throws
/// OptimizerDiverged on non-finite values.
FitTrace gauss_newton_fit(const SampledFamily& s, const ImplicitPoly& f, const FitOptions& opt);

template <class K>
struct FitResult {
    FitTrace trace;
    std::vector<Rational> t_exact;  // rationalized t*, |D_k (t_exact - t*)_k| <= tolerance
    BasicPolyVec<K> member;         // exact member at t_exact
    double phi_exact = 0;           // Φ of the exact member
};

template <class K>
SampledFamily sample_family(const SurfaceFamily<K>& fam, const std::vector<std::array<double, 3>>& nodes) {
    SampledFamily s;
    auto at = [&](const BasicPolyVec<K>& x, double u, double v) {
        return std::array<double, 3>{evaluate_double(x[0], u, v), evaluate_double(x[1], u, v), evaluate_double(x[2], u, v)};
    };
    BasicPolyVec<K> base = fam.particular();
    std::vector<BasicPolyVec<K>> dirs;
    for (std::size_t k = 0; k < fam.dimension(); ++k) dirs.push_back(fam.direction(k));
    s.directions.resize(dirs.size());
    for (const auto& [u, v, w] : nodes) {
        s.weights.push_back(w);
        s.base.push_back(at(base, u, v));
        for (std::size_t k = 0; k < dirs.size(); ++k) s.directions[k].push_back(at(dirs[k], u, v));
    }
    return s;
}

/// Selects the family member minimizing the quadrature form of Φ.
template <class K>
FitResult<K> fit_to_implicit(const SurfaceFamily<K>& fam, const ImplicitPoly& f, const FitOptions& opt = {}) {
    if (fam.dim != 3) throw Error(ErrorKind::DimensionMismatch, "fitting needs surfaces in R^3");
    auto nodes = quadrature_nodes(opt.domain, opt.quadrature_order);
    SampledFamily s = sample_family(fam, nodes);
    FitResult<K> out;
    out.trace = gauss_newton_fit(s, f, opt);
    std::vector<K> tk;
    std::vector<double> td;
    for (std::size_t k = 0; k < out.trace.t.size(); ++k) {
        // the scaled parameter D_k t_k is O(1); D_k is an exact binary fraction
        Rational dk(out.trace.scale[k]);
        Rational r = rationalize(out.trace.t[k] * out.trace.scale[k], opt.rationalize_tolerance) / dk;
        out.t_exact.push_back(r);
        tk.push_back(K(r));
        td.push_back(r.get_d());
    }
    out.member = fam.member(tk);
    out.phi_exact = fit_objective(s, f, td);
    return out;
}

}  // namespace pnforge
