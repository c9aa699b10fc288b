#include "pnforge/pn.hpp"

#include <algorithm>

namespace pnforge {

long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

long long lambda_dim(int l, int k) { return std::max(0LL, 3 * choose2(l + 2) - choose2(k + l + 2)); }

long long omega_dim(int l) { return choose2(l + 3) - 1; }

long long family_dim_bound(int l, int k) { return 2 * lambda_dim(l, k) + 3 * omega_dim(l) - 6 * choose2(l + 2); }

std::vector<std::pair<Rational, Rational>> Domain::samples(int res) const {
    std::vector<std::pair<Rational, Rational>> out;
    Rational a0 = u0, a1 = u1, b0 = v0, b1 = v1;
    if (kind != Kind::Box) a0 = b0 = 0, a1 = b1 = 1;
    for (int i = 0; i <= res; ++i)
        for (int j = 0; j <= res; ++j) {
            if (kind == Kind::UnitTriangle && i + j > res) continue;
            Rational s(i, res), t(j, res);
            s.canonicalize();
            t.canonicalize();
            out.emplace_back(a0 + (a1 - a0) * s, b0 + (b1 - b0) * t);
        }
    return out;
}

Certificate<Rational> certify(const PNPatch& p, const Domain& dom) { return certify(p.x, p.field, dom); }

PolyVec integrate_pair(const PolyVec& q, const PolyVec& r) {
    if (q.dim() != r.dim()) throw Error(ErrorKind::DimensionMismatch, "q and r differ in dimension");
    if (diff(q, Var::V) != diff(r, Var::U)) throw Error(ErrorKind::InvariantViolation, "q_v differs from r_u");
    PolyVec x(q.dim());
    for (std::size_t c = 0; c < q.dim(); ++c) {
        BiPoly r0 = compose(r[c], BiPoly(), BiPoly::v());
        x[c] = integrate(q[c], Var::U) + integrate(r0, Var::V);
    }
    return x;
}

std::pair<PolyVec, PolyVec> TangentFamily::qr(std::size_t k) const {
    const auto& b = solution.basis.at(k);
    int dim = metric.dim();
    return {assemble(solution.labels, b, dim, 0), assemble(solution.labels, b, dim, 1)};
}

PolyVec TangentFamily::surface(std::size_t k) const {
    auto [q, r] = qr(k);
    return integrate_pair(q, r);
}

PolyVec TangentFamily::surface_from(const std::vector<Rational>& coeffs) const {
    int dim = metric.dim();
    return integrate_pair(assemble(solution.labels, coeffs, dim, 0), assemble(solution.labels, coeffs, dim, 1));
}

TangentFamily tangent_family(const std::vector<PolyVec>& fields, Metric m, int ell) {
    if (ell < 0) throw Error(ErrorKind::InvalidInput, "negative tangent-field degree");
    SystemBuilder<Rational> sb;
    int dim = m.dim();
    LinPolyVec<Rational> q(dim), r(dim);
    // unknowns: q coordinate-major, then r
    for (int blk = 0; blk < 2; ++blk)
        for (int c = 0; c < dim; ++c)
            for (Monomial mo : monomials_up_to(ell)) {
                int idx = sb.add_unknown({blk, c, mo.i, mo.j});
                (blk == 0 ? q : r)[c].add_term(mo, LinearForm<Rational>::unknown(idx));
            }
    for (const auto& n : fields) {
        if (static_cast<int>(n.dim()) != dim) throw Error(ErrorKind::DimensionMismatch, "field dimension differs from metric");
        sb.add_identity_zero(inner(q, n, m));
        sb.add_identity_zero(inner(r, n, m));
    }
    sb.add_identity_zero(diff(q, Var::V) - diff(r, Var::U));
    TangentFamily out{m, ell, fields, nullspace(sb.build())};
    return out;
}

PNFamily pn_family(const NormalField& n, int ell) {
    if (n.n.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "normal field is zero");
    PNFamily out{n, tangent_family({n.n}, Metric::euclidean3(), ell)};
    int k = n.n.degree();
    out.lambda = lambda_dim(ell, k);
    out.omega = omega_dim(ell);
    out.bound = family_dim_bound(ell, k);
    return out;
}

std::vector<RVec> PNHermiteResult::corner_residuals(const PolyVec& x) const {
    const auto& corners = data.size() == 4 ? quad_corners() : tri_corners();
    std::vector<RVec> out;
    for (std::size_t k = 0; k < data.size(); ++k) {
        RVec e = evaluate(x, Rational(corners[k][0]), Rational(corners[k][1]));
        for (int c = 0; c < 3; ++c) e[c] -= data[k].point[c];
        out.push_back(e);
    }
    return out;
}

PNHermiteResult hermite_pn(const std::vector<PNHermitePoint>& data, int degree, const ProjectionOptions& opt) {
    if (data.size() != 3 && data.size() != 4) throw Error(ErrorKind::InvalidInput, "need 3 or 4 Hermite points");
    if (degree < 1) throw Error(ErrorKind::InvalidInput, "degree must be at least 1");
    std::vector<RVec> normals;
    for (const auto& p : data) {
        validate(p);
        normals.push_back(p.unit_normal);
    }
    PNHermiteResult out{pn_normal_field(normals, opt), {}, data};
    auto sys = make_surface_system<Rational>(3, degree);
    add_tangency(sys, out.construction.field.n, Metric::euclidean3());
    const auto& corners = data.size() == 4 ? quad_corners() : tri_corners();
    for (std::size_t k = 0; k < data.size(); ++k) add_point(sys, corners[k], data[k].point);
    out.family = solve_surface(sys);
    return out;
}

PNHermiteResult hermite_quad(const std::array<PNHermitePoint, 4>& data, int degree, const ProjectionOptions& opt) {
    return hermite_pn({data.begin(), data.end()}, degree, opt);
}

PNHermiteResult hermite_tri(const std::array<PNHermitePoint, 3>& data, int degree, const ProjectionOptions& opt) {
    return hermite_pn({data.begin(), data.end()}, degree, opt);
}

PNHermiteResult hermite_pn_search(const std::vector<PNHermitePoint>& data, const ProjectionOptions& opt, std::vector<int>* tried) {
    std::vector<RVec> normals;
    for (const auto& p : data) normals.push_back(p.unit_normal);
    int k = pn_normal_field(normals, opt).field.n.degree();
    for (int d = std::max(k, 2); d <= 2 * k + 6; ++d) {
        try {
            return hermite_pn(data, d, opt);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Inconsistent) throw;
            if (tried) tried->push_back(d);
        }
    }
    throw Error(ErrorKind::Inconsistent, "no interpolant up to degree " + std::to_string(2 * k + 6));
}

}  // namespace pnforge
