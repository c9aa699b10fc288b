#include "pnforge/mos.hpp"

#include <algorithm>

namespace pnforge {

namespace {

PolyVec spatial(const PolyVec& x) { return PolyVec{x[0], x[1], x[2]}; }

BiPoly dot3(const PolyVec& a, const PolyVec& b) { return inner(a, b, Metric::euclidean3()); }

Integer denominators(const PolyVec& x) {
    Integer l = 1;
    for (const auto& c : x)
        for (const auto& [m, a] : c.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    return l;
}

// Same rational vector with integer numerators and denominator; keeps the
// exact checks in integer arithmetic.
void clear_denominators(RationalVec3& r) {
    PolyVec all{r.num[0], r.num[1], r.num[2], r.den};
    Rational l(denominators(all));
    for (auto& c : r.num) c = c.scaled(l);
    r.den = r.den.scaled(l);
}

}  // namespace

FirstForm minkowski_first_form(const PolyVec& x) {
    const Metric m = Metric::minkowski31();
    auto xu = diff(x, Var::U), xv = diff(x, Var::V);
    return {inner(xu, xu, m), inner(xu, xv, m), inner(xv, xv, m)};
}

FirstForm euclidean_first_form(const PolyVec& xhat) {
    auto xu = diff(xhat, Var::U), xv = diff(xhat, Var::V);
    return {dot3(xu, xu), dot3(xu, xv), dot3(xv, xv)};
}

BiPoly mos_certify(const PolyVec& x) {
    if (x.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "MOS surfaces live in R^{3,1}");
    BiPoly d = minkowski_first_form(x).discriminant();
    auto s = perfect_square_root(d);
    if (!s) throw Error(ErrorKind::NotMOS, "EG - F^2 is not a perfect square");
    return *s;
}

MOSPatch make_mos_patch(const PolyVec& x, const NormalField& nplus, const std::optional<NormalField>& nminus) {
    return {x, nplus, nminus, mos_certify(x)};
}

bool check_mos_patch(const MOSPatch& p) {
    const Metric m = Metric::minkowski31();
    auto xu = diff(p.x, Var::U), xv = diff(p.x, Var::V);
    std::vector<const NormalField*> fields{&p.nplus};
    if (p.nminus) fields.push_back(&*p.nminus);
    for (const auto* f : fields) {
        if (!inner(f->n, f->n, m).is_zero()) return false;
        if (!inner(xu, f->n, m).is_zero() || !inner(xv, f->n, m).is_zero()) return false;
    }
    return minkowski_first_form(p.x).discriminant() == p.sigma * p.sigma;
}

MOSFamily mos_family(const NormalField& nplus, const std::optional<NormalField>& nminus, int ell) {
    const Metric m = Metric::minkowski31();
    std::vector<PolyVec> fields{nplus.n};
    if (!inner(nplus.n, nplus.n, m).is_zero()) throw Error(ErrorKind::InvalidInput, "nplus is not isotropic");
    if (nminus) {
        if (!inner(nminus->n, nminus->n, m).is_zero()) throw Error(ErrorKind::InvalidInput, "nminus is not isotropic");
        fields.push_back(nminus->n);
    }
    return {nplus, nminus, tangent_family(fields, m, ell)};
}

std::vector<RVec> MOSHermiteResult::corner_residuals(const PolyVec& x) const {
    const auto& corners = data.size() == 4 ? quad_corners() : tri_corners();
    std::vector<RVec> out;
    for (std::size_t k = 0; k < data.size(); ++k) {
        RVec e = evaluate(x, Rational(corners[k][0]), Rational(corners[k][1]));
        for (int c = 0; c < 4; ++c) e[c] -= data[k].point[c];
        out.push_back(e);
    }
    return out;
}

std::vector<RVec> MOSHermiteResult::corner_normal_residuals(const PolyVec& x) const {
    const auto& corners = data.size() == 4 ? quad_corners() : tri_corners();
    const Metric m = Metric::minkowski31();
    auto xu = diff(x, Var::U), xv = diff(x, Var::V);
    std::vector<RVec> out;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const RVec& other = branch == Branch::Plus ? corner_normals[k].nminus : corner_normals[k].nplus;
        Rational a(corners[k][0]), b(corners[k][1]);
        out.push_back({inner(evaluate(xu, a, b), other, m), inner(evaluate(xv, a, b), other, m)});
    }
    return out;
}

MOSHermiteResult hermite_mos(const std::vector<MOSHermitePoint>& data, int degree, const MOSOptions& opt) {
    if (data.size() != 3 && data.size() != 4) throw Error(ErrorKind::InvalidInput, "need 3 or 4 Hermite points");
    if (degree < 1) throw Error(ErrorKind::InvalidInput, "degree must be at least 1");
    MOSHermiteResult out;
    out.data = data;
    out.branch = opt.branch;
    std::vector<RVec> chosen;
    for (const auto& p : data) {
        validate(p);
        out.corner_normals.push_back(isotropic_normals(p.tangent1, p.tangent2, opt.isotropic));
        chosen.push_back(opt.branch == Branch::Plus ? out.corner_normals.back().nplus : out.corner_normals.back().nminus);
    }
    out.construction = mos_normal_field(chosen, opt.projection);
    const Metric m = Metric::minkowski31();
    auto sys = make_surface_system<Rational>(4, degree);
    add_tangency(sys, out.construction.field.n, m);
    const auto& corners = data.size() == 4 ? quad_corners() : tri_corners();
    for (std::size_t k = 0; k < data.size(); ++k) {
        add_point(sys, corners[k], data[k].point);
        const RVec& other = opt.branch == Branch::Plus ? out.corner_normals[k].nminus : out.corner_normals[k].nplus;
        add_corner_normal(sys, corners[k], other, m);
    }
    out.family = solve_surface(sys);
    return out;
}

MOSHermiteResult hermite_quad_mos(const std::array<MOSHermitePoint, 4>& data, int degree, const MOSOptions& opt) {
    return hermite_mos({data.begin(), data.end()}, degree, opt);
}

MOSHermiteResult hermite_tri_mos(const std::array<MOSHermitePoint, 3>& data, int degree, const MOSOptions& opt) {
    return hermite_mos({data.begin(), data.end()}, degree, opt);
}

MOSHermiteResult hermite_mos_search(const std::vector<MOSHermitePoint>& data, const MOSOptions& opt, std::vector<int>* tried) {
    std::vector<RVec> chosen;
    for (const auto& p : data) {
        auto pr = isotropic_normals(p.tangent1, p.tangent2, opt.isotropic);
        chosen.push_back(opt.branch == Branch::Plus ? pr.nplus : pr.nminus);
    }
    int k = mos_normal_field(chosen, opt.projection).field.n.degree();
    for (int d = std::max(k, 2); d <= 2 * k + 6; ++d) {
        try {
            return hermite_mos(data, d, opt);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Inconsistent) throw;
            if (tried) tried->push_back(d);
        }
    }
    throw Error(ErrorKind::Inconsistent, "no interpolant up to degree " + std::to_string(2 * k + 6));
}

std::array<double, 3> RationalVec3::eval(double u, double v) const {
    double d = evaluate_double(den, u, v);
    return {evaluate_double(num[0], u, v) / d, evaluate_double(num[1], u, v) / d, evaluate_double(num[2], u, v) / d};
}

EnvelopePair envelope(const PolyVec& x, const BiPoly& sigma) {
    if (x.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "MOS surfaces live in R^{3,1}");
    PolyVec xh = spatial(x);
    const BiPoly& r = x[3];
    auto xu = diff(xh, Var::U), xv = diff(xh, Var::V);
    BiPoly ru = diff(r, Var::U), rv = diff(r, Var::V);
    FirstForm ef = euclidean_first_form(xh);
    BiPoly W = ef.discriminant();
    if (W.is_zero()) throw Error(ErrorKind::DegenerateMedial, "ÊĜ - F̂² vanishes identically");
    BiPoly alpha = ru * ef.G - rv * ef.F, beta = rv * ef.E - ru * ef.F;
    PolyVec base = alpha * xu + beta * xv;
    PolyVec normal = sigma * cross3(xu, xv);
    EnvelopePair env;
    PolyVec nums[2] = {base - normal, base + normal};
    RationalVec3* ns[2] = {&env.nplus, &env.nminus};
    RationalVec3* bs[2] = {&env.bplus, &env.bminus};
    for (int s = 0; s < 2; ++s) {
        for (int c = 0; c < 3; ++c) {
            ns[s]->num[c] = nums[s][c];
            bs[s]->num[c] = W * xh[c] - r * nums[s][c];
        }
        ns[s]->den = W;
        bs[s]->den = W;
        clear_denominators(*ns[s]);
        clear_denominators(*bs[s]);
    }
    return env;
}

EnvelopeCheck check_envelope(const PolyVec& x, const EnvelopePair& env) {
    // x = X / l with X integral: compare l b against X
    Rational l(denominators(x));
    PolyVec X = x.map([&](const BiPoly& p) { return p.scaled(l); });
    PolyVec xh = spatial(X);
    const BiPoly& r = X[3];
    EnvelopeCheck out{true, true, true};
    for (int s = 0; s < 2; ++s) {
        const RationalVec3& n = s ? env.nminus : env.nplus;
        const RationalVec3& b = s ? env.bminus : env.bplus;
        PolyVec N{n.num[0], n.num[1], n.num[2]};
        PolyVec B{b.num[0], b.num[1], b.num[2]};
        const BiPoly& W = n.den;
        if (dot3(N, N) != W * W) out.unit_normals = false;
        PolyVec off = B.map([&](const BiPoly& p) { return p.scaled(l); }) - b.den * xh;
        if (dot3(off, off) != r * r * b.den * b.den) out.distance = false;
        for (Var w : {Var::U, Var::V}) {
            PolyVec db = b.den * diff(B, w) - diff(b.den, w) * B;
            if (!dot3(N, db).is_zero()) out.perpendicular = false;
        }
    }
    return out;
}

}  // namespace pnforge
