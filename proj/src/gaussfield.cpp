#include "pnforge/gaussfield.hpp"

#include "pnforge/exactla.hpp"

#include <cmath>

namespace pnforge {

void validate(const PNHermitePoint& p) {
    if (p.point.size() != 3 || p.unit_normal.size() != 3)
        throw Error(ErrorKind::InvalidInput, "PN Hermite data need 3-vectors");
    if (dot(p.unit_normal, p.unit_normal) != 1)
        throw Error(ErrorKind::InvalidInput, "normal is not of unit length");
}

void validate(const MOSHermitePoint& p) {
    if (p.point.size() != 4 || p.tangent1.size() != 4 || p.tangent2.size() != 4)
        throw Error(ErrorKind::InvalidInput, "MOS Hermite data need 4-vectors");
    Matrix<Rational> m(2, 4);
    for (int k = 0; k < 4; ++k) {
        m(0, k) = p.tangent1[k];
        m(1, k) = p.tangent2[k];
    }
    if (rank(m) != 2) throw Error(ErrorKind::InvalidInput, "tangent vectors are dependent");
}

Rational center_margin(const RVec& N, const RVec& center) { return 1 - dot(N, center); }

PlanarPoint stereo_project(const RVec& N, const RVec& center, const Rational& threshold, std::vector<std::string>* warnings) {
    if (N.size() != 3) throw Error(ErrorKind::DimensionMismatch, "stereographic projection needs a 3-vector");
    RVec x = center == default_center() ? N : rotation_to_pole(center).apply(N);
    Rational margin = 1 - x[2];
    if (sgn(margin) == 0) throw Error(ErrorKind::AtCenter, "direction coincides with the projection center");
    if (margin < threshold && warnings)
        warnings->push_back("NearCenter: margin " + to_string(margin) + " below threshold " + to_string(threshold));
    return {x[0] / margin, x[1] / margin};
}

RVec stereo_unproject(const PlanarPoint& a) {
    Rational s = a[0] * a[0] + a[1] * a[1];
    return {2 * a[0] / (s + 1), 2 * a[1] / (s + 1), (s - 1) / (s + 1)};
}

PolyVec planar_patch_quad(const std::array<PlanarPoint, 4>& p) {
    BiPoly u = BiPoly::u(), v = BiPoly::v(), one(Rational(1));
    BiPoly w00 = (one - u) * (one - v), w10 = u * (one - v), w11 = u * v, w01 = (one - u) * v;
    PolyVec out(2);
    for (int k = 0; k < 2; ++k)
        out[k] = w00.scaled(p[0][k]) + w10.scaled(p[1][k]) + w11.scaled(p[2][k]) + w01.scaled(p[3][k]);
    return out;
}

PolyVec planar_patch_tri(const std::array<PlanarPoint, 3>& p) {
    BiPoly u = BiPoly::u(), v = BiPoly::v(), one(Rational(1));
    PolyVec out(2);
    for (int k = 0; k < 2; ++k) out[k] = (one - u - v).scaled(p[0][k]) + u.scaled(p[1][k]) + v.scaled(p[2][k]);
    return out;
}

PolyVec primitive_polyvec(const PolyVec& x) {
    Integer l = 1, g = 0;
    for (const auto& c : x)
        for (const auto& [m, a] : c.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    for (const auto& c : x)
        for (const auto& [m, a] : c.terms()) {
            Rational s = a * Rational(l);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
        }
    if (g == 0) return x;
    Rational f(l, g);
    f.canonicalize();
    return x.map([&](const BiPoly& p) { return p.scaled(f); });
}

NormalField lift_isotropic(const PolyVec& Nhat) {
    if (Nhat.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "planar patch must have two components");
    BiPoly s = Nhat[0] * Nhat[0] + Nhat[1] * Nhat[1], one(Rational(1)), two(Rational(2));
    PolyVec n = primitive_polyvec(PolyVec{two * Nhat[0], two * Nhat[1], s - one, s + one});
    return {n, n[3], FieldKind::Isotropic4};
}

namespace {

RVec primitive_positive_last(RVec x) {
    make_primitive(x);
    if (sgn(x[3]) < 0)
        for (auto& c : x) c = -c;
    return x;
}

}  // namespace

IsotropicPair isotropic_normals(const RVec& t1, const RVec& t2, const IsotropicOptions& opt) {
    if (t1.size() != 4 || t2.size() != 4) throw Error(ErrorKind::DimensionMismatch, "tangent vectors must be 4-vectors");
    const Metric mk = Metric::minkowski31();
    LinearSystem<Rational> sys{Matrix<Rational>(2, 4), {Rational(0), Rational(0)}, {}};
    for (int k = 0; k < 4; ++k) {
        sys.matrix(0, k) = mk.sign(k) * t1[k];
        sys.matrix(1, k) = mk.sign(k) * t2[k];
        sys.labels.push_back({0, k, 0, 0});
    }
    auto fam = nullspace(sys);
    if (fam.dimension() != 2) throw Error(ErrorKind::InvalidInput, "tangent vectors are dependent");
    const RVec& w1 = fam.basis[0];
    const RVec& w2 = fam.basis[1];
    Rational a = inner(w1, w1, mk), b = inner(w1, w2, mk), c = inner(w2, w2, mk);
    Rational disc = b * b - a * c;
    if (sgn(disc) <= 0)
        throw Error(ErrorKind::NoRealIsotropics,
                    sgn(disc) == 0 ? "tangent plane is lightlike" : "tangent plane is timelike: no real isotropic normals");
    auto root = rational_sqrt(disc);
    if (!root) {
        if (!opt.approximate)
            throw Error(ErrorKind::IrrationalIsotropics, "discriminant " + to_string(disc) + " is not a rational square");
        root = rationalize(std::sqrt(disc.get_d()), opt.tolerance);
    }
    auto combine = [&](const Rational& al, const Rational& be) {
        RVec x(4);
        for (int k = 0; k < 4; ++k) x[k] = al * w1[k] + be * w2[k];
        return primitive_positive_last(x);
    };
    RVec p, q;
    if (sgn(a) != 0) {
        p = combine(-b + *root, a);
        q = combine(-b - *root, a);
    } else {
        p = combine(1, 0);
        q = combine(-c, 2 * b);
    }
    // nplus: smaller n3/n4, then lexicographic
    Rational lp = p[2] / p[3], lq = q[2] / q[3];
    bool p_first = lp < lq || (lp == lq && p < q);
    return p_first ? IsotropicPair{p, q} : IsotropicPair{q, p};
}

RVec sphere_direction(const RVec& n) {
    if (n.size() != 4 || sgn(n[3]) == 0) throw Error(ErrorKind::InvalidInput, "isotropic vector needs a nonzero last coordinate");
    if (inner(n, n, Metric::minkowski31()) != 0) throw Error(ErrorKind::InvalidInput, "vector is not isotropic");
    return {n[0] / n[3], n[1] / n[3], n[2] / n[3]};
}

const std::vector<RVec>& candidate_centers() {
    static const std::vector<RVec> list = [] {
        std::vector<RVec> out;
        for (int axis = 2; axis >= 0; --axis)
            for (int s : {1, -1}) {
                RVec c(3, Rational(0));
                c[axis] = s;
                out.push_back(c);
            }
        const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (auto& pr : pairs)
            for (int sa : {1, -1})
                for (int sb : {1, -1}) {
                    RVec c(3, Rational(0));
                    c[pr[0]] = Rational(20 * sa, 29);
                    c[pr[1]] = Rational(21 * sb, 29);
                    out.push_back(c);
                }
        for (int sx : {1, -1})
            for (int sy : {1, -1})
                for (int sz : {1, -1}) out.push_back({Rational(6 * sx, 11), Rational(6 * sy, 11), Rational(7 * sz, 11)});
        return out;
    }();
    return list;
}

Rotation auto_rotate_frame(const std::vector<RVec>& normals, const Rational& threshold) {
    auto min_margin = [&](const RVec& c) {
        Rational m = 2;
        for (const auto& N : normals) m = std::min(m, center_margin(N, c));
        return m;
    };
    if (min_margin(default_center()) >= threshold) return Rotation::identity();
    const RVec* best = nullptr;
    Rational best_margin = -1;
    for (const auto& c : candidate_centers()) {
        Rational m = min_margin(c);
        if (m > best_margin) {
            best_margin = m;
            best = &c;
        }
    }
    if (best_margin < threshold)
        throw Error(ErrorKind::NoSafeCenter, "best candidate center has margin " + to_string(best_margin));
    return rotation_to_pole(*best);
}

const std::vector<std::array<int, 2>>& quad_corners() {
    static const std::vector<std::array<int, 2>> c{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return c;
}
const std::vector<std::array<int, 2>>& tri_corners() {
    static const std::vector<std::array<int, 2>> c{{0, 0}, {1, 0}, {0, 1}};
    return c;
}

std::optional<Rational> proportionality(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::size_t k = 0;
    while (k < b.size() && sgn(b[k]) == 0) ++k;
    if (k == b.size()) return std::nullopt;
    Rational lam = a[k] / b[k];
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != lam * b[j]) return std::nullopt;
    return lam;
}

namespace {

Rotation choose_frame(const std::vector<RVec>& dirs, const ProjectionOptions& opt) {
    if (opt.center) return rotation_to_pole(*opt.center);
    if (opt.auto_rotate) return auto_rotate_frame(dirs, opt.threshold);
    return Rotation::identity();
}

PolyVec patch_through(const std::vector<PlanarPoint>& images) {
    if (images.size() == 4) return planar_patch_quad({images[0], images[1], images[2], images[3]});
    if (images.size() == 3) return planar_patch_tri({images[0], images[1], images[2]});
    throw Error(ErrorKind::InvalidInput, "need 3 or 4 corner normals");
}

const std::vector<std::array<int, 2>>& corners_for(std::size_t count) {
    return count == 4 ? quad_corners() : tri_corners();
}

}  // namespace

FieldConstruction pn_normal_field(const std::vector<RVec>& normals, const ProjectionOptions& opt) {
    for (const auto& N : normals)
        if (N.size() != 3 || dot(N, N) != 1) throw Error(ErrorKind::InvalidInput, "normals must be rational unit 3-vectors");
    FieldConstruction out;
    out.rotation = choose_frame(normals, opt);
    if (!out.rotation.is_identity()) out.warnings.push_back("frame rotated before projection");
    for (const auto& N : normals)
        out.images.push_back(stereo_project(out.rotation.apply(N), default_center(), opt.threshold, &out.warnings));
    out.nhat = patch_through(out.images);
    out.field = lift_pythagorean(out.nhat);
    out.field.n = out.rotation.transpose().apply(out.field.n);
    const auto& corners = corners_for(normals.size());
    for (std::size_t k = 0; k < normals.size(); ++k) {
        auto nc = evaluate(out.field.n, Rational(corners[k][0]), Rational(corners[k][1]));
        auto lam = proportionality(nc, normals[k]);
        if (!lam || sgn(*lam) <= 0) throw Error(ErrorKind::InvariantViolation, "lifted field misses a corner normal");
        out.corner_scales.push_back(*lam);
    }
    return out;
}

FieldConstruction mos_normal_field(const std::vector<RVec>& isotropics, const ProjectionOptions& opt) {
    std::vector<RVec> dirs;
    for (const auto& n : isotropics) dirs.push_back(sphere_direction(n));
    FieldConstruction out;
    out.rotation = choose_frame(dirs, opt);
    if (!out.rotation.is_identity()) out.warnings.push_back("frame rotated before projection");
    for (const auto& d : dirs)
        out.images.push_back(stereo_project(out.rotation.apply(d), default_center(), opt.threshold, &out.warnings));
    out.nhat = patch_through(out.images);
    out.field = lift_isotropic(out.nhat);
    if (!out.rotation.is_identity()) {
        PolyVec spatial = out.rotation.transpose().apply(PolyVec{out.field.n[0], out.field.n[1], out.field.n[2]});
        out.field.n = PolyVec{spatial[0], spatial[1], spatial[2], out.field.n[3]};
    }
    const auto& corners = corners_for(isotropics.size());
    for (std::size_t k = 0; k < isotropics.size(); ++k) {
        auto nc = evaluate(out.field.n, Rational(corners[k][0]), Rational(corners[k][1]));
        auto lam = proportionality(nc, isotropics[k]);
        if (!lam || sgn(*lam) <= 0) throw Error(ErrorKind::InvariantViolation, "lifted field misses a corner normal");
        out.corner_scales.push_back(*lam);
    }
    return out;
}

}  // namespace pnforge
