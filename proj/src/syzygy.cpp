#include "pnforge/syzygy.hpp"

#include "pnforge/exactla.hpp"
#include "pnforge/factor.hpp"
#include "pnforge/geometry.hpp"
#include "pnforge/pn.hpp"

#include <algorithm>
#include <map>

namespace pnforge {

HomNormalField::HomNormalField(std::array<HomTriPoly, 3> N) : N_(std::move(N)) {
    int k = N_[0].degree();
    for (const auto& c : N_)
        if (c.degree() != k) throw Error(ErrorKind::InvalidInput, "components must share one degree");
    bool all_zero = std::all_of(N_.begin(), N_.end(), [](const HomTriPoly& c) { return c.is_zero(); });
    if (all_zero) throw Error(ErrorKind::ZeroPolynomial, "normal field is zero");
    // powers of w dividing every component
    int e = k;
    for (const auto& c : N_)
        for (const auto& [x, a] : c.terms()) e = std::min(e, x.k);
    BiPoly g;
    for (const auto& c : N_) g = gcd(g, dehomogenize(c));
    int dg = g.degree();
    if (e == 0 && dg == 0) return;
    std::string factor = to_string(homogenize(g, dg));
    if (e > 0) factor = (factor == "1" ? "" : factor + "*") + "w^" + std::to_string(e);
    warnings_.push_back("components share the factor " + factor + "; removed");
    int k2 = k - e - dg;
    for (auto& c : N_) {
        HomTriPoly shifted(k - e);
        for (const auto& [x, a] : c.terms()) shifted.add_term({x.i, x.j, x.k - e}, a);
        c = homogenize(*divide_exact(dehomogenize(shifted), g), k2);
    }
}

HomNormalField HomNormalField::from_field(const PolyVec& n) {
    if (n.dim() != 3) throw Error(ErrorKind::DimensionMismatch, "normal field must have three components");
    int k = std::max(0, n.degree());
    return HomNormalField({homogenize(n[0], k), homogenize(n[1], k), homogenize(n[2], k)});
}

long long syzygy_dim(const HomNormalField& N, int l) {
    if (l < 0) return 0;
    auto monos = hom_monomials(l);
    const long long cols = 3 * static_cast<long long>(monos.size());
    std::map<TriExp, std::size_t> row_of;
    for (auto m : hom_monomials(l + N.degree())) row_of.emplace(m, row_of.size());
    Matrix<Rational> A(row_of.size(), cols);
    for (int c = 0; c < 3; ++c)
        for (std::size_t a = 0; a < monos.size(); ++a)
            for (const auto& [x, coef] : N.components()[c].terms()) {
                TriExp p{monos[a].i + x.i, monos[a].j + x.j, monos[a].k + x.k};
                A(row_of.at(p), c * monos.size() + a) += coef;
            }
    return cols - static_cast<long long>(rank(A));
}

long long hilbert_bound(int k, int l) {
    return std::max(0LL, 3 * choose2(l - k + 2) - choose2(l - 2 * k + 2));
}

BasepointReport basepoint_free_test(const HomNormalField& N, std::optional<int> lmax) {
    BasepointReport rep;
    int k = N.degree();
    rep.lmax = lmax.value_or(3 * k);
    for (int l = 0; l <= rep.lmax; ++l) {
        long long d = syzygy_dim(N, l), b = hilbert_bound(k, l);
        rep.dims.push_back(d);
        rep.bounds.push_back(b);
        if (d > b && !rep.has_base_points) {
            rep.has_base_points = true;
            rep.witness_l = l;
        }
    }
    return rep;
}

std::optional<Rational> syzygy_basis_check(const PolyVec& q, const PolyVec& r, const PolyVec& n) {
    if (q.dim() != 3 || r.dim() != 3 || n.dim() != 3) throw Error(ErrorKind::DimensionMismatch, "need 3-vectors");
    PolyVec c = cross3(q, r);
    if (c.is_zero() || n.is_zero()) return std::nullopt;
    std::size_t k = 0;
    while (n[k].is_zero()) ++k;
    auto f = divide_exact(c[k], n[k]);
    if (!f || !f->is_constant()) return std::nullopt;
    Rational lam = f->constant_term();
    for (int j = 0; j < 3; ++j)
        if (c[j] != n[j].scaled(lam)) return std::nullopt;
    return lam;
}

namespace {

std::optional<BiPoly> divide_vec(const PolyVec& num, const PolyVec& den) {
    std::size_t k = 0;
    while (k < 3 && den[k].is_zero()) ++k;
    if (k == 3) return std::nullopt;
    auto f = divide_exact(num[k], den[k]);
    if (!f) return std::nullopt;
    for (int j = 0; j < 3; ++j)
        if (*f * den[j] != num[j]) return std::nullopt;
    return f;
}

}  // namespace

std::optional<std::pair<BiPoly, BiPoly>> decompose_syzygy(const PolyVec& p, const PolyVec& q, const PolyVec& r,
                                                          const PolyVec& n, const Rational& c) {
    // p × r = a c n and q × p = b c n
    PolyVec cn = n.map([&](const BiPoly& x) { return x.scaled(c); });
    auto a = divide_vec(cross3(p, r), cn);
    auto b = divide_vec(cross3(q, p), cn);
    if (!a || !b) return std::nullopt;
    if (*a * q + *b * r != p) return std::nullopt;
    return std::make_pair(*a, *b);
}

std::string describe(const BasepointReport& rep) {
    if (!rep.has_base_points) return "basepoint-free (tested up to ℓ=" + std::to_string(rep.lmax) + ")";
    int l = rep.witness_l;
    return "base points detected (ℓ=" + std::to_string(l) + ": dim " + std::to_string(rep.dims[l]) + " > bound " +
           std::to_string(rep.bounds[l]) + ")";
}

}  // namespace pnforge
