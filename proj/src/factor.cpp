#include "pnforge/factor.hpp"

#include <algorithm>

namespace pnforge {
namespace {

// Dense univariate polynomials in v over Q, index = exponent.
using UPoly = std::vector<Rational>;

void trim(UPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

UPoly usub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
    trim(r);
    return r;
}

UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < b.size(); ++y) r[x + y] += a[x] * b[y];
    trim(r);
    return r;
}

// quotient and remainder over a field
std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly& b) {
    UPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
        trim(a);
    }
    trim(q);
    return {q, a};
}

UPoly umonic(UPoly a) {
    if (a.empty()) return a;
    Rational l = a.back();
    for (auto& c : a) c /= l;
    return a;
}

UPoly ugcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = udivmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(a);
}

// Polynomial in u with coefficients in Q[v]; index = u-exponent.
using RPoly = std::vector<UPoly>;

void rtrim(RPoly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}

RPoly to_rpoly(const BiPoly& p) {
    RPoly r;
    for (const auto& [m, c] : p.terms()) {
        if (static_cast<int>(r.size()) <= m.i) r.resize(m.i + 1);
        UPoly& col = r[m.i];
        if (static_cast<int>(col.size()) <= m.j) col.resize(m.j + 1, Rational(0));
        col[m.j] = c;
    }
    for (auto& c : r) trim(c);
    rtrim(r);
    return r;
}

BiPoly from_rpoly(const RPoly& r) {
    BiPoly p;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) p.add_term({int(i), int(j)}, r[i][j]);
    return p;
}

UPoly rcontent(const RPoly& a) {
    UPoly g;
    for (const auto& c : a) {
        g = ugcd(g, c);
        if (g.size() == 1) break;
    }
    return g;
}

RPoly rdiv_content(const RPoly& a, const UPoly& c) {
    RPoly r;
    for (const auto& x : a) r.push_back(udivmod(x, c).first);
    return r;
}

// pseudo-remainder of a by b with respect to u
RPoly prem(RPoly a, const RPoly& b) {
    const UPoly& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        UPoly la = a.back();
        for (auto& c : a) c = umul(c, lb);
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = usub(a[k + shift], umul(la, b[k]));
        rtrim(a);
    }
    return a;
}

}  // namespace

ContentSplit primitive_split(const BiPoly& p) {
    if (p.is_zero()) return {Rational(0), BiPoly()};
    Integer l = 1, g = 0;
    for (const auto& [m, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [m, c] : p.terms()) {
        Rational s = c * Rational(l);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
    Rational factor(l, g);
    factor.canonicalize();
    if (sgn(p.leading().second) < 0) factor = -factor;
    return {Rational(1) / factor, p.scaled(factor)};
}

BiPoly gcd(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    RPoly x = to_rpoly(a), y = to_rpoly(b);
    UPoly cx = rcontent(x), cy = rcontent(y);
    UPoly c = ugcd(cx, cy);
    x = rdiv_content(x, cx);
    y = rdiv_content(y, cy);
    if (x.size() < y.size()) std::swap(x, y);
    while (y.size() > 1) {
        RPoly r = prem(x, y);
        x = std::move(y);
        if (r.empty()) {
            y.clear();
            break;
        }
        y = rdiv_content(r, rcontent(r));
    }
    // y nonempty here means its u-degree is zero: the primitive parts are coprime
    RPoly g = y.empty() ? x : RPoly{UPoly{Rational(1)}};
    for (auto& coef : g) coef = umul(coef, c);
    return primitive_part(from_rpoly(g));
}

SquarefreeResult gcd_and_squarefree(const BiPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "square-free part of zero");
    auto split = primitive_split(p);
    BiPoly g = gcd(gcd(split.primitive, diff(split.primitive, Var::U)), diff(split.primitive, Var::V));
    return {split.content, primitive_part(*divide_exact(split.primitive, g))};
}

SquarefreeDecomposition squarefree_decomposition(const BiPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "square-free decomposition of zero");
    auto split = primitive_split(p);
    SquarefreeDecomposition out{split.content, {}};
    BiPoly c = gcd(gcd(split.primitive, diff(split.primitive, Var::U)), diff(split.primitive, Var::V));
    BiPoly w = *divide_exact(split.primitive, c);
    for (int mult = 1; !w.is_constant(); ++mult) {
        BiPoly y = gcd(w, c);
        BiPoly z = primitive_part(*divide_exact(w, y));
        if (!z.is_constant()) out.factors.emplace_back(z, mult);
        w = y;
        c = *divide_exact(c, y);
    }
    // fold leftover constants into the content
    BiPoly prod(Rational(1));
    for (const auto& [f, e] : out.factors) prod *= f.pow(e);
    out.content = split.content * (split.primitive.leading().second / prod.leading().second);
    return out;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (sgn(r) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    return Rational(n, d);
}

std::optional<BiPoly> perfect_square_root(const BiPoly& p) {
    if (p.is_zero()) return BiPoly();
    // Term-by-term from the top: LT(p) = LT(s)^2, and each further term of s
    // is LT(p - s^2) / (2 LT(s)). The greedy root is unique, so a failure
    // at any step means p is not a square.
    const auto& [m0, c0] = p.leading();
    if (m0.i % 2 || m0.j % 2) return std::nullopt;
    auto lc = rational_sqrt(c0);
    if (!lc) return std::nullopt;
    const Monomial top{m0.i / 2, m0.j / 2};
    const Rational twice = 2 * *lc;
    BiPoly s = BiPoly::term(top.i, top.j, *lc);
    BiPoly r = p - s * s;
    GradedLexLess less;
    while (!r.is_zero()) {
        const auto& [m, c] = r.leading();
        Monomial t{m.i - top.i, m.j - top.j};
        if (t.i < 0 || t.j < 0 || !less(t, top)) return std::nullopt;
        BiPoly term = BiPoly::term(t.i, t.j, c / twice);
        r -= term * (s + s + term);
        s += term;
    }
    return s;
}

}  // namespace pnforge
