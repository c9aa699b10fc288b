#pragma once
// Sparse bivariate polynomials over an exact coefficient ring.

#include "pnforge/error.hpp"
#include "pnforge/field.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace pnforge {

enum class Var { U, V };

struct Monomial {
    int i = 0;  // exponent of u
    int j = 0;  // exponent of v

    constexpr int degree() const { return i + j; }
    friend constexpr bool operator==(Monomial a, Monomial b) { return a.i == b.i && a.j == b.j; }
};

/// Graded-lexicographic order with u > v: total degree first, then the
/// exponent of u. The leading term of a polynomial is its maximum.
struct GradedLexLess {
    constexpr bool operator()(Monomial a, Monomial b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.i < b.i;
    }
};

/// All monomials of total degree <= d in ascending graded-lex order.
std::vector<Monomial> monomials_up_to(int d);

inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

template <class C>
class BasicPoly {
public:
    using Coeff = C;
    using TermMap = std::map<Monomial, C, GradedLexLess>;

    BasicPoly() = default;
    BasicPoly(const C& constant) { add_term({0, 0}, constant); }
    BasicPoly(int constant) : BasicPoly(C(constant)) {}

    static BasicPoly term(int i, int j, const C& c) {
        BasicPoly p;
        p.add_term({i, j}, c);
        return p;
    }
    static BasicPoly u() { return term(1, 0, C(1)); }
    static BasicPoly v() { return term(0, 1, C(1)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int degree() const { return terms_.empty() ? kZeroDegree : terms_.rbegin()->first.degree(); }
    int degree_in(Var x) const {
        int d = kZeroDegree;
        for (const auto& [m, c] : terms_) d = std::max(d, x == Var::U ? m.i : m.j);
        return d;
    }
    bool is_constant() const { return terms_.empty() || (size() == 1 && terms_.begin()->first.degree() == 0); }

    C coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? C() : it->second;
    }
    C constant_term() const { return coeff(0, 0); }

    /// Leading monomial and coefficient; requires a nonzero polynomial.
    const std::pair<const Monomial, C>& leading() const {
        if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "leading term of zero polynomial");
        return *terms_.rbegin();
    }

    void add_term(Monomial m, const C& c) {
        if (is_zero_coeff(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_coeff(it->second)) terms_.erase(it);
        }
    }

    BasicPoly& operator+=(const BasicPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    BasicPoly& operator-=(const BasicPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, C(-c));
        return *this;
    }
    BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

    template <class S>
    BasicPoly scaled(const S& s) const {
        BasicPoly r;
        for (const auto& [m, c] : terms_) r.add_term(m, C(c * s));
        return r;
    }

    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator-(const BasicPoly& a) {
        BasicPoly r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, C(-c));
        return r;
    }
    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        BasicPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term({ma.i + mb.i, ma.j + mb.j}, C(ca * cb));
        return r;
    }
    friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }

    BasicPoly pow(int e) const {
        BasicPoly r(C(1)), base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r *= base;
            if (e > 1) base *= base;
        }
        return r;
    }

private:
    static bool is_zero_coeff(const C& c) {
        using pnforge::is_zero;
        return is_zero(c);
    }

    TermMap terms_;
};

using BiPoly = BasicPoly<Rational>;

/// Product with a polynomial over a (possibly different) scalar ring whose
/// elements multiply into C.
template <class C, class K>
BasicPoly<C> mul(const BasicPoly<C>& a, const BasicPoly<K>& b) {
    BasicPoly<C> r;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) r.add_term({ma.i + mb.i, ma.j + mb.j}, C(ca * cb));
    return r;
}

template <class C, class K>
BasicPoly<C> convert(const BasicPoly<K>& p) {
    BasicPoly<C> r;
    for (const auto& [m, c] : p.terms()) r.add_term(m, C(c));
    return r;
}

template <class C>
BasicPoly<C> diff(const BasicPoly<C>& p, Var x) {
    BasicPoly<C> r;
    for (const auto& [m, c] : p.terms()) {
        int e = x == Var::U ? m.i : m.j;
        if (e == 0) continue;
        Monomial dm = x == Var::U ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
        r.add_term(dm, C(c * Rational(e)));
    }
    return r;
}

/// Antiderivative with zero constant of integration in x.
template <class C>
BasicPoly<C> integrate(const BasicPoly<C>& p, Var x) {
    BasicPoly<C> r;
    for (const auto& [m, c] : p.terms()) {
        int e = x == Var::U ? m.i : m.j;
        Monomial im = x == Var::U ? Monomial{m.i + 1, m.j} : Monomial{m.i, m.j + 1};
        r.add_term(im, C(c * Rational(1, e + 1)));
    }
    return r;
}

/// Evaluates at (a, b); the coefficient type must absorb products with K.
template <class C, class K>
C evaluate(const BasicPoly<C>& p, const K& a, const K& b) {
    int du = std::max(0, p.degree_in(Var::U)), dv = std::max(0, p.degree_in(Var::V));
    std::vector<K> pa(du + 1, K(1)), pb(dv + 1, K(1));
    for (int k = 1; k <= du; ++k) pa[k] = pa[k - 1] * a;
    for (int k = 1; k <= dv; ++k) pb[k] = pb[k - 1] * b;
    C sum{};
    for (const auto& [m, c] : p.terms()) sum += C(c * K(pa[m.i] * pb[m.j]));
    return sum;
}

/// Floating-point evaluation (sampling and export only).
template <class C>
double evaluate_double(const BasicPoly<C>& p, double a, double b) {
    double s = 0;
    for (const auto& [m, c] : p.terms()) {
        using pnforge::to_double;
        s += to_double(c) * std::pow(a, m.i) * std::pow(b, m.j);
    }
    return s;
}

/// p(pu(u,v), pv(u,v)).
template <class C, class K>
BasicPoly<C> compose(const BasicPoly<C>& p, const BasicPoly<K>& pu, const BasicPoly<K>& pv) {
    int du = std::max(0, p.degree_in(Var::U)), dv = std::max(0, p.degree_in(Var::V));
    std::vector<BasicPoly<K>> powu{BasicPoly<K>(K(1))}, powv{BasicPoly<K>(K(1))};
    for (int k = 1; k <= du; ++k) powu.push_back(powu.back() * pu);
    for (int k = 1; k <= dv; ++k) powv.push_back(powv.back() * pv);
    BasicPoly<C> r;
    for (const auto& [m, c] : p.terms()) r += mul(BasicPoly<C>(c), powu[m.i] * powv[m.j]);
    return r;
}

/// Exact quotient p / q over a field, or nothing if q does not divide p.
template <class C>
std::optional<BasicPoly<C>> divide_exact(const BasicPoly<C>& p, const BasicPoly<C>& q) {
    if (q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
    BasicPoly<C> rem = p, quo;
    const Monomial lm = q.leading().first;
    const C lc = q.leading().second;
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (rm.i < lm.i || rm.j < lm.j) return std::nullopt;
        BasicPoly<C> t = BasicPoly<C>::term(rm.i - lm.i, rm.j - lm.j, C(rc / lc));
        quo += t;
        rem -= t * q;
    }
    return quo;
}

/// Fixed-dimension tuple of polynomials: vector fields and parametrizations.
template <class C>
class BasicPolyVec {
public:
    BasicPolyVec() = default;
    explicit BasicPolyVec(std::size_t dim) : comps_(dim) {}
    BasicPolyVec(std::initializer_list<BasicPoly<C>> comps) : comps_(comps) {}
    explicit BasicPolyVec(std::vector<BasicPoly<C>> comps) : comps_(std::move(comps)) {}

    std::size_t dim() const { return comps_.size(); }
    BasicPoly<C>& operator[](std::size_t k) { return comps_[k]; }
    const BasicPoly<C>& operator[](std::size_t k) const { return comps_[k]; }
    auto begin() const { return comps_.begin(); }
    auto end() const { return comps_.end(); }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }
    int degree() const {
        int d = kZeroDegree;
        for (const auto& c : comps_) d = std::max(d, c.degree());
        return d;
    }

    BasicPolyVec& operator+=(const BasicPolyVec& o) {
        check(o);
        for (std::size_t k = 0; k < dim(); ++k) comps_[k] += o.comps_[k];
        return *this;
    }
    BasicPolyVec& operator-=(const BasicPolyVec& o) {
        check(o);
        for (std::size_t k = 0; k < dim(); ++k) comps_[k] -= o.comps_[k];
        return *this;
    }
    friend BasicPolyVec operator+(BasicPolyVec a, const BasicPolyVec& b) { return a += b; }
    friend BasicPolyVec operator-(BasicPolyVec a, const BasicPolyVec& b) { return a -= b; }
    friend BasicPolyVec operator*(const BasicPoly<C>& s, const BasicPolyVec& a) {
        BasicPolyVec r(a.dim());
        for (std::size_t k = 0; k < a.dim(); ++k) r.comps_[k] = s * a.comps_[k];
        return r;
    }
    friend bool operator==(const BasicPolyVec& a, const BasicPolyVec& b) { return a.comps_ == b.comps_; }
    friend bool operator!=(const BasicPolyVec& a, const BasicPolyVec& b) { return !(a == b); }

    template <class F>
    BasicPolyVec map(F&& f) const {
        BasicPolyVec r(dim());
        for (std::size_t k = 0; k < dim(); ++k) r.comps_[k] = f(comps_[k]);
        return r;
    }

private:
    void check(const BasicPolyVec& o) const {
        if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "vector dimensions differ");
    }

    std::vector<BasicPoly<C>> comps_;
};

using PolyVec = BasicPolyVec<Rational>;

template <class C>
BasicPolyVec<C> diff(const BasicPolyVec<C>& a, Var x) {
    return a.map([x](const BasicPoly<C>& p) { return diff(p, x); });
}

template <class C, class K>
std::vector<C> evaluate(const BasicPolyVec<C>& a, const K& s, const K& t) {
    std::vector<C> r;
    for (const auto& c : a) r.push_back(evaluate(c, s, t));
    return r;
}

template <class C, class K>
BasicPolyVec<C> compose(const BasicPolyVec<C>& a, const BasicPoly<K>& pu, const BasicPoly<K>& pv) {
    return a.map([&](const BasicPoly<C>& p) { return compose(p, pu, pv); });
}

/// Human-readable form, e.g. "2*u^2*v - 1/3".
template <class C>
std::string to_string(const BasicPoly<C>& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        using pnforge::to_string;
        std::string cs = to_string(c);
        bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        if (compound) cs = "(" + cs + ")";
        bool neg = !compound && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (s.empty())
            s = neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        std::string mono;
        if (m.i > 0) mono += m.i == 1 ? "u" : "u^" + std::to_string(m.i);
        if (m.j > 0) mono += (mono.empty() ? "" : "*") + (m.j == 1 ? std::string("v") : "v^" + std::to_string(m.j));
        if (mono.empty())
            s += cs;
        else if (cs == "1")
            s += mono;
        else
            s += cs + "*" + mono;
    }
    return s;
}

template <class C>
std::ostream& operator<<(std::ostream& os, const BasicPoly<C>& p) {
    return os << to_string(p);
}

}  // namespace pnforge
