#include "pnforge/homtri.hpp"

#include <sstream>

namespace pnforge {

HomTriPoly HomTriPoly::term(int i, int j, int k, const Rational& c) {
    HomTriPoly p(i + j + k);
    p.add_term({i, j, k}, c);
    return p;
}

Rational HomTriPoly::coeff(int i, int j, int k) const {
    auto it = terms_.find({i, j, k});
    return it == terms_.end() ? Rational(0) : it->second;
}

void HomTriPoly::add_term(TriExp e, const Rational& c) {
    if (e.i + e.j + e.k != degree_)
        throw Error(ErrorKind::InvalidInput, "term degree differs from the form's degree");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

HomTriPoly operator+(const HomTriPoly& a, const HomTriPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree_ != b.degree_) throw Error(ErrorKind::DimensionMismatch, "adding forms of different degree");
    HomTriPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

HomTriPoly operator-(const HomTriPoly& a) {
    HomTriPoly r(a.degree_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
}

HomTriPoly operator-(const HomTriPoly& a, const HomTriPoly& b) { return a + (-b); }

HomTriPoly operator*(const HomTriPoly& a, const HomTriPoly& b) {
    HomTriPoly r(a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term({ea.i + eb.i, ea.j + eb.j, ea.k + eb.k}, ca * cb);
    return r;
}

std::vector<TriExp> hom_monomials(int d) {
    std::vector<TriExp> out;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    return out;
}

HomTriPoly homogenize(const BiPoly& p, int d) {
    if (!p.is_zero() && p.degree() > d)
        throw Error(ErrorKind::DegreeTooSmall, "degree " + std::to_string(d) + " below " + std::to_string(p.degree()));
    HomTriPoly r(d);
    for (const auto& [m, c] : p.terms()) r.add_term({m.i, m.j, d - m.degree()}, c);
    return r;
}

BiPoly dehomogenize(const HomTriPoly& P) {
    BiPoly r;
    for (const auto& [e, c] : P.terms()) r.add_term({e.i, e.j}, c);
    return r;
}

std::string to_string(const HomTriPoly& P) {
    if (P.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = P.terms().rbegin(); it != P.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = abs(c);
        os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        first = false;
        std::string mono;
        auto put = [&](char x, int n) {
            if (n == 0) return;
            if (!mono.empty()) mono += "*";
            mono += x;
            if (n > 1) mono += "^" + std::to_string(n);
        };
        put('u', e.i);
        put('v', e.j);
        put('w', e.k);
        if (mono.empty())
            os << to_string(a);
        else if (a == 1)
            os << mono;
        else
            os << to_string(a) << "*" << mono;
    }
    return os.str();
}

}  // namespace pnforge
