#pragma once
// Homogeneous polynomials in (u, v, w).

#include "pnforge/poly.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace pnforge {

struct TriExp {
    int i = 0, j = 0, k = 0;
    friend bool operator<(const TriExp& a, const TriExp& b) {
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.k < b.k;
    }
    friend bool operator==(const TriExp& a, const TriExp& b) { return a.i == b.i && a.j == b.j && a.k == b.k; }
};

class HomTriPoly {
public:
    explicit HomTriPoly(int degree = 0) : degree_(degree) {}

    static HomTriPoly term(int i, int j, int k, const Rational& c);

    int degree() const { return degree_; }
    const std::map<TriExp, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(int i, int j, int k) const;

    /// Adds c*u^i v^j w^k; the exponents must sum to the degree.
    void add_term(TriExp e, const Rational& c);

    friend HomTriPoly operator+(const HomTriPoly& a, const HomTriPoly& b);
    friend HomTriPoly operator-(const HomTriPoly& a, const HomTriPoly& b);
    friend HomTriPoly operator-(const HomTriPoly& a);
    friend HomTriPoly operator*(const HomTriPoly& a, const HomTriPoly& b);
    friend bool operator==(const HomTriPoly& a, const HomTriPoly& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    int degree_;
    std::map<TriExp, Rational> terms_;
};

/// Exponent triples of degree d: u-exponent descending, then v descending.
std::vector<TriExp> hom_monomials(int d);

/// w^d p(u/w, v/w). Throws DegreeTooSmall if d < deg p.
HomTriPoly homogenize(const BiPoly& p, int d);
BiPoly dehomogenize(const HomTriPoly& P);

std::string to_string(const HomTriPoly& P);

}  // namespace pnforge
