#pragma once
// gcd, square-free structure and exact square roots in Q[u,v].

#include "pnforge/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pnforge {

/// p = content * primitive, with primitive having integer coefficients of
/// content one and positive graded-lex leading coefficient.
struct ContentSplit {
    Rational content;
    BiPoly primitive;
};
ContentSplit primitive_split(const BiPoly& p);
inline BiPoly primitive_part(const BiPoly& p) { return primitive_split(p).primitive; }

/// Canonical (primitive, positive leading coefficient) gcd; gcd(0,0) = 0.
BiPoly gcd(const BiPoly& a, const BiPoly& b);

struct SquarefreeResult {
    Rational content;
    BiPoly squarefree_part;
};
SquarefreeResult gcd_and_squarefree(const BiPoly& p);

/// p = content * prod factors[i].first ^ factors[i].second, factors pairwise
/// coprime, square-free, primitive and non-constant.
struct SquarefreeDecomposition {
    Rational content;
    std::vector<std::pair<BiPoly, int>> factors;
};
SquarefreeDecomposition squarefree_decomposition(const BiPoly& p);

/// s with s*s = p and positive leading coefficient, if p is a square in Q[u,v].
std::optional<BiPoly> perfect_square_root(const BiPoly& p);

/// Rational square root, if one exists.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace pnforge
