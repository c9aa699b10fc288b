#pragma once
// Inner products of signature (p,q), cross products and Gram determinants
// of polynomial vector fields.

#include "pnforge/error.hpp"
#include "pnforge/factor.hpp"
#include "pnforge/poly.hpp"

#include <array>
#include <optional>
#include <vector>

namespace pnforge {

struct Metric {
    int p = 3;
    int q = 0;

    int dim() const { return p + q; }
    int sign(int k) const { return k < p ? 1 : -1; }

    static Metric euclidean3() { return {3, 0}; }
    static Metric minkowski31() { return {3, 1}; }
    friend bool operator==(Metric a, Metric b) { return a.p == b.p && a.q == b.q; }
};

/// Constant rational vectors.
using RVec = std::vector<Rational>;

Rational inner(const RVec& a, const RVec& b, Metric m);
inline Rational dot(const RVec& a, const RVec& b) {
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}
RVec cross3(const RVec& a, const RVec& b);

/// sum_{k<p} a_k b_k - sum_{k>=p} a_k b_k; works for mixed coefficient
/// types as long as products land in C.
template <class C, class K>
BasicPoly<C> inner(const BasicPolyVec<C>& a, const BasicPolyVec<K>& b, Metric m) {
    if (static_cast<int>(a.dim()) != m.dim() || static_cast<int>(b.dim()) != m.dim())
        throw Error(ErrorKind::DimensionMismatch, "inner product needs vectors of dimension " + std::to_string(m.dim()));
    BasicPoly<C> s;
    for (int k = 0; k < m.dim(); ++k) {
        BasicPoly<C> t = mul(a[k], b[k]);
        if (m.sign(k) > 0)
            s += t;
        else
            s -= t;
    }
    return s;
}

template <class K>
BasicPolyVec<K> cross3(const BasicPolyVec<K>& a, const BasicPolyVec<K>& b) {
    if (a.dim() != 3 || b.dim() != 3) throw Error(ErrorKind::DimensionMismatch, "cross3 needs 3-vectors");
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Vector orthogonal to a, b, c in R^4 under the metric: the generalized
/// cross product, with the timelike component negated for (3,1).
PolyVec complement_vector4(const PolyVec& a, const PolyVec& b, const PolyVec& c, Metric m);

/// Determinant of a square matrix of polynomials (cofactor expansion).
BiPoly poly_det(const std::vector<std::vector<BiPoly>>& g);

std::vector<std::vector<BiPoly>> gram_matrix(const std::vector<PolyVec>& fields, Metric m);
BiPoly gram_det(const std::vector<PolyVec>& fields, Metric m);

/// Square-free primitive part of the Gramian. Throws DegenerateFrame if the
/// Gramian vanishes identically.
BiPoly reduced_gram_det(const std::vector<PolyVec>& fields, Metric m);

/// The constant c with sign(Γ(V))·Γ₀(V) = c·sign(Γ(W))·Γ₀(W), where sign is
/// that of the Gramian's content. Nothing if either frame is degenerate or
/// the reduced Gramians are not proportional. Throws NotOrthogonal.
std::optional<Rational> complement_duality_check(const std::vector<PolyVec>& V, const std::vector<PolyVec>& W, Metric m);

/// Rational 3x3 matrix acting on column vectors.
struct Rotation {
    std::array<std::array<Rational, 3>, 3> m{};

    static Rotation identity();
    RVec apply(const RVec& x) const;
    PolyVec apply(const PolyVec& x) const;
    Rotation transpose() const;
    bool is_identity() const;
    friend Rotation operator*(const Rotation& a, const Rotation& b);
};

/// Proper rational rotation taking the unit vector c to (0,0,1).
Rotation rotation_to_pole(const RVec& c);

}  // namespace pnforge
