#include "pnforge/geometry.hpp"

namespace pnforge {

Rational inner(const RVec& a, const RVec& b, Metric m) {
    if (static_cast<int>(a.size()) != m.dim() || static_cast<int>(b.size()) != m.dim())
        throw Error(ErrorKind::DimensionMismatch, "inner product needs vectors of dimension " + std::to_string(m.dim()));
    Rational s = 0;
    for (int k = 0; k < m.dim(); ++k) s += m.sign(k) * a[k] * b[k];
    return s;
}

RVec cross3(const RVec& a, const RVec& b) {
    if (a.size() != 3 || b.size() != 3) throw Error(ErrorKind::DimensionMismatch, "cross3 needs 3-vectors");
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

BiPoly poly_det(const std::vector<std::vector<BiPoly>>& g) {
    const std::size_t n = g.size();
    if (n == 0) return BiPoly(Rational(1));
    if (n == 1) return g[0][0];
    if (n == 2) return g[0][0] * g[1][1] - g[0][1] * g[1][0];
    BiPoly det;
    for (std::size_t c = 0; c < n; ++c) {
        if (g[0][c].is_zero()) continue;
        std::vector<std::vector<BiPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<BiPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(g[r][k]);
            minor.push_back(std::move(row));
        }
        BiPoly t = g[0][c] * poly_det(minor);
        if (c % 2)
            det -= t;
        else
            det += t;
    }
    return det;
}

PolyVec complement_vector4(const PolyVec& a, const PolyVec& b, const PolyVec& c, Metric m) {
    if (a.dim() != 4 || b.dim() != 4 || c.dim() != 4 || m.dim() != 4)
        throw Error(ErrorKind::DimensionMismatch, "complement_vector4 needs 4-vectors");
    PolyVec g(4);
    for (int k = 0; k < 4; ++k) {
        std::vector<std::vector<BiPoly>> minor;
        for (const PolyVec* v : {&a, &b, &c}) {
            std::vector<BiPoly> row;
            for (int j = 0; j < 4; ++j)
                if (j != k) row.push_back((*v)[j]);
            minor.push_back(std::move(row));
        }
        BiPoly d = poly_det(minor);
        g[k] = k % 2 ? -d : d;
    }
    for (int k = 0; k < 4; ++k)
        if (m.sign(k) < 0) g[k] = -g[k];
    return g;
}

std::vector<std::vector<BiPoly>> gram_matrix(const std::vector<PolyVec>& fields, Metric m) {
    if (fields.empty() || static_cast<int>(fields.size()) > m.dim())
        throw Error(ErrorKind::DimensionMismatch, "Gramian needs between 1 and dim vectors");
    std::size_t k = fields.size();
    std::vector<std::vector<BiPoly>> g(k, std::vector<BiPoly>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) g[i][j] = g[j][i] = inner(fields[i], fields[j], m);
    return g;
}

BiPoly gram_det(const std::vector<PolyVec>& fields, Metric m) { return poly_det(gram_matrix(fields, m)); }

BiPoly reduced_gram_det(const std::vector<PolyVec>& fields, Metric m) {
    BiPoly g = gram_det(fields, m);
    if (g.is_zero()) throw Error(ErrorKind::DegenerateFrame, "Gramian vanishes identically");
    return gcd_and_squarefree(g).squarefree_part;
}

std::optional<Rational> complement_duality_check(const std::vector<PolyVec>& V, const std::vector<PolyVec>& W, Metric m) {
    if (static_cast<int>(V.size() + W.size()) != m.dim())
        throw Error(ErrorKind::DimensionMismatch, "frames must together span the ambient space");
    for (const auto& v : V)
        for (const auto& w : W)
            if (!inner(v, w, m).is_zero()) throw Error(ErrorKind::NotOrthogonal, "frames are not orthogonal");
    BiPoly gv = gram_det(V, m), gw = gram_det(W, m);
    if (gv.is_zero() || gw.is_zero()) return std::nullopt;
    auto sv = gcd_and_squarefree(gv), sw = gcd_and_squarefree(gw);
    auto q = divide_exact(sv.squarefree_part, sw.squarefree_part);
    if (!q || !q->is_constant()) return std::nullopt;
    Rational c = q->constant_term() * sgn(sv.content) * sgn(sw.content);
    return c;
}

Rotation Rotation::identity() {
    Rotation r;
    for (int k = 0; k < 3; ++k) r.m[k][k] = 1;
    return r;
}

RVec Rotation::apply(const RVec& x) const {
    RVec y(3, Rational(0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i] += m[i][j] * x[j];
    return y;
}

PolyVec Rotation::apply(const PolyVec& x) const {
    PolyVec y(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (sgn(m[i][j]) != 0) y[i] += x[j].scaled(m[i][j]);
    return y;
}

Rotation Rotation::transpose() const {
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
}

bool Rotation::is_identity() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

Rotation operator*(const Rotation& a, const Rotation& b) {
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
    return r;
}

Rotation rotation_to_pole(const RVec& c) {
    if (c.size() != 3) throw Error(ErrorKind::DimensionMismatch, "center must be a 3-vector");
    if (dot(c, c) != 1) throw Error(ErrorKind::InvalidInput, "center must be a unit vector");
    RVec w{c[0], c[1], c[2] - 1};
    Rational ww = dot(w, w);
    if (sgn(ww) == 0) return Rotation::identity();
    // Householder reflection c -> e3, then a reflection fixing e3
    Rotation h;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h.m[i][j] = (i == j ? 1 : 0) - 2 * w[i] * w[j] / ww;
    for (int j = 0; j < 3; ++j) h.m[0][j] = -h.m[0][j];
    return h;
}

}  // namespace pnforge
