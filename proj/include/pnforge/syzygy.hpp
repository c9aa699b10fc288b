#pragma once
// Homogeneous syzygies of normal fields, the Hilbert-function lower bound
// and base-point detection.

#include "pnforge/homtri.hpp"
#include "pnforge/poly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pnforge {

/// Three forms of a common degree k with the common factor removed.
class HomNormalField {
public:
    /// Removes any common polynomial factor, recording a warning.
    explicit HomNormalField(std::array<HomTriPoly, 3> N);

    /// Homogenizes a dehomogenized field at degree max deg n_i.
    static HomNormalField from_field(const PolyVec& n);

    int degree() const { return N_[0].degree(); }
    const std::array<HomTriPoly, 3>& components() const { return N_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::array<HomTriPoly, 3> N_;
    std::vector<std::string> warnings_;
};

/// dim of {(a,b,c) homogeneous of degree l : a N1 + b N2 + c N3 = 0}.
long long syzygy_dim(const HomNormalField& N, int l);

/// 3 C(l-k+2,2) - C(l-2k+2,2) with C(m,2) = 0 for m < 2, clamped at zero.
long long hilbert_bound(int k, int l);

struct BasepointReport {
    bool has_base_points = false;
    int lmax = 0;       // degrees 0..lmax were tested
    int witness_l = -1;  // first l with dim > bound
    std::vector<long long> dims, bounds;
};

/// Scans l in [0, lmax] (default 3k) for syzygy_dim > hilbert_bound.
BasepointReport basepoint_free_test(const HomNormalField& N, std::optional<int> lmax = std::nullopt);

/// c with q × r = c n for a nonzero constant c, if it exists.
std::optional<Rational> syzygy_basis_check(const PolyVec& q, const PolyVec& r, const PolyVec& n);

/// (a, b) with p = a q + b r for p in Syz(n), when q × r = c n.
std::optional<std::pair<BiPoly, BiPoly>> decompose_syzygy(const PolyVec& p, const PolyVec& q, const PolyVec& r,
                                                          const PolyVec& n, const Rational& c);

/// "basepoint-free (tested up to ℓ=...)" or "base points detected (ℓ=1: dim 1 > bound 0)".
std::string describe(const BasepointReport& rep);

}  // namespace pnforge
