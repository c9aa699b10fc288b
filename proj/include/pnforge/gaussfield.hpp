#pragma once
// Polynomial normal fields from discrete normal data: stereographic
// projection, planar interpolation and the Pythagorean/isotropic lifts.

#include "pnforge/geometry.hpp"
#include "pnforge/poly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pnforge {

struct PNHermitePoint {
    RVec point;        // 3 coordinates
    RVec unit_normal;  // exactly unit length
};

struct MOSHermitePoint {
    RVec point;  // (x, y, z, r)
    RVec tangent1;
    RVec tangent2;
};

/// Throws InvalidInput unless the data have the right sizes, unit normals
/// (PN) or independent tangents (MOS).
void validate(const PNHermitePoint& p);
void validate(const MOSHermitePoint& p);

enum class FieldKind { Pythagorean3, Isotropic4 };

/// Pythagorean3: <n,n> = sigma^2 (Euclidean). Isotropic4: <n,n> = 0 in
/// (3,1), and sigma is the Euclidean length of the spatial part.
template <class K>
struct BasicNormalField {
    BasicPolyVec<K> n;
    BasicPoly<K> sigma;
    FieldKind kind = FieldKind::Pythagorean3;
};
using NormalField = BasicNormalField<Rational>;

using PlanarPoint = std::array<Rational, 2>;

inline const RVec& default_center() {
    static const RVec c{Rational(0), Rational(0), Rational(1)};
    return c;
}
inline const Rational& default_near_center_threshold() {
    static const Rational t(1, 8);
    return t;
}

/// Margin 1 - <N, center>; zero exactly at the center.
Rational center_margin(const RVec& N, const RVec& center);

/// (x1, x2) / (1 - x3) after rotating center to (0,0,1). Throws AtCenter;
/// appends a NearCenter warning if the margin is below the threshold.
PlanarPoint stereo_project(const RVec& N, const RVec& center = default_center(),
                           const Rational& threshold = default_near_center_threshold(),
                           std::vector<std::string>* warnings = nullptr);

/// Inverse projection for the default center.
RVec stereo_unproject(const PlanarPoint& a);

/// Bilinear patch through images at (0,0), (1,0), (1,1), (0,1), in that order.
PolyVec planar_patch_quad(const std::array<PlanarPoint, 4>& images);
/// Linear patch through images at (0,0), (1,0), (0,1), in that order.
PolyVec planar_patch_tri(const std::array<PlanarPoint, 3>& images);

/// n = (2N̂, N̂·N̂ - 1), sigma = N̂·N̂ + 1.
template <class K>
BasicNormalField<K> lift_pythagorean(const BasicPolyVec<K>& Nhat) {
    if (Nhat.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "planar patch must have two components");
    BasicPoly<K> s = Nhat[0] * Nhat[0] + Nhat[1] * Nhat[1];
    BasicPoly<K> two(K(2)), one(K(1));
    return {BasicPolyVec<K>{two * Nhat[0], two * Nhat[1], s - one}, s + one, FieldKind::Pythagorean3};
}

/// (2N̂, N̂·N̂ - 1, N̂·N̂ + 1), scaled to primitive integer coefficients.
NormalField lift_isotropic(const PolyVec& Nhat);

/// Scales a polynomial vector to integer coefficients of content one with a
/// positive leading coefficient in the first nonzero component.
PolyVec primitive_polyvec(const PolyVec& x);

/// Isotropic vectors orthogonal to t1, t2 in (3,1), as primitive integer
/// vectors with positive last coordinate. nplus has the smaller n3/n4 (ties:
/// lexicographically smaller).
struct IsotropicPair {
    RVec nplus;
    RVec nminus;
};
struct IsotropicOptions {
    bool approximate = false;  // rationalize an irrational square root
    double tolerance = 1e-12;
};
IsotropicPair isotropic_normals(const RVec& t1, const RVec& t2, const IsotropicOptions& opt = {});

/// Unit spatial direction (n1, n2, n3) / n4 of an isotropic vector.
RVec sphere_direction(const RVec& isotropic);

/// The 26 candidate projection centers.
const std::vector<RVec>& candidate_centers();

/// Rotation taking the best candidate center (maximal minimum margin) to
/// (0,0,1); identity when every normal already clears the threshold.
/// Throws NoSafeCenter when even the best candidate is too close.
Rotation auto_rotate_frame(const std::vector<RVec>& normals,
                           const Rational& threshold = default_near_center_threshold());

struct ProjectionOptions {
    std::optional<RVec> center;  // explicit center; disables auto rotation
    Rational threshold = default_near_center_threshold();
    bool auto_rotate = true;
};

struct FieldConstruction {
    NormalField field;
    PolyVec nhat;       // planar patch in the projection frame
    Rotation rotation;  // frame rotation applied before projection
    std::vector<PlanarPoint> images;
    std::vector<Rational> corner_scales;  // n(corner) = scale * input direction
    std::vector<std::string> warnings;
};

/// Pythagorean field through unit normals at the quad (4) or triangle (3)
/// corners, in the corner orders of planar_patch_quad / planar_patch_tri.
FieldConstruction pn_normal_field(const std::vector<RVec>& unit_normals, const ProjectionOptions& opt = {});

/// Isotropic field through isotropic corner vectors (same corner orders).
FieldConstruction mos_normal_field(const std::vector<RVec>& isotropics, const ProjectionOptions& opt = {});

/// Parameter corners for quads and triangles.
const std::vector<std::array<int, 2>>& quad_corners();
const std::vector<std::array<int, 2>>& tri_corners();

/// lambda with a = lambda * b, if it exists and b is nonzero.
std::optional<Rational> proportionality(const RVec& a, const RVec& b);

}  // namespace pnforge
