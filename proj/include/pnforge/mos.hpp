#pragma once
// Polynomial MOS surfaces in R^{3,1}: families over isotropic fields,
// Hermite interpolation, the MOS certificate and the envelope.

#include "pnforge/pn.hpp"

#include <array>
#include <optional>
#include <vector>

namespace pnforge {

struct FirstForm {
    BiPoly E, F, G;
    BiPoly discriminant() const { return E * G - F * F; }
};

FirstForm minkowski_first_form(const PolyVec& x);
FirstForm euclidean_first_form(const PolyVec& xhat);

/// σ with Minkowski EG - F² = σ²; throws NotMOS otherwise.
BiPoly mos_certify(const PolyVec& x);

struct MOSPatch {
    PolyVec x;  // (x, y, z, r)
    NormalField nplus;
    std::optional<NormalField> nminus;
    BiPoly sigma;
};

MOSPatch make_mos_patch(const PolyVec& x, const NormalField& nplus, const std::optional<NormalField>& nminus = std::nullopt);

/// Tangency against every supplied field and the MOS certificate.
bool check_mos_patch(const MOSPatch& p);

struct MOSFamily {
    NormalField nplus;
    std::optional<NormalField> nminus;
    TangentFamily family;

    std::size_t dimension() const { return family.dimension(); }
    MOSPatch patch(std::size_t k) const { return make_mos_patch(family.surface(k), nplus, nminus); }
};

/// Pairs (q, r) of degree <= l orthogonal to nplus (and nminus if given)
/// with q_v ≡ r_u.
MOSFamily mos_family(const NormalField& nplus, const std::optional<NormalField>& nminus, int ell);

enum class Branch { Plus, Minus };

struct MOSOptions {
    Branch branch = Branch::Plus;  // branch lifted to a field; the other is imposed at corners
    ProjectionOptions projection;
    IsotropicOptions isotropic;
};

struct MOSHermiteResult {
    std::vector<MOSHermitePoint> data;
    std::vector<IsotropicPair> corner_normals;
    Branch branch = Branch::Plus;
    FieldConstruction construction;
    SurfaceFamily<Rational> family;

    int degree() const { return family.degree; }
    std::size_t dimension() const { return family.dimension(); }
    MOSPatch representative() const { return make_mos_patch(family.particular(), construction.field); }
    MOSPatch member(const std::vector<Rational>& t) const { return make_mos_patch(family.member(t), construction.field); }
    std::vector<RVec> corner_residuals(const PolyVec& x) const;
    /// <x_u(c), n_other(c)> and <x_v(c), n_other(c)> at each corner.
    std::vector<RVec> corner_normal_residuals(const PolyVec& x) const;
};

MOSHermiteResult hermite_mos(const std::vector<MOSHermitePoint>& data, int degree, const MOSOptions& opt = {});
MOSHermiteResult hermite_quad_mos(const std::array<MOSHermitePoint, 4>& data, int degree, const MOSOptions& opt = {});
MOSHermiteResult hermite_tri_mos(const std::array<MOSHermitePoint, 3>& data, int degree, const MOSOptions& opt = {});

/// Lowest solvable degree in [max(k,2), 2k+6] for the lifted field degree k.
MOSHermiteResult hermite_mos_search(const std::vector<MOSHermitePoint>& data, const MOSOptions& opt = {},
                                    std::vector<int>* tried = nullptr);

/// Three numerators over one denominator.
struct RationalVec3 {
    std::array<BiPoly, 3> num;
    BiPoly den;

    std::array<double, 3> eval(double u, double v) const;
};

struct EnvelopePair {
    RationalVec3 bplus, bminus;
    RationalVec3 nplus, nminus;  // unit normals of the two sheets
};

/// Sheets b± = x̂ - r n± of the sphere family; throws DegenerateMedial if
/// ÊĜ - F̂² ≡ 0.
EnvelopePair envelope(const PolyVec& x, const BiPoly& sigma);
inline EnvelopePair envelope(const MOSPatch& p) { return envelope(p.x, p.sigma); }

/// Exact checks: ‖n±‖² = 1, ‖b± - x̂‖² = r², <n±, b±_u> = <n±, b±_v> = 0.
struct EnvelopeCheck {
    bool unit_normals = false;
    bool distance = false;
    bool perpendicular = false;
    bool all() const { return unit_normals && distance && perpendicular; }
};
EnvelopeCheck check_envelope(const PolyVec& x, const EnvelopePair& env);

}  // namespace pnforge
