#pragma once
// JSON ingestion of Hermite data and fields, exact coefficient output, OBJ
// meshes and gnuplot dumps.

#include "pnforge/gaussfield.hpp"
#include "pnforge/homtri.hpp"
#include "pnforge/mos.hpp"
#include "pnforge/network.hpp"
#include "pnforge/pn.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace pnforge::io {

using Json = nlohmann::ordered_json;

struct ReadOptions {
    bool rationalize_floats = false;  // lossy import of JSON numbers with a fraction
    long max_denominator = 1000000;
};

/// Best rational approximation with denominator at most max_den.
Rational limit_denominator(double x, long max_den);

/// "p/q" or "p" strings and JSON integers; JSON floats only with
/// rationalize_floats. Throws InvalidInput.
Rational read_rational(const Json& j, const ReadOptions& opt = {});
RVec read_vector(const Json& j, std::size_t dim, const ReadOptions& opt = {});

std::vector<PNHermitePoint> read_pn_points(const Json& doc, const ReadOptions& opt = {});
std::vector<MOSHermitePoint> read_mos_points(const Json& doc, const ReadOptions& opt = {});
HermiteGrid read_grid(const Json& doc, const ReadOptions& opt = {});

/// Records {"coord", "i", "j", "coeff": "num/den"}, coordinate-major, then
/// graded-lex ascending within a coordinate.
Json write_coefficients(const PolyVec& x);
PolyVec read_coefficients(const Json& records, std::size_t dim);

/// Homogeneous records {"coord", "i", "j", "k", "coeff"}; all terms of one
/// coordinate share the degree `degree`.
std::array<HomTriPoly, 3> read_homogeneous(const Json& records, int degree);

Json load_file(const std::string& path);
void save_file(const std::string& path, const Json& doc);

/// Mesh over a domain, (res_u+1) x (res_v+1) samples; the triangle keeps the
/// samples with i/res_u + j/res_v <= 1.
struct Mesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<double, 3>> normals;
    std::vector<std::array<double, 2>> params;
    std::vector<std::array<int, 3>> faces;  // 0-based
};

Mesh sample_mesh(const std::function<std::array<double, 3>(double, double)>& position,
                 const std::function<std::array<double, 3>(double, double)>& normal, Domain::Kind kind, int res_u,
                 int res_v);
Mesh mesh_pn(const PolyVec& x, const PolyVec& n, Domain::Kind kind, int res_u, int res_v);
/// The two envelope sheets of an MOS patch.
std::array<Mesh, 2> mesh_envelope(const EnvelopePair& env, Domain::Kind kind, int res_u, int res_v);

void write_obj(const std::string& path, const Mesh& m);

/// Rows "u v sign(f)" with a blank line between u-rows (gnuplot splot).
void write_sign_grid(const std::string& path, const BiPoly& f, Domain::Kind kind, int res);

}  // namespace pnforge::io
