#include "pnforge/cli.hpp"

#include "pnforge/io.hpp"
#include "pnforge/mos.hpp"
#include "pnforge/network.hpp"
#include "pnforge/pn.hpp"
#include "pnforge/syzygy.hpp"

#include <filesystem>
#include <ostream>

namespace pnforge::cli {

namespace {

using io::Json;
using OJson = io::Json;

const std::pair<const char*, Mode> kModes[] = {
    {"pn-quad", Mode::PNQuad}, {"pn-tri", Mode::PNTri},   {"pn-grid", Mode::PNGrid},
    {"mos-quad", Mode::MOSQuad}, {"mos-tri", Mode::MOSTri}, {"family", Mode::Family},
    {"syzygy-report", Mode::SyzygyReport}, {"certify", Mode::Certify},
};

// Report collected as ordered JSON and echoed as "key: value" lines.
class Report {
public:
    void set(const std::string& key, OJson value) { doc_[key] = std::move(value); }
    void warn(const std::string& w) { doc_["warnings"].push_back(w); }
    const OJson& doc() const { return doc_; }

    void print(std::ostream& out) const {
        for (const auto& [k, v] : doc_.items()) {
            if (v.is_string()) {
                out << k << ": " << v.get<std::string>() << '\n';
            } else if (v.is_array() && k == "warnings") {
                for (const auto& w : v) out << "warning: " << w.get<std::string>() << '\n';
            } else {
                out << k << ": " << v.dump() << '\n';
            }
        }
    }

private:
    OJson doc_ = OJson::object();
};

OJson poly_strings(const PolyVec& x) {
    OJson a = OJson::array();
    for (const auto& c : x) a.push_back(to_string(c));
    return a;
}

OJson vec_strings(const RVec& v) {
    OJson a = OJson::array();
    for (const auto& c : v) a.push_back(to_string(c));
    return a;
}

ProjectionOptions projection(const JobSpec& job) {
    ProjectionOptions p;
    p.center = job.center;
    if (job.near_center_threshold) p.threshold = *job.near_center_threshold;
    return p;
}

std::filesystem::path out_path(const JobSpec& job, const std::string& name) {
    return std::filesystem::path(job.out_dir) / name;
}

void write_coeffs(const JobSpec& job, const PolyVec& x, const std::vector<PolyVec>& basis = {}) {
    OJson doc;
    doc["representative"] = io::write_coefficients(x);
    if (!basis.empty()) {
        doc["directions"] = OJson::array();
        for (const auto& b : basis) doc["directions"].push_back(io::write_coefficients(b));
    }
    io::save_file(out_path(job, "coefficients.json").string(), doc);
}

void pn_outputs(const JobSpec& job, Report& rep, const PNPatch& p, Domain::Kind kind) {
    Domain dom = kind == Domain::Kind::UnitTriangle ? Domain::triangle() : Domain::square();
    auto cert = certify(p, dom);
    rep.set("normal field n", poly_strings(p.field.n));
    rep.set("sigma", to_string(p.field.sigma));
    rep.set("f", to_string(cert.f));
    rep.set("area element f*sigma", to_string(cert.sigma_area));
    rep.set("degenerate locus (sampled)", cert.degenerate_locus_nonempty ? "nonempty" : "empty");
    rep.set("certificate", check_patch(p) ? "exact identities hold" : "FAILED");
    io::write_sign_grid(out_path(job, "f_sign.dat").string(), cert.f, kind, 32);
    if (job.mesh_res) {
        auto m = io::mesh_pn(p.x, p.field.n, kind, job.mesh_res->first, job.mesh_res->second);
        io::write_obj(out_path(job, "surface.obj").string(), m);
    }
}

std::string degree_hint(int d) {
    return "degree " + std::to_string(d) + " is too low; try --degree " + std::to_string(d + 1);
}

int run_pn(const JobSpec& job, const Json& doc, Report& rep, std::ostream& err) {
    io::ReadOptions ro{job.rationalize_floats};
    auto pts = io::read_pn_points(doc, ro);
    std::size_t want = job.mode == Mode::PNQuad ? 4 : 3;
    if (pts.size() != want) throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(want) + " Hermite points");
    PNHermiteResult res;
    if (job.degree) {
        try {
            res = hermite_pn(pts, *job.degree, projection(job));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Inconsistent) err << degree_hint(*job.degree) << '\n';
            throw;
        }
    } else {
        std::vector<int> tried;
        res = hermite_pn_search(pts, projection(job), &tried);
        if (!tried.empty()) rep.set("degrees without solution", tried);
    }
    for (const auto& w : res.construction.warnings) rep.warn(w);
    rep.set("degree", res.degree());
    rep.set("family dimension", std::to_string(res.dimension()));
    rep.set("planar patch", poly_strings(res.construction.nhat));
    auto patch = res.representative();
    OJson corner = OJson::array();
    for (const auto& r : res.corner_residuals(patch.x)) corner.push_back(vec_strings(r));
    rep.set("corner residuals", corner);
    rep.set("surface", poly_strings(patch.x));
    std::vector<PolyVec> basis;
    for (std::size_t k = 0; k < res.dimension(); ++k) basis.push_back(res.family.direction(k));
    write_coeffs(job, patch.x, basis);
    pn_outputs(job, rep, patch, job.mode == Mode::PNQuad ? Domain::Kind::UnitSquare : Domain::Kind::UnitTriangle);
    return Success;
}

int run_grid(const JobSpec& job, const Json& doc, Report& rep, std::ostream& err) {
    auto grid = io::read_grid(doc, {job.rationalize_floats});
    int degree = job.degree.value_or(doc.value("degree", 9));
    GridFamily fam;
    try {
        fam = interpolate_grid(grid, degree, projection(job));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Inconsistent) err << degree_hint(degree) << '\n';
        throw;
    }
    rep.set("degree", degree);
    rep.set("grid", std::to_string(grid.m) + " x " + std::to_string(grid.n));
    rep.set("family dimension", std::to_string(fam.dimension()));
    auto chk = check_grid(fam, fam.particular);
    rep.set("interior edges", chk.all() ? "C0 positions and shared normal fields exact" : "FAILED");
    OJson cells = OJson::array();
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.n; ++j) {
            auto p = fam.patch(fam.particular, i, j);
            OJson c;
            c["cell"] = {i, j};
            c["surface"] = io::write_coefficients(p.x);
            c["f"] = to_string(p.f);
            c["sigma"] = to_string(p.field.sigma);
            cells.push_back(c);
            if (job.mesh_res) {
                auto m = io::mesh_pn(p.x, p.field.n, Domain::Kind::UnitSquare, job.mesh_res->first, job.mesh_res->second);
                io::write_obj(out_path(job, "surface_" + std::to_string(i) + "_" + std::to_string(j) + ".obj").string(), m);
            }
        }
    io::save_file(out_path(job, "coefficients.json").string(), OJson{{"cells", cells}});
    return chk.all() ? Success : Internal;
}

int run_mos(const JobSpec& job, const Json& doc, Report& rep, std::ostream& err) {
    auto pts = io::read_mos_points(doc, {job.rationalize_floats});
    std::size_t want = job.mode == Mode::MOSQuad ? 4 : 3;
    if (pts.size() != want) throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(want) + " Hermite points");
    MOSOptions opt;
    opt.branch = job.branch_minus ? Branch::Minus : Branch::Plus;
    opt.projection = projection(job);
    MOSHermiteResult res;
    if (job.degree) {
        try {
            res = hermite_mos(pts, *job.degree, opt);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Inconsistent) err << degree_hint(*job.degree) << '\n';
            throw;
        }
    } else {
        std::vector<int> tried;
        res = hermite_mos_search(pts, opt, &tried);
        if (!tried.empty()) rep.set("degrees without solution", tried);
    }
    for (const auto& w : res.construction.warnings) rep.warn(w);
    rep.set("branch", job.branch_minus ? "minus" : "plus");
    rep.set("degree", res.degree());
    rep.set("family dimension", std::to_string(res.dimension()));
    OJson normals = OJson::array();
    for (const auto& c : res.corner_normals) normals.push_back({{"nplus", vec_strings(c.nplus)}, {"nminus", vec_strings(c.nminus)}});
    rep.set("corner isotropic normals", normals);
    rep.set("isotropic field", poly_strings(res.construction.field.n));
    auto patch = res.representative();
    rep.set("surface", poly_strings(patch.x));
    rep.set("sigma (EG - F^2 = sigma^2)", to_string(patch.sigma));
    OJson corner = OJson::array();
    for (const auto& r : res.corner_residuals(patch.x)) corner.push_back(vec_strings(r));
    rep.set("corner residuals", corner);
    rep.set("certificate", check_mos_patch(patch) ? "exact identities hold" : "FAILED");
    std::vector<PolyVec> basis;
    for (std::size_t k = 0; k < res.dimension(); ++k) basis.push_back(res.family.direction(k));
    write_coeffs(job, patch.x, basis);
    try {
        auto env = envelope(patch);
        rep.set("envelope", check_envelope(patch.x, env).all() ? "exact identities hold" : "FAILED");
        if (job.mesh_res) {
            Domain::Kind kind = job.mode == Mode::MOSQuad ? Domain::Kind::UnitSquare : Domain::Kind::UnitTriangle;
            auto sheets = io::mesh_envelope(env, kind, job.mesh_res->first, job.mesh_res->second);
            io::write_obj(out_path(job, "envelope_plus.obj").string(), sheets[0]);
            io::write_obj(out_path(job, "envelope_minus.obj").string(), sheets[1]);
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateMedial) throw;
        rep.warn(e.what());
    }
    return Success;
}

int run_family(const JobSpec& job, const Json& doc, Report& rep) {
    int dim = doc.value("dim", 3);
    int ell = job.degree.value_or(doc.value("ell", 2));
    PolyVec n = io::read_coefficients(doc.at("field"), dim);
    rep.set("ell", ell);
    std::vector<PolyVec> surfaces;
    if (dim == 3) {
        auto sigma = perfect_square_root(inner(n, n, Metric::euclidean3()));
        if (!sigma) throw Error(ErrorKind::InvalidInput, "field is not Pythagorean: <n,n> is not a perfect square");
        auto fam = pn_family({n, *sigma, FieldKind::Pythagorean3}, ell);
        rep.set("family dimension", std::to_string(fam.dimension()));
        rep.set("dimension bound (Delta = 0)", fam.bound);
        rep.set("Delta (observed - bound)", fam.empirical_delta());
        rep.set("sigma", to_string(*sigma));
        for (std::size_t k = 0; k < fam.dimension(); ++k) surfaces.push_back(fam.family.surface(k));
    } else if (dim == 4) {
        if (!inner(n, n, Metric::minkowski31()).is_zero()) throw Error(ErrorKind::InvalidInput, "field is not isotropic");
        auto fam = mos_family({n, n[3], FieldKind::Isotropic4}, std::nullopt, ell);
        rep.set("family dimension", std::to_string(fam.dimension()));
        for (std::size_t k = 0; k < fam.dimension(); ++k) {
            surfaces.push_back(fam.family.surface(k));
            mos_certify(surfaces.back());
        }
        rep.set("certificate", "EG - F^2 is a perfect square for every basis surface");
    } else {
        throw Error(ErrorKind::InvalidInput, "dim must be 3 or 4");
    }
    OJson basis = OJson::array();
    for (const auto& s : surfaces) basis.push_back(poly_strings(s));
    rep.set("basis surfaces", basis);
    OJson coeffs;
    coeffs["basis"] = OJson::array();
    for (const auto& s : surfaces) coeffs["basis"].push_back(io::write_coefficients(s));
    io::save_file(out_path(job, "coefficients.json").string(), coeffs);
    return Success;
}

int run_syzygy(const JobSpec& job, const Json& doc, Report& rep) {
    std::optional<HomNormalField> N;
    if (doc.contains("homogeneous")) {
        N.emplace(io::read_homogeneous(doc.at("homogeneous"), doc.at("degree").get<int>()));
    } else {
        N = HomNormalField::from_field(io::read_coefficients(doc.at("field"), 3));
    }
    for (const auto& w : N->warnings()) rep.warn(w);
    OJson comps = OJson::array();
    for (const auto& c : N->components()) comps.push_back(to_string(c));
    rep.set("N", comps);
    rep.set("k", N->degree());
    auto br = basepoint_free_test(*N, job.lmax);
    rep.set("dims", br.dims);
    rep.set("bounds", br.bounds);
    rep.set("result", describe(br));
    return Success;
}

int run_certify(const JobSpec& job, const Json& doc, Report& rep) {
    PolyVec x = io::read_coefficients(doc.at("surface"), 3);
    NormalField field;
    if (doc.contains("field")) {
        field.n = io::read_coefficients(doc.at("field"), 3);
        auto s = perfect_square_root(inner(field.n, field.n, Metric::euclidean3()));
        if (!s) throw Error(ErrorKind::InvalidInput, "given field is not Pythagorean");
        field.sigma = *s;
    } else {
        PolyVec c = cross3(diff(x, Var::U), diff(x, Var::V));
        if (c.is_zero()) throw Error(ErrorKind::InvalidInput, "surface is degenerate (x_u × x_v ≡ 0)");
        BiPoly g = gcd(gcd(c[0], c[1]), c[2]);
        PolyVec n = primitive_polyvec(c.map([&](const BiPoly& p) { return *divide_exact(p, g); }));
        auto s = perfect_square_root(inner(n, n, Metric::euclidean3()));
        if (!s) {
            rep.set("PN", "no: the reduced normal has non-square squared length");
            rep.set("reduced normal", poly_strings(n));
            return Success;
        }
        field = {n, *s, FieldKind::Pythagorean3};
    }
    rep.set("PN", "yes");
    auto p = make_patch(x, field);
    pn_outputs(job, rep, p, doc.value("domain", std::string("square")) == "triangle" ? Domain::Kind::UnitTriangle
                                                                                      : Domain::Kind::UnitSquare);
    return Success;
}

}  // namespace

Mode parse_mode(const std::string& name) {
    for (const auto& [n, m] : kModes)
        if (name == n) return m;
    throw Error(ErrorKind::InvalidInput, "unknown mode '" + name + "'");
}

const char* mode_name(Mode m) {
    for (const auto& [n, k] : kModes)
        if (k == m) return n;
    return "?";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Inconsistent: return DegreeTooLow;
        case ErrorKind::IrrationalIsotropics: return Irrational;
        case ErrorKind::InvariantViolation:
        case ErrorKind::NonAffineDependence:
        case ErrorKind::OptimizerDiverged:
        case ErrorKind::DegenerateMedial: return Internal;
        default: return InputInvalid;
    }
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
    Report rep;
    rep.set("mode", mode_name(job.mode));
    int code = Success;
    try {
        std::filesystem::create_directories(job.out_dir);
        Json doc = io::load_file(job.input);
        switch (job.mode) {
            case Mode::PNQuad:
            case Mode::PNTri: code = run_pn(job, doc, rep, err); break;
            case Mode::PNGrid: code = run_grid(job, doc, rep, err); break;
            case Mode::MOSQuad:
            case Mode::MOSTri: code = run_mos(job, doc, rep, err); break;
            case Mode::Family: code = run_family(job, doc, rep); break;
            case Mode::SyzygyReport: code = run_syzygy(job, doc, rep); break;
            case Mode::Certify: code = run_certify(job, doc, rep); break;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return InputInvalid;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return InputInvalid;
    }
    rep.print(out);
    io::save_file(out_path(job, "report.json").string(), rep.doc());
    return code;
}

}  // namespace pnforge::cli
