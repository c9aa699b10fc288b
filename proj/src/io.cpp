#include "pnforge/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pnforge::io {

Rational limit_denominator(double x, long max_den) {
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "non-finite number");
    if (max_den < 1) throw Error(ErrorKind::InvalidInput, "denominator cap must be positive");
    Rational exact(x);
    if (exact.get_den() <= max_den) return exact;
    // convergents of the exact binary value, then the better semiconvergent
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Integer n = exact.get_num(), d = exact.get_den();
    while (true) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        Integer q2 = q0 + a * q1;
        if (q2 > max_den) break;
        Integer p2 = p0 + a * p1;
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        Integer r = n - a * d;
        n = d, d = r;
        if (d == 0) break;
    }
    Integer k = (Integer(max_den) - q0) / q1;
    Rational b1(p0 + k * p1, q0 + k * q1), b2(p1, q1);
    b1.canonicalize();
    b2.canonicalize();
    return abs(b2 - exact) <= abs(b1 - exact) ? b2 : b1;
}

Rational read_rational(const Json& j, const ReadOptions& opt) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s.find_first_of(".eE") != std::string::npos && !opt.rationalize_floats)
            throw Error(ErrorKind::InvalidInput, "decimal \"" + s + "\" in exact data (use --rationalize-floats)");
        if (s.find_first_of("eE") != std::string::npos) return limit_denominator(std::stod(s), opt.max_denominator);
        if (s.find('.') != std::string::npos) return limit_denominator(parse_rational(s).get_d(), opt.max_denominator);
        return parse_rational(s);
    }
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_number_float()) {
        if (!opt.rationalize_floats)
            throw Error(ErrorKind::InvalidInput, "float " + j.dump() + " in exact data (use --rationalize-floats)");
        return limit_denominator(j.get<double>(), opt.max_denominator);
    }
    throw Error(ErrorKind::InvalidInput, "expected a rational, got " + j.dump());
}

RVec read_vector(const Json& j, std::size_t dim, const ReadOptions& opt) {
    if (!j.is_array() || j.size() != dim)
        throw Error(ErrorKind::InvalidInput, "expected a " + std::to_string(dim) + "-vector, got " + j.dump());
    RVec v;
    for (const auto& c : j) v.push_back(read_rational(c, opt));
    return v;
}

namespace {

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing \"") + key + "\"");
    return doc.at(key);
}

std::vector<RVec> read_vectors(const Json& doc, const char* key, std::size_t dim, const ReadOptions& opt) {
    const Json& a = field(doc, key);
    if (!a.is_array()) throw Error(ErrorKind::InvalidInput, std::string("\"") + key + "\" must be an array");
    std::vector<RVec> out;
    for (const auto& v : a) out.push_back(read_vector(v, dim, opt));
    return out;
}

}  // namespace

std::vector<PNHermitePoint> read_pn_points(const Json& doc, const ReadOptions& opt) {
    auto p = read_vectors(doc, "points", 3, opt), n = read_vectors(doc, "normals", 3, opt);
    if (p.size() != n.size()) throw Error(ErrorKind::InvalidInput, "points and normals differ in count");
    std::vector<PNHermitePoint> out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        out.push_back({p[k], n[k]});
        validate(out.back());
    }
    return out;
}

std::vector<MOSHermitePoint> read_mos_points(const Json& doc, const ReadOptions& opt) {
    auto p = read_vectors(doc, "points", 4, opt), a = read_vectors(doc, "tangent1", 4, opt),
         b = read_vectors(doc, "tangent2", 4, opt);
    if (p.size() != a.size() || p.size() != b.size()) throw Error(ErrorKind::InvalidInput, "points and tangents differ in count");
    std::vector<MOSHermitePoint> out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        out.push_back({p[k], a[k], b[k]});
        validate(out.back());
    }
    return out;
}

HermiteGrid read_grid(const Json& doc, const ReadOptions& opt) {
    const Json& pts = field(doc, "points");
    const Json& nrm = field(doc, "normals");
    if (!pts.is_array() || !nrm.is_array() || pts.size() != nrm.size() || pts.size() < 2)
        throw Error(ErrorKind::InvalidInput, "grid points and normals must be matching arrays of rows");
    HermiteGrid g;
    g.m = static_cast<int>(pts.size()) - 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i].is_array() || !nrm[i].is_array() || pts[i].size() != nrm[i].size())
            throw Error(ErrorKind::InvalidInput, "grid row " + std::to_string(i) + " is malformed");
        std::vector<PNHermitePoint> row;
        for (std::size_t j = 0; j < pts[i].size(); ++j) row.push_back({read_vector(pts[i][j], 3, opt), read_vector(nrm[i][j], 3, opt)});
        g.points.push_back(std::move(row));
    }
    g.n = static_cast<int>(g.points[0].size()) - 1;
    g.check();
    return g;
}

Json write_coefficients(const PolyVec& x) {
    Json out = Json::array();
    for (std::size_t c = 0; c < x.dim(); ++c)
        for (const auto& [m, a] : x[c].terms()) out.push_back({{"coord", c}, {"i", m.i}, {"j", m.j}, {"coeff", to_string(a)}});
    return out;
}

PolyVec read_coefficients(const Json& records, std::size_t dim) {
    if (!records.is_array()) throw Error(ErrorKind::InvalidInput, "coefficients must be an array of records");
    PolyVec x(dim);
    for (const auto& r : records) {
        int c = field(r, "coord").get<int>(), i = field(r, "i").get<int>(), j = field(r, "j").get<int>();
        if (c < 0 || c >= static_cast<int>(dim) || i < 0 || j < 0) throw Error(ErrorKind::InvalidInput, "bad coefficient record " + r.dump());
        x[c].add_term({i, j}, read_rational(field(r, "coeff")));
    }
    return x;
}

std::array<HomTriPoly, 3> read_homogeneous(const Json& records, int degree) {
    if (!records.is_array()) throw Error(ErrorKind::InvalidInput, "homogeneous field must be an array of records");
    std::array<HomTriPoly, 3> N{HomTriPoly(degree), HomTriPoly(degree), HomTriPoly(degree)};
    for (const auto& r : records) {
        int c = field(r, "coord").get<int>();
        if (c < 0 || c > 2) throw Error(ErrorKind::InvalidInput, "coord must be 0, 1 or 2");
        TriExp e{field(r, "i").get<int>(), field(r, "j").get<int>(), field(r, "k").get<int>()};
        if (e.i < 0 || e.j < 0 || e.k < 0 || e.i + e.j + e.k != degree)
            throw Error(ErrorKind::InvalidInput, "term " + r.dump() + " is not of degree " + std::to_string(degree));
        N[c].add_term(e, read_rational(field(r, "coeff")));
    }
    return N;
}

Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

void save_file(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------- meshes

Mesh sample_mesh(const std::function<std::array<double, 3>(double, double)>& position,
                 const std::function<std::array<double, 3>(double, double)>& normal, Domain::Kind kind, int res_u,
                 int res_v) {
    if (res_u < 1 || res_v < 1) throw Error(ErrorKind::InvalidInput, "mesh resolution must be positive");
    Mesh m;
    std::vector<std::vector<int>> index(res_u + 1, std::vector<int>(res_v + 1, -1));
    auto inside = [&](int i, int j) {
        return kind != Domain::Kind::UnitTriangle || i * static_cast<long>(res_v) + j * static_cast<long>(res_u) <= static_cast<long>(res_u) * res_v;
    };
    for (int i = 0; i <= res_u; ++i)
        for (int j = 0; j <= res_v; ++j) {
            if (!inside(i, j)) continue;
            double u = static_cast<double>(i) / res_u, v = static_cast<double>(j) / res_v;
            index[i][j] = static_cast<int>(m.vertices.size());
            m.vertices.push_back(position(u, v));
            auto n = normal(u, v);
            double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
            if (len > 0)
                for (auto& c : n) c /= len;
            m.normals.push_back(n);
            m.params.push_back({u, v});
        }
    for (int i = 0; i < res_u; ++i)
        for (int j = 0; j < res_v; ++j) {
            int a = index[i][j], b = index[i + 1][j], c = index[i + 1][j + 1], d = index[i][j + 1];
            if (a >= 0 && b >= 0 && d >= 0) m.faces.push_back({a, b, d});
            if (b >= 0 && c >= 0 && d >= 0) m.faces.push_back({b, c, d});
        }
    return m;
}

Mesh mesh_pn(const PolyVec& x, const PolyVec& n, Domain::Kind kind, int res_u, int res_v) {
    auto at = [](const PolyVec& p) {
        return [&p](double u, double v) {
            return std::array<double, 3>{evaluate_double(p[0], u, v), evaluate_double(p[1], u, v), evaluate_double(p[2], u, v)};
        };
    };
    return sample_mesh(at(x), at(n), kind, res_u, res_v);
}

std::array<Mesh, 2> mesh_envelope(const EnvelopePair& env, Domain::Kind kind, int res_u, int res_v) {
    auto at = [](const RationalVec3& r) { return [&r](double u, double v) { return r.eval(u, v); }; };
    return {sample_mesh(at(env.bplus), at(env.nplus), kind, res_u, res_v),
            sample_mesh(at(env.bminus), at(env.nminus), kind, res_u, res_v)};
}

void write_obj(const std::string& path, const Mesh& m) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << std::setprecision(17);
    for (const auto& p : m.vertices) out << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    for (const auto& t : m.params) out << "vt " << t[0] << ' ' << t[1] << '\n';
    for (const auto& n : m.normals) out << "vn " << n[0] << ' ' << n[1] << ' ' << n[2] << '\n';
    for (const auto& f : m.faces) {
        out << 'f';
        for (int k : f) out << ' ' << k + 1 << '/' << k + 1 << '/' << k + 1;
        out << '\n';
    }
}

void write_sign_grid(const std::string& path, const BiPoly& f, Domain::Kind kind, int res) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << "# u v sign(f)\n";
    for (int i = 0; i <= res; ++i) {
        for (int j = 0; j <= res; ++j) {
            if (kind == Domain::Kind::UnitTriangle && i + j > res) continue;
            Rational u(i, res), v(j, res);
            u.canonicalize();
            v.canonicalize();
            out << u.get_d() << ' ' << v.get_d() << ' ' << real_sign(evaluate(f, u, v)) << '\n';
        }
        out << '\n';
    }
}

}  // namespace pnforge::io
