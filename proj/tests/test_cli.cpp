#include "pnforge/cli.hpp"
#include "pnforge/io.hpp"

#include "support/datasets.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pnforge;
using testdata::q;
namespace fs = std::filesystem;

namespace {

const fs::path kData = PNFORGE_DATA_DIR;

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("pnforge_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Run {
    int code;
    std::string out, err;
};

Run run_job(cli::JobSpec job) {
    std::ostringstream out, err;
    int code = cli::run(job, out, err);
    return {code, out.str(), err.str()};
}

cli::JobSpec job_for(cli::Mode m, const fs::path& input, const fs::path& out) {
    cli::JobSpec j;
    j.mode = m;
    j.input = input.string();
    j.out_dir = out.string();
    return j;
}

fs::path write_json(const fs::path& dir, const std::string& name, const io::Json& doc) {
    fs::path p = dir / name;
    io::save_file(p.string(), doc);
    return p;
}

}  // namespace

TEST_CASE("rational ingestion") {
    using io::Json;
    CHECK(io::read_rational(Json("3/4")) == q(3, 4));
    CHECK(io::read_rational(Json(-2)) == q(-2));
    CHECK_THROWS_AS(io::read_rational(Json(0.5)), Error);
    CHECK_THROWS_AS(io::read_rational(Json("0.5")), Error);
    CHECK_THROWS_AS(io::read_rational(Json(true)), Error);
    io::ReadOptions lossy{true};
    CHECK(io::read_rational(Json(0.5), lossy) == q(1, 2));
    CHECK(io::read_rational(Json(0.3333333333), lossy) == q(1, 3));
    CHECK(io::limit_denominator(M_PI, 1000) == q(355, 113));
    CHECK(io::limit_denominator(-0.1, 1000000) == q(-1, 10));
    CHECK_THROWS_AS(io::read_vector(Json::array({"1", "2"}), 3), Error);
}

TEST_CASE("coefficient JSON round trip is bit-exact") {
    oracle::Random rng(55);
    for (int t = 0; t < 20; ++t) {
        PolyVec x = rng.polyvec(4, 3, 9);
        x[1] = x[1].scaled(q(1, 7));
        auto j = io::write_coefficients(x);
        std::string text = j.dump();
        auto back = io::read_coefficients(io::Json::parse(text), 4);
        CHECK(back == x);
        CHECK(io::write_coefficients(back).dump() == text);
    }
    auto rec = io::write_coefficients(PolyVec{BiPoly::u() + BiPoly(q(-1, 2))});
    REQUIRE(rec.size() == 2);
    CHECK(rec[0]["coeff"] == "-1/2");
    CHECK(rec[1]["i"] == 1);
}

TEST_CASE("Hermite JSON readers") {
    auto doc = io::load_file((kData / "pn_quad.json").string());
    auto pts = io::read_pn_points(doc);
    REQUIRE(pts.size() == 4);
    CHECK(pts[2].unit_normal == testdata::pn_quad()[2].unit_normal);
    auto mos = io::read_mos_points(io::load_file((kData / "mos_tri.json").string()));
    CHECK(mos[1].tangent2 == testdata::mos_tri()[1].tangent2);
    auto grid = io::read_grid(io::load_file((kData / "grid_3x3.json").string()));
    CHECK(grid.m == 3);
    CHECK(grid.points[0][0].point == testdata::sphere_grid(3, 3).points[0][0].point);
    doc["normals"].erase(1);
    CHECK_THROWS_AS(io::read_pn_points(doc), Error);
}

TEST_CASE("mode names") {
    CHECK(cli::parse_mode("syzygy-report") == cli::Mode::SyzygyReport);
    CHECK(std::string(cli::mode_name(cli::Mode::MOSTri)) == "mos-tri");
    CHECK_THROWS_AS(cli::parse_mode("pn-hex"), Error);
    CHECK(cli::exit_code(ErrorKind::Inconsistent) == 3);
    CHECK(cli::exit_code(ErrorKind::IrrationalIsotropics) == 4);
    CHECK(cli::exit_code(ErrorKind::InvariantViolation) == 5);
    CHECK(cli::exit_code(ErrorKind::InvalidInput) == 2);
}

TEST_CASE("pn-tri writes exact outputs and a faithful mesh") {
    fs::path out = scratch("pn_tri");
    auto job = job_for(cli::Mode::PNTri, kData / "pn_tri.json", out);
    job.mesh_res = std::pair{6, 6};
    auto r = run_job(job);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("family dimension: 1") != std::string::npos);
    CHECK(r.out.find("degree: 4") != std::string::npos);
    for (const char* f : {"coefficients.json", "report.json", "f_sign.dat", "surface.obj"}) CHECK(fs::exists(out / f));

    PolyVec x = io::read_coefficients(io::load_file((out / "coefficients.json").string())["representative"], 3);
    std::ifstream obj(out / "surface.obj");
    std::vector<std::array<double, 3>> verts;
    std::vector<std::array<double, 2>> params;
    std::string tag;
    while (obj >> tag) {
        if (tag == "v") {
            std::array<double, 3> p;
            obj >> p[0] >> p[1] >> p[2];
            verts.push_back(p);
        } else if (tag == "vt") {
            std::array<double, 2> t;
            obj >> t[0] >> t[1];
            params.push_back(t);
        } else {
            std::string rest;
            std::getline(obj, rest);
        }
    }
    REQUIRE(verts.size() == params.size());
    CHECK(verts.size() == 28);
    double worst = 0;
    for (std::size_t k = 0; k < verts.size(); ++k)
        for (int c = 0; c < 3; ++c) {
            double exact = to_double(evaluate(x[c], rationalize(params[k][0], 1e-15), rationalize(params[k][1], 1e-15)));
            worst = std::max(worst, std::abs(verts[k][c] - exact) / std::max(1.0, std::abs(exact)));
        }
    CHECK(worst <= 1e-12);
}

TEST_CASE("exit codes") {
    fs::path out = scratch("codes");
    {
        auto job = job_for(cli::Mode::PNQuad, kData / "pn_quad.json", out);
        job.degree = 5;
        auto r = run_job(job);
        CHECK(r.code == 3);
        CHECK(r.err.find("try --degree 6") != std::string::npos);
    }
    {
        auto doc = io::load_file((kData / "pn_tri.json").string());
        doc["normals"][0] = io::Json::array({0, 0, -1.0});
        auto job = job_for(cli::Mode::PNTri, write_json(out, "float.json", doc), out);
        CHECK(run_job(job).code == 2);
        job.rationalize_floats = true;
        CHECK(run_job(job).code == 0);
    }
    {
        auto doc = io::load_file((kData / "mos_tri.json").string());
        doc["tangent1"][0] = io::Json::array({"1", "0", "0", "0"});
        doc["tangent2"][0] = io::Json::array({"0", "1", "1", "0"});
        auto job = job_for(cli::Mode::MOSTri, write_json(out, "irr.json", doc), out);
        auto r = run_job(job);
        CHECK(r.code == 4);
    }
    {
        auto job = job_for(cli::Mode::PNTri, out / "missing.json", out);
        CHECK(run_job(job).code == 2);
        job.input = write_json(out, "junk.json", io::Json::object({{"points", 3}})).string();
        CHECK(run_job(job).code == 2);
    }
}

TEST_CASE("syzygy, family and certify modes") {
    fs::path out = scratch("modes");
    auto s = run_job(job_for(cli::Mode::SyzygyReport, kData / "syzygy_sphere.json", out));
    CHECK(s.code == 0);
    CHECK(s.out.find("base points detected (ℓ=1: dim 1 > bound 0)") != std::string::npos);

    auto f = run_job(job_for(cli::Mode::Family, kData / "family_cubic.json", out));
    CHECK(f.code == 0);
    CHECK(f.out.find("family dimension: 3") != std::string::npos);

    auto c = run_job(job_for(cli::Mode::Certify, kData / "certify_plane.json", out));
    CHECK(c.code == 0);
    CHECK(c.out.find("f: 1") != std::string::npos);
    CHECK(c.out.find("sigma: 1") != std::string::npos);

    // the paraboloid (u, v, u² + v²) is not PN
    io::Json para{{"surface", io::write_coefficients(PolyVec{BiPoly::u(), BiPoly::v(), BiPoly::u() * BiPoly::u() + BiPoly::v() * BiPoly::v()})}};
    auto p = run_job(job_for(cli::Mode::Certify, write_json(out, "para.json", para), out));
    CHECK(p.code == 0);
    CHECK(p.out.find("PN: no") != std::string::npos);
}

TEST_CASE("command-line front end") {
    fs::path out = scratch("binary");
    std::string exe = PNFORGE_CLI_PATH;
    auto status = [&](const std::string& args) {
        int rc = std::system((exe + " " + args + " > " + (out / "log.txt").string() + " 2>&1").c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    std::string in = (kData / "pn_tri.json").string();
    CHECK(status("--mode pn-tri --input " + in + " --out-dir " + out.string() + " --mesh-res 4x4") == 0);
    CHECK(fs::exists(out / "surface.obj"));
    CHECK(status("--mode pn-tri --input " + in + " --degree 3 --out-dir " + out.string()) == 3);
    CHECK(status("--mode pn-hex --input " + in) == 2);
    CHECK(status("--mode pn-tri") == 2);
    CHECK(status("--mode pn-tri --input " + in + " --center 1,1,0") == 2);
}
