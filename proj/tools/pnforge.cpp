// pnforge: exact PN / MOS patch construction from Hermite data.

#include "pnforge/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

pnforge::RVec parse_center(const std::string& text) {
    pnforge::RVec c;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) c.push_back(pnforge::parse_rational(part));
    if (c.size() != 3) throw pnforge::Error(pnforge::ErrorKind::InvalidInput, "--center expects x,y,z");
    return c;
}

std::pair<int, int> parse_res(const std::string& text) {
    auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) {
            int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw pnforge::Error(pnforge::ErrorKind::InvalidInput, "--mesh-res expects NxM");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact polynomial PN and MOS patches from Hermite data"};
    std::string mode, branch = "plus", center, threshold, mesh_res;
    pnforge::cli::JobSpec job;
    int degree = -1, lmax = -1;
    app.add_option("--mode", mode, "pn-quad | pn-tri | pn-grid | mos-quad | mos-tri | family | syzygy-report | certify")
        ->required();
    app.add_option("--input", job.input, "input JSON")->required()->check(CLI::ExistingFile);
    app.add_option("--degree", degree, "surface degree (tangent degree l in family mode)");
    app.add_option("--branch", branch, "isotropic branch lifted to a field")->check(CLI::IsMember({"plus", "minus"}));
    app.add_option("--center", center, "projection center x,y,z (rational unit vector)");
    app.add_option("--near-center-threshold", threshold, "margin below which a normal counts as near the center");
    app.add_option("--lmax", lmax, "highest syzygy degree scanned (default 3k)");
    app.add_option("--mesh-res", mesh_res, "OBJ sample resolution NxM");
    app.add_option("--out-dir", job.out_dir, "output directory");
    app.add_flag("--rationalize-floats", job.rationalize_floats, "accept floats, rounded to denominators <= 10^6");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : pnforge::cli::InputInvalid;
    }

    try {
        job.mode = pnforge::cli::parse_mode(mode);
        if (degree >= 0) job.degree = degree;
        if (lmax >= 0) job.lmax = lmax;
        job.branch_minus = branch == "minus";
        if (!center.empty()) job.center = parse_center(center);
        if (!threshold.empty()) job.near_center_threshold = pnforge::parse_rational(threshold);
        if (!mesh_res.empty()) job.mesh_res = parse_res(mesh_res);
    } catch (const pnforge::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return pnforge::cli::InputInvalid;
    }
    return pnforge::cli::run(job, std::cout, std::cerr);
}
