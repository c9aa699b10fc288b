#pragma once
// Job orchestration behind the pnforge command-line tool.

#include "pnforge/error.hpp"
#include "pnforge/field.hpp"
#include "pnforge/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace pnforge::cli {

enum class Mode { PNQuad, PNTri, PNGrid, MOSQuad, MOSTri, Family, SyzygyReport, Certify };

/// "pn-quad", "pn-tri", ...; throws InvalidInput for unknown names.
Mode parse_mode(const std::string& name);
const char* mode_name(Mode m);

struct JobSpec {
    Mode mode = Mode::PNQuad;
    std::string input;
    std::optional<int> degree;  // surface degree, or ℓ for family mode
    bool branch_minus = false;
    std::optional<RVec> center;
    std::optional<Rational> near_center_threshold;
    std::optional<int> lmax;
    std::optional<std::pair<int, int>> mesh_res;
    std::string out_dir = ".";
    bool rationalize_floats = false;
};

enum ExitCode { Success = 0, InputInvalid = 2, DegreeTooLow = 3, Irrational = 4, Internal = 5 };

/// Exit status for an error kind.
int exit_code(ErrorKind kind);

/// Runs the job, printing the report to `out` and diagnostics to `err`;
/// writes coefficients.json, report.json and optional meshes into out_dir.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace pnforge::cli
