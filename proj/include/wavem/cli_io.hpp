#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavem/errors.hpp"
#include "wavem/riemann_solver.hpp"

namespace wavem {

struct RunConfig {
    ModelParams params;
    double z_max = kZMax;
    double ode_step = kOdeStep;
    // Named tolerances; "crossing" feeds the solver's crossing refinement.
    std::map<std::string, double> tolerances{{"crossing", 1e-10}};
    std::uint64_t seed = 0;
    std::string output_dir = ".";

    // Throws InvalidInput for non-positive tolerances or bad parameters.
    void validate() const;
};

// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitInvalidInput = 2,
    kExitElliptic = 3,
    kExitNoIntersection = 4,
    kExitIncompatible = 5,
};
int exit_code_for(ErrorKind k);

// Applies one "key=value" setting. Parameter keys a1..a4, b1; a stored c must
// agree with a3 - a2. Also z_max, ode_step, seed, output_dir, tol.<name>.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
void apply_setting(RunConfig& cfg, const std::string& kv);
// JSON object or key=value lines (with # comments), detected from content.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

// Rounds to 12 significant digits, the precision of every emitted number.
double round12(double x);
std::string format12(double x);

nlohmann::json to_json(const ModelParams& P);
nlohmann::json to_json(const StatePoint& W);
nlohmann::json to_json(const ManifoldPoint& Q);
nlohmann::json to_json(const RiemannSolution& s, bool with_samples = true);
nlohmann::json to_json(const WaveCurve& C, const ModelParams& P);

nlohmann::json cmd_classify(const StatePoint& W, const RunConfig& cfg);
RiemannSolution cmd_solve(const StatePoint& WL, const StatePoint& WR, const RunConfig& cfg);
std::string solution_svg(const RiemannSolution& s, const RunConfig& cfg);
// Property-suite report; byte-identical for identical (seed, n, params).
nlohmann::json cmd_validate(std::uint64_t seed, int n, const RunConfig& cfg);

struct ExportFile {
    std::string name;
    std::string content;
};
struct ExportRequest {
    std::string which;         // characteristic, son, sonp, scc, inflection, hysteresis, ellipse, wavecurve, saturated
    std::string format = "csv";
    int n = 200;               // samples per axis or along a curve
    double z = 0.0, t = 0.0;   // start point for wavecurve / saturated
    bool backward = false;     // use the backward sequence for wavecurve / saturated
    std::optional<double> z_slice;  // restrict surface grids to one z value
};
std::vector<ExportFile> cmd_export(const ExportRequest& req, const RunConfig& cfg);

}  // namespace wavem
