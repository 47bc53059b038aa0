// Command-line front end: classify, solve, validate and export.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wavem/cli_io.hpp"

namespace fs = std::filesystem;
using namespace wavem;

namespace {

struct Globals {
    std::string config;
    std::vector<std::string> params;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

RunConfig make_config(const Globals& g) {
    RunConfig cfg = g.config.empty() ? RunConfig{} : load_config(g.config);
    for (const auto& kv : g.params) apply_setting(cfg, kv);
    if (g.seed) cfg.seed = *g.seed;
    if (!g.out.empty()) cfg.output_dir = g.out;
    cfg.validate();
    return cfg;
}

void emit(const Globals& g, const std::string& name, const std::string& content) {
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    fs::create_directories(g.out);
    const fs::path p = fs::path(g.out) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw WaveError(ErrorKind::InvalidInput, "cannot write " + p.string());
    f << content;
    std::cerr << "wrote " << p.string() << "\n";
}

std::string waves_csv(const RiemannSolution& s) {
    std::string o = "index,type,from_u,from_v,to_u,to_v,speed_from,speed_to\n";
    for (std::size_t i = 0; i < s.waves.size(); ++i) {
        const Wave& w = s.waves[i];
        o += std::to_string(i) + "," + to_string(w.type) + "," + format12(w.from.u) + "," + format12(w.from.v) + "," +
             format12(w.to.u) + "," + format12(w.to.v) + "," + format12(w.speed_from) + "," + format12(w.speed_to) + "\n";
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riemann solutions for a quadratic 2x2 conservation law"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "JSON or key=value configuration file");
    app.add_option("--params", g.params, "Overrides such as b1=8 a3=1 tol.crossing=1e-10");
    app.add_option("--out", g.out, "Directory for output files (stdout when omitted)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));
    app.add_option("--seed", g.seed, "Seed for randomized commands");

    double u = 0, v = 0;
    auto* classify = app.add_subcommand("classify", "Classify a state and lift it to the characteristic plane");
    classify->add_option("u", u)->required();
    classify->add_option("v", v)->required();

    double uL = 0, vL = 0, uR = 0, vR = 0;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the Riemann problem for (uL, vL) | (uR, vR)");
    solve_cmd->add_option("uL", uL)->required();
    solve_cmd->add_option("vL", vL)->required();
    solve_cmd->add_option("uR", uR)->required();
    solve_cmd->add_option("vR", vR)->required();

    int n_validate = 1000;
    auto* validate = app.add_subcommand("validate", "Run the randomized invariant suite");
    validate->add_option("-n,--samples", n_validate, "Samples per invariant")->check(CLI::NonNegativeNumber);

    ExportRequest req;
    double z_slice = 0.0;
    auto* exp = app.add_subcommand("export", "Export geometry, wave curves or saturated surfaces");
    exp->add_option("which", req.which)
        ->required()
        ->check(CLI::IsMember({"characteristic", "son", "sonp", "scc", "inflection", "hysteresis", "ellipse", "wavecurve",
                               "saturated"}));
    exp->add_option("-n,--samples", req.n, "Samples per axis (generators for saturated)");
    exp->add_option("--z", req.z, "Start z for wavecurve and saturated");
    exp->add_option("--t", req.t, "Start t for wavecurve and saturated");
    exp->add_flag("--backward", req.backward, "Use the backward sequence from a fast point");
    auto* slice_opt = exp->add_option("--z-slice", z_slice, "Single z value for surface grids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalidInput;
    }

    try {
        const RunConfig cfg = make_config(g);
        if (*classify) {
            emit(g, "classify.json", cmd_classify({u, v}, cfg).dump(2) + "\n");
        } else if (*solve_cmd) {
            const RiemannSolution s = cmd_solve({uL, vL}, {uR, vR}, cfg);
            if (g.format == "svg") emit(g, "solution.svg", solution_svg(s, cfg));
            else if (g.format == "csv") emit(g, "solution.csv", waves_csv(s));
            else emit(g, "solution.json", to_json(s).dump(2) + "\n");
        } else if (*validate) {
            const auto report = cmd_validate(cfg.seed, n_validate, cfg);
            emit(g, "validate.json", report.dump(2) + "\n");
            return report.at("pass").get<bool>() ? kExitOk : kExitFailure;
        } else if (*exp) {
            req.format = g.format;
            if (slice_opt->count() > 0) req.z_slice = z_slice;
            for (const auto& f : cmd_export(req, cfg)) emit(g, f.name, f.content);
        }
    } catch (const WaveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
