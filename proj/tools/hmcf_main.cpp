// Command-line laboratory driver. Subcommands dispatch into the library;
// every run writes CSV outputs, a JSON summary, and a manifest into a fresh
// timestamped directory.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure
// (degeneracy / non-convergence), 3 assertion failure in a test-mode run.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "hmcf/config.hpp"
#include "hmcf/diagnostics.hpp"
#include "hmcf/errors.hpp"
#include "hmcf/harness.hpp"
#include "hmcf/io.hpp"
#include "hmcf/linearized.hpp"
#include "hmcf/nashmoser.hpp"
#include "hmcf/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hmcf;

namespace {

struct Cli {
    std::string subcommand;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    long long seed = -1;
    bool quiet = false;
    std::string reference_out; // --reference-config
};

json load_config(const Cli& cli) {
    json doc = json::object();
    if (!cli.config_path.empty()) {
        std::ifstream in(cli.config_path);
        if (!in) throw ConfigError("cannot open config file: " + cli.config_path);
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    for (const auto& ov : cli.overrides) doc = apply_override(doc, ov);
    if (cli.seed >= 0)
        doc = apply_override(doc, "experiment.seed=" + std::to_string(cli.seed));
    if (!cli.out_dir.empty()) doc = apply_override(doc, "output.dir=" + cli.out_dir);
    return doc;
}

void info(const Cli& cli, const std::string& line) {
    if (!cli.quiet) std::cout << line << '\n';
}

int run_simulate(const Cli& cli, const RunConfig& rc, const fs::path& dir, json& summary,
                 std::vector<std::string>& outputs, bool with_diagnostics) {
    const Trajectory traj = simulate(rc.sim, build_initial_state(rc.sim, rc.initial));
    io::write_trajectory_csv(dir / "trajectory.csv", traj);
    outputs.push_back("trajectory.csv");
    summary["trajectory"] = io::trajectory_summary(traj);

    int code = traj.completed ? 0 : 2;
    if (with_diagnostics && traj.completed) {
        const ConservationReport rep = conservation_report(traj, rc.sim);
        const VolumeBoundCheck bound = volume_bounds(rep, rc.sim);
        io::write_conservation_csv(dir / "conservation.csv", rep);
        outputs.push_back("conservation.csv");
        summary["conservation"] = io::conservation_summary(rep, bound);
        if (!bound.pass) code = 3;
    }
    info(cli, "wrote " + (dir / "trajectory.csv").string());
    return code;
}

int run_linearize_check(const Cli& cli, const RunConfig& rc, const fs::path& dir, json& summary,
                        std::vector<std::string>& outputs) {
    // Finite-difference consistency, superposition, and the equilibrium
    // spectrum of the linearized operator at the configured base state.
    const PhaseState st = build_initial_state(rc.sim, rc.initial);
    const ForceModel model = ForceModel::from(rc.sim);
    const std::size_t m = rc.sim.grid_size;

    const RealField pr = random_band_limited(m, 2, 10, rc.experiment.seed + 3);
    const VecField nu = outward_normal(st.F);
    VecField h(m);
    for (std::size_t j = 0; j < m; ++j) h[j] = pr[j] * nu[j];
    const double hnorm = spectral::sobolev_norm(h, 0.0);
    for (auto& v : h) v *= 1.0 / hnorm;

    const VecField lin = model.dforce(st.F, h);
    std::vector<double> deltas = {1e-3, 1e-4, 1e-5};
    std::vector<double> errors;
    for (double d : deltas) {
        VecField plus(m), minus(m);
        for (std::size_t j = 0; j < m; ++j) {
            plus[j] = st.F.positions[j] + d * h[j];
            minus[j] = st.F.positions[j] - d * h[j];
        }
        const VecField fp = model.force(with_reference(plus, st.F.reference_density));
        const VecField fm = model.force(with_reference(minus, st.F.reference_density));
        VecField fd(m);
        for (std::size_t j = 0; j < m; ++j) fd[j] = (0.5 / d) * (fp[j] - fm[j]) - lin[j];
        errors.push_back(spectral::sobolev_norm(fd, 0.0));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double lx = std::log(deltas[i]), ly = std::log(errors[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(deltas.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    // Superposition on random fields.
    const RealField p2 = random_band_limited(m, 1, 8, rc.experiment.seed + 5);
    VecField h2(m);
    for (std::size_t j = 0; j < m; ++j) h2[j] = Vec2{p2[j], -0.5 * p2[(j + 3) % m]};
    VecField combo(m);
    for (std::size_t j = 0; j < m; ++j) combo[j] = 1.7 * h[j] + (-0.6) * h2[j];
    const VecField l_combo = model.dforce(st.F, combo);
    const VecField l1 = model.dforce(st.F, h);
    const VecField l2 = model.dforce(st.F, h2);
    VecField resid(m);
    for (std::size_t j = 0; j < m; ++j) resid[j] = l_combo[j] - 1.7 * l1[j] + 0.6 * l2[j];
    const double superposition = spectral::sobolev_norm(resid, 0.0);

    summary["fd_slope"] = slope;
    summary["fd_errors"] = errors;
    summary["superposition_residual"] = superposition;

    const bool ok = std::fabs(slope - 2.0) <= 0.1 && superposition <= 1e-10;
    io::write_json(dir / "linearize_check.json", summary);
    outputs.push_back("linearize_check.json");
    info(cli, std::string("linearize-check ") + (ok ? "pass" : "FAIL") +
                  " (slope " + std::to_string(slope) + ")");
    return ok ? 0 : 3;
}

int run_nash_moser(const Cli& cli, const RunConfig& rc, const fs::path& dir, json& summary,
                   std::vector<std::string>& outputs) {
    NashMoserConfig cfg = canonical_nashmoser_config(rc.sim.epsilon, rc.sim.horizon,
                                                     rc.sim.grid_size, rc.experiment.seed);
    cfg.potential = rc.sim.potential;
    cfg.rho = rc.sim.rho;
    cfg.dt = rc.sim.dt;
    cfg.s_bar = rc.experiment.s_bar;
    cfg.s_top = rc.experiment.s_top;
    cfg.tolerance = rc.experiment.tolerance;
    cfg.max_level = rc.experiment.max_level;

    const NashMoserResult result = iterate(cfg);
    io::write_trace_csv(dir / "trace.csv", result.trace);
    outputs.push_back("trace.csv");
    io::write_trajectory_csv(dir / "solution.csv", result.solution);
    outputs.push_back("solution.csv");
    summary["nash_moser"] = io::trace_summary(result);
    info(cli, "termination: " + result.trace.termination);
    return result.converged ? 0 : 2;
}

int dispatch(const Cli& cli) {
    const json doc = load_config(cli);
    const RunConfig rc = parse_config(doc);

    const fs::path dir = io::fresh_run_dir(rc.output_dir, cli.subcommand);
    io::RunManifest manifest;
    manifest.command = cli.subcommand;
    manifest.config_echo = rc.echo;
    manifest.started = "";
    io::write_manifest(dir, manifest); // provisional, finalized below

    json summary;
    std::vector<std::string> outputs;
    int code = 0;
    std::string message;
    try {
        if (cli.subcommand == "simulate") {
            code = run_simulate(cli, rc, dir, summary, outputs, false);
        } else if (cli.subcommand == "diagnose") {
            code = run_simulate(cli, rc, dir, summary, outputs, true);
        } else if (cli.subcommand == "linearize-check") {
            code = run_linearize_check(cli, rc, dir, summary, outputs);
        } else if (cli.subcommand == "nash-moser") {
            code = run_nash_moser(cli, rc, dir, summary, outputs);
        } else if (cli.subcommand == "stability") {
            const StabilityReport rep = stability_experiment(rc);
            json pts = json::array();
            for (const auto& p : rep.points)
                pts.push_back({{"eps", p.eps},
                               {"diff_norm", p.diff_norm},
                               {"ratio", p.ratio},
                               {"conclusive", p.conclusive},
                               {"note", p.note}});
            summary["stability"] = {{"points", pts},
                                    {"identical_data_difference", rep.identical_data_difference},
                                    {"ratio_spread", rep.ratio_spread},
                                    {"measured_ball_radius", rep.measured_ball_radius},
                                    {"pass", rep.pass}};
            code = rep.pass ? 0 : 3;
        } else if (cli.subcommand == "lifespan") {
            const LifespanReport rep = lifespan_experiment(rc);
            json pts = json::array();
            for (const auto& p : rep.points)
                pts.push_back({{"eps", p.eps},
                               {"horizon", p.horizon},
                               {"survived", p.survived},
                               {"h2_initial", p.h2_initial},
                               {"h2_max", p.h2_max},
                               {"norm_bounded", p.norm_bounded},
                               {"note", p.note}});
            summary["lifespan"] = {{"points", pts}};
            code = 0; // failures are data, not errors
        } else if (cli.subcommand == "convergence") {
            const ConvergenceReport rep = convergence_study(rc);
            summary["convergence"] = {{"dt_list", rep.dt_list},
                                      {"dt_errors", rep.dt_errors},
                                      {"fitted_time_order", rep.fitted_time_order},
                                      {"m_errors", rep.m_errors},
                                      {"space_error_drop", rep.space_error_drop},
                                      {"cross_solver_h2", rep.cross_solver_h2},
                                      {"pass", rep.pass()}};
            code = rep.pass() ? 0 : 3;
        } else if (cli.subcommand == "smoothing-check") {
            const SmoothingReport rep = smoothing_check(rc.experiment.seed);
            json pairs = json::array();
            for (const auto& p : rep.pairs)
                pairs.push_back({{"s1", p.s1},
                                 {"s2", p.s2},
                                 {"low_pass_estimate", p.low_pass_estimate},
                                 {"c_min", p.c_min},
                                 {"c_max", p.c_max},
                                 {"spread", p.spread}});
            summary["smoothing"] = {{"pairs", pairs}, {"pass", rep.pass}};
            code = rep.pass ? 0 : 3;
        } else {
            throw ConfigError("unknown subcommand: " + cli.subcommand);
        }
    } catch (const ConfigError& e) {
        code = 1;
        message = e.what();
    } catch (const DegeneracyError& e) {
        code = 2;
        message = e.what();
    } catch (const NumericalError& e) {
        code = 2;
        message = e.what();
    }

    io::write_json(dir / "summary.json", summary);
    outputs.push_back("summary.json");
    outputs.push_back("manifest.json");
    manifest.outputs = outputs;
    manifest.exit_status = code;
    manifest.message = message;
    manifest.finished = "done";
    io::write_manifest(dir, manifest);
    if (!message.empty()) std::cerr << "error: " << message << '\n';
    info(cli, "run directory: " + dir.string() + " (exit " + std::to_string(code) + ")");
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for closed curves driven by curvature, "
                 "a central potential, and inner pressure"};
    app.require_subcommand(0, 1);

    Cli cli;
    app.add_option("--reference-config", cli.reference_out,
                   "write the fully-defaulted reference config to PATH and exit");
    const std::vector<std::string> names = {"simulate",  "diagnose",   "linearize-check",
                                            "nash-moser", "stability", "lifespan",
                                            "convergence", "smoothing-check"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", cli.config_path, "JSON config file");
        sub->add_option("--set", cli.overrides, "dotted-path override key=value");
        sub->add_option("--out", cli.out_dir, "output base directory");
        sub->add_option("--seed", cli.seed, "experiment seed override");
        sub->add_flag("--quiet", cli.quiet, "suppress progress output");
        sub->callback([&cli, name] { cli.subcommand = name; });
    }

    CLI11_PARSE(app, argc, argv);

    if (!cli.reference_out.empty()) {
        try {
            std::ofstream out(cli.reference_out);
            if (!out) throw ConfigError("cannot write " + cli.reference_out);
            out << reference_config().dump(2) << '\n';
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
        return 0;
    }
    if (cli.subcommand.empty()) {
        std::cerr << app.help() << '\n';
        return 1;
    }

    try {
        return dispatch(cli);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DegeneracyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
