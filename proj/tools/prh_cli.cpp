// prh: ground states of a pseudo-relativistic Hartree equation on a periodic
// box.  Subcommands: solve, limit-level, validate-operator, decay-fit, sweep.
// Exit codes: 0 success/converged, 1 configuration error, 2 non-convergence
// (artifacts are still written).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prh/config.hpp"
#include "prh/diagnostics.hpp"
#include "prh/errors.hpp"
#include "prh/extension.hpp"
#include "prh/io.hpp"
#include "prh/limit_level.hpp"
#include "prh/rng.hpp"
#include "prh/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    uint64_t seed = 0;
    bool seed_set = false;
    bool override_hypotheses = false;
    int threads = 1;
};

prh::RunConfig load(const GlobalArgs& g) {
    if (g.config_path.empty()) throw prh::ConfigError("--config is required for this command");
    prh::RunConfig rc = prh::load_run_config_file(g.config_path, g.override_hypotheses);
    if (g.seed_set) {
        rc.seed = g.seed;
        rc.solve.seed = g.seed;
        rc.echo["seed"] = g.seed;
    }
    if (!g.out_dir.empty()) {
        rc.outputs = g.out_dir;
        rc.echo["outputs"] = g.out_dir;
    }
    return rc;
}

void emit(const json& doc, const std::string& out_dir, const std::string& filename) {
    if (out_dir.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        fs::create_directories(out_dir);
        fs::path p = fs::path(out_dir) / filename;
        std::ofstream os(p);
        os << doc.dump(2) << "\n";
        if (!os) throw prh::ConfigError("cannot write " + p.string());
        std::cout << "wrote " << p.string() << "\n";
    }
}

int run_solve(const GlobalArgs& g) {
    prh::RunConfig rc = load(g);
    fs::create_directories(rc.outputs);

    prh::SolveReport rep = prh::solve_ground_state(rc.problem, rc.solve);
    if (rc.compare_to_limit) {
        auto lim = prh::limit_level(rc.problem.V_inf, rc.problem, rc.solve);
        auto cmp = prh::compare_to_limit(rep.energy, lim.E_alpha, true);
        rep.limit_level_E_inf = cmp.E_inf;
        rep.comparison_margin = cmp.margin;
    }

    fs::path field_path = fs::path(rc.outputs) / "groundstate.prhf";
    prh::write_prhf(field_path.string(), rep.u);
    json doc = prh::report_to_json(rep, rc.problem, rc.echo, "groundstate.prhf");
    fs::path report_path = fs::path(rc.outputs) / "report.json";
    std::ofstream os(report_path);
    os << doc.dump(2) << "\n";
    if (!os) throw prh::ConfigError("cannot write " + report_path.string());

    std::cout << "status=" << prh::to_string(rep.status) << " energy=" << rep.energy
              << " grad_residual=" << rep.grad_residual << " iterations=" << rep.iterations
              << "\nwrote " << report_path.string() << " and " << field_path.string() << "\n";
    return rep.status == prh::SolveStatus::converged ? 0 : 2;
}

int run_limit_level(const GlobalArgs& g, double alpha) {
    prh::RunConfig rc = load(g);
    auto res = prh::limit_level(alpha, rc.problem, rc.solve);
    json doc{
        {"kind", "limit_level"},
        {"alpha", res.alpha},
        {"E_alpha", res.E_alpha},
        {"status", prh::to_string(res.report.status)},
        {"iterations", res.report.iterations},
        {"grad_residual", res.report.grad_residual},
        {"seed", res.report.seed},
        {"config", rc.echo},
    };
    emit(doc, g.out_dir, "limit_level.json");
    return res.report.status == prh::SolveStatus::converged ? 0 : 2;
}

int run_validate_operator(const GlobalArgs& g, std::vector<int> layers, double depth) {
    prh::RunConfig rc = load(g);
    const prh::Lattice& lat = rc.problem.lattice;
    if (layers.empty()) layers = {64, 128};
    if (depth <= 0.0) depth = 8.0 / rc.problem.m;

    prh::Field gfield = prh::random_field(lat, rc.seed);
    auto study = prh::dtn_convergence_study(gfield, rc.problem.m, depth, layers);

    json doc{
        {"kind", "operator_validation"},
        {"grid", {{"dim", lat.dim}, {"points_per_axis", lat.points_per_axis},
                  {"extent", lat.extent}}},
        {"m", rc.problem.m},
        {"depth", depth},
        {"layer_counts", study.layer_counts},
        {"relative_errors", study.rel_errors},
        {"observed_order", study.observed_order},
        {"seed", rc.seed},
    };
    emit(doc, g.out_dir, "operator_validation.json");
    return 0;
}

int run_decay_fit(const GlobalArgs& g, const std::string& field_path, double m,
                  double lo, double hi, int bins) {
    prh::Field u = prh::read_prhf(field_path);
    if (lo <= 0.0) lo = u.lattice.extent / 8.0;
    if (hi <= 0.0) hi = u.lattice.extent / 4.0;
    prh::DecayFit fit = prh::fit_decay_rate(u, lo, hi, m, bins);
    json doc = prh::decay_fit_to_json(fit);
    doc["kind"] = "decay_fit";
    doc["field_path"] = field_path;
    emit(doc, g.out_dir, "decay_fit.json");
    return 0;
}

int run_sweep(const GlobalArgs& g) {
    if (g.config_path.empty()) throw prh::ConfigError("--config is required for this command");
    std::ifstream is(g.config_path);
    if (!is) throw prh::ConfigError("cannot open config file: " + g.config_path);
    json root;
    try {
        is >> root;
    } catch (const json::parse_error& e) {
        throw prh::ConfigError("config parse error in " + g.config_path + ": " + e.what());
    }
    if (!root.contains("sweep") || !root["sweep"].is_array() || root["sweep"].empty())
        throw prh::ConfigError("sweep: config must contain a non-empty 'sweep' array of patches");

    json base = root;
    base.erase("sweep");
    prh::RunConfig base_rc = prh::load_run_config(base, g.override_hypotheses);
    if (g.seed_set) base_rc.solve.seed = g.seed;

    // Patches are JSON merge patches applied to the base config; the solve
    // section is shared, each patch varies the problem.
    std::vector<prh::ProblemSpec> specs;
    std::vector<int> spec_of_entry(root["sweep"].size(), -1);
    std::vector<std::string> load_errors(root["sweep"].size());
    for (std::size_t i = 0; i < root["sweep"].size(); ++i) {
        json cfg = base;
        cfg.merge_patch(root["sweep"][i]);
        try {
            prh::RunConfig rci = prh::load_run_config(cfg, g.override_hypotheses);
            spec_of_entry[i] = static_cast<int>(specs.size());
            specs.push_back(std::move(rci.problem));
        } catch (const std::exception& e) {
            load_errors[i] = e.what();
        }
    }

    std::vector<prh::SweepEntry> results;
    if (!specs.empty()) results = prh::sweep(specs, base_rc.solve, g.threads);

    json entries = json::array();
    bool all_ok = true;
    for (std::size_t i = 0; i < root["sweep"].size(); ++i) {
        json e{{"index", i}, {"patch", root["sweep"][i]}};
        const std::string* err = nullptr;
        const prh::SolveReport* rep = nullptr;
        if (spec_of_entry[i] < 0) {
            err = &load_errors[i];
        } else {
            const auto& r = results[static_cast<std::size_t>(spec_of_entry[i])];
            if (r.report) rep = &*r.report;
            else err = &r.error;
        }
        if (rep) {
            e["ok"] = rep->status == prh::SolveStatus::converged;
            e["status"] = prh::to_string(rep->status);
            e["energy"] = rep->energy;
            e["grad_residual"] = rep->grad_residual;
            e["iterations"] = rep->iterations;
            e["seed"] = rep->seed;
            if (rep->status != prh::SolveStatus::converged) all_ok = false;
        } else {
            e["ok"] = false;
            e["error"] = *err;
            all_ok = false;
        }
        entries.push_back(std::move(e));
    }

    json doc{{"kind", "sweep"}, {"entries", entries}, {"config", base_rc.echo}};
    emit(doc, g.out_dir, "sweep.json");
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive ground states of the pseudo-relativistic Hartree equation "
                 "sqrt(-Lap + m^2) u + V u = (W * |u|^theta) |u|^(theta-2) u "
                 "on a periodic box"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "Run configuration file (JSON)");
    app.add_option("--out", g.out_dir, "Output directory (overrides config 'outputs')");
    auto* seed_opt = app.add_option("--seed", g.seed, "Override the RNG seed");
    app.add_flag("--override-hypotheses", g.override_hypotheses,
                 "Demote hypothesis violations (V1/V2/W) to warnings; reports carry a flag");
    app.add_option("--threads", g.threads, "Worker threads for sweep")->check(CLI::PositiveNumber);

    auto* c_solve =
        app.add_subcommand("solve", "Solve for a ground state; writes report.json + groundstate.prhf");
    c_solve->fallthrough();

    double alpha = 0.0;
    auto* c_limit = app.add_subcommand("limit-level", "Ground-state level with constant potential alpha");
    c_limit->fallthrough();
    c_limit->add_option("--alpha", alpha, "Constant potential value")->required();

    std::vector<int> layers;
    double depth = 0.0;
    auto* c_valop = app.add_subcommand(
        "validate-operator", "Check the extension realization of sqrt(-Lap + m^2) against the spectral one");
    c_valop->fallthrough();
    c_valop->add_option("--layers", layers, "Slab layer counts (default 64 128)");
    c_valop->add_option("--depth", depth, "Slab depth (default 8/m)");

    std::string field_path;
    double fit_m = 0.0, fit_lo = 0.0, fit_hi = 0.0;
    int fit_bins = 0;
    auto* c_decay = app.add_subcommand("decay-fit", "Fit the radial exponential decay rate of a stored field");
    c_decay->fallthrough();
    c_decay->add_option("--field", field_path, "PRHF field file")->required();
    c_decay->add_option("--m", fit_m, "Reference decay rate")->required();
    c_decay->add_option("--window-lo", fit_lo, "Fit window lower radius (default extent/8)");
    c_decay->add_option("--window-hi", fit_hi, "Fit window upper radius (default extent/4)");
    c_decay->add_option("--bins", fit_bins, "Radial bins (default: points per axis)");

    auto* c_sweep = app.add_subcommand("sweep", "Batch of solves over the config's 'sweep' patch list");
    c_sweep->fallthrough();

    CLI11_PARSE(app, argc, argv);
    g.seed_set = seed_opt->count() > 0;

    try {
        if (*c_solve) return run_solve(g);
        if (*c_limit) return run_limit_level(g, alpha);
        if (*c_valop) return run_validate_operator(g, layers, depth);
        if (*c_decay) return run_decay_fit(g, field_path, fit_m, fit_lo, fit_hi, fit_bins);
        if (*c_sweep) return run_sweep(g);
    } catch (const prh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
