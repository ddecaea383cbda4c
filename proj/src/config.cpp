#include "prh/config.hpp"

#include <cmath>
#include <fstream>

#include "prh/errors.hpp"
#include "prh/io.hpp"

namespace prh {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(where + ": missing required field '" + key + "'");
    return j[key];
}

double num(const json& j, const std::string& key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double num_or(const json& j, const std::string& key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(key + ": expected a number");
    return j[key].get<double>();
}

int integer(const json& j, const std::string& key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string str(const json& j, const std::string& key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

KernelSpec parse_kernel(const json& j) {
    std::string kind = str(j, "kind", "problem.kernel");
    if (kind == "yukawa") return KernelSpec::yukawa(num(j, "mu", "problem.kernel"));
    if (kind == "newton") return KernelSpec::newton(num(j, "lambda", "problem.kernel"));
    if (kind == "gaussian")
        return KernelSpec::gaussian(num(j, "s", "problem.kernel"),
                                    num_or(j, "amplitude", 1.0));
    if (kind == "tabulated")
        return KernelSpec::tabulated(read_prhf(str(j, "path", "problem.kernel")));
    throw ConfigError("problem.kernel.kind: unknown kind '" + kind +
                      "' (expected yukawa, newton, gaussian, or tabulated)");
}

InitSpec parse_init(const json& j) {
    InitSpec init;
    if (!j.is_object()) return init;
    std::string kind = str(j, "kind", "solve.init");
    if (kind == "gaussian") {
        init.kind = InitSpec::Kind::gaussian;
        init.width = num_or(j, "width", 0.0);
    } else if (kind == "random") {
        init.kind = InitSpec::Kind::random;
    } else if (kind == "custom") {
        init.kind = InitSpec::Kind::custom;
        init.field = read_prhf(str(j, "path", "solve.init"));
    } else {
        throw ConfigError("solve.init.kind: unknown kind '" + kind + "'");
    }
    return init;
}

}  // namespace

RunConfig load_run_config(const json& j, bool override_hypotheses) {
    RunConfig rc;
    const json& prob = require(j, "problem", "config");

    int dim = integer(prob, "dim", "problem");
    int n = integer(prob, "points_per_axis", "problem");
    double extent = num(prob, "extent", "problem");
    Lattice lat = make_lattice(dim, n, extent);

    double m = num(prob, "m", "problem");
    double theta = num(prob, "theta", "problem");
    KernelSpec kernel = parse_kernel(require(prob, "kernel", "problem"));

    const json& pot = require(prob, "potential", "problem");
    std::string pkind = str(pot, "kind", "problem.potential");

    Field V(lat);
    double V_inf = 0.0;
    bool constant = false;
    double alpha = 0.0;
    std::optional<V2Params> v2;
    json pot_echo;

    if (pkind == "constant") {
        alpha = num(pot, "alpha", "problem.potential");
        constant = true;
        V_inf = alpha;
        for (auto& v : V.values) v = alpha;
        pot_echo = {{"kind", "constant"}, {"alpha", alpha}};
    } else if (pkind == "well") {
        // V(y) = V_inf - amplitude * e^{-k_decay |y|}, the canonical family
        // satisfying hypothesis V2 when amplitude >= 1
        V_inf = num(pot, "V_inf", "problem.potential");
        double k = num(pot, "k_decay", "problem.potential");
        double amplitude = num_or(pot, "amplitude", 1.0);
        auto rad = torus_radius(lat);
        for (std::size_t i = 0; i < V.size(); ++i)
            V.values[i] = V_inf - amplitude * std::exp(-k * rad[i]);
        if (amplitude >= 1.0) v2 = V2Params{k, lat.spacing()};
        pot_echo = {{"kind", "well"}, {"V_inf", V_inf}, {"k_decay", k}, {"amplitude", amplitude}};
    } else if (pkind == "tabulated") {
        std::string path = str(pot, "path", "problem.potential");
        V = read_prhf(path);
        if (!(V.lattice == lat))
            throw ConfigError("problem.potential: tabulated potential lattice does not match");
        V_inf = num(pot, "V_inf", "problem.potential");
        pot_echo = {{"kind", "tabulated"}, {"path", path}, {"V_inf", V_inf}};
    } else {
        throw ConfigError("problem.potential.kind: unknown kind '" + pkind + "'");
    }

    if (prob.contains("V2_params")) {
        const json& vp = prob["V2_params"];
        v2 = V2Params{num(vp, "k_decay", "problem.V2_params"), num(vp, "R", "problem.V2_params")};
    }

    double vmin = *std::min_element(V.values.begin(), V.values.end());
    double v0_default = vmin >= 0.0 ? 0.5 * m : 0.5 * (-vmin + m);
    double V0 = num_or(prob, "V0", v0_default);

    rc.problem = make_problem(lat, m, theta, std::move(V), V0, V_inf, v2,
                              std::move(kernel), override_hypotheses);
    rc.problem.constant_potential = constant;
    rc.problem.alpha = alpha;

    if (j.contains("solve")) {
        const json& s = j["solve"];
        rc.solve.max_iters = s.contains("max_iters") ? integer(s, "max_iters", "solve")
                                                     : rc.solve.max_iters;
        rc.solve.grad_tol = num_or(s, "grad_tol", rc.solve.grad_tol);
        rc.solve.nehari_tol = num_or(s, "nehari_tol", rc.solve.nehari_tol);
        rc.solve.step_init = num_or(s, "step_init", rc.solve.step_init);
        rc.solve.backtrack_factor = num_or(s, "backtrack_factor", rc.solve.backtrack_factor);
        rc.solve.armijo_c = num_or(s, "armijo_c", rc.solve.armijo_c);
        rc.solve.precondition_shift = num_or(s, "precondition_shift", rc.solve.precondition_shift);
        if (s.contains("enforce_positivity")) {
            if (!s["enforce_positivity"].is_boolean())
                throw ConfigError("solve.enforce_positivity: expected a boolean");
            rc.solve.enforce_positivity = s["enforce_positivity"].get<bool>();
        }
        if (s.contains("init")) rc.solve.init = parse_init(s["init"]);
        if (s.contains("compare_to_limit")) {
            if (!s["compare_to_limit"].is_boolean())
                throw ConfigError("solve.compare_to_limit: expected a boolean");
            rc.compare_to_limit = s["compare_to_limit"].get<bool>();
        }
        rc.solve.decay_window_lo = num_or(s, "decay_window_lo", 0.0);
        rc.solve.decay_window_hi = num_or(s, "decay_window_hi", 0.0);
    }
    rc.solve.validate();

    if (j.contains("outputs")) {
        if (!j["outputs"].is_string()) throw ConfigError("outputs: expected a string");
        rc.outputs = j["outputs"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ConfigError("seed: expected an unsigned integer");
        rc.seed = j["seed"].get<uint64_t>();
    }
    rc.solve.seed = rc.seed;

    // effective configuration: explicit values for everything that shapes the run
    json init_echo;
    switch (rc.solve.init.kind) {
        case InitSpec::Kind::gaussian:
            init_echo = {{"kind", "gaussian"}, {"width", rc.solve.init.width}};
            break;
        case InitSpec::Kind::random:
            init_echo = {{"kind", "random"}};
            break;
        case InitSpec::Kind::custom:
            init_echo = {{"kind", "custom"},
                         {"path", j["solve"]["init"].value("path", std::string())}};
            break;
    }
    json kernel_echo;
    switch (rc.problem.kernel.kind) {
        case KernelSpec::Kind::yukawa:
            kernel_echo = {{"kind", "yukawa"}, {"mu", rc.problem.kernel.mu}};
            break;
        case KernelSpec::Kind::newton:
            kernel_echo = {{"kind", "newton"}, {"lambda", rc.problem.kernel.lambda}};
            break;
        case KernelSpec::Kind::gaussian:
            kernel_echo = {{"kind", "gaussian"},
                           {"s", rc.problem.kernel.s},
                           {"amplitude", rc.problem.kernel.amplitude}};
            break;
        case KernelSpec::Kind::tabulated:
            kernel_echo = {{"kind", "tabulated"},
                           {"path", prob["kernel"].value("path", std::string())}};
            break;
    }
    rc.echo = {
        {"problem",
         {{"dim", dim},
          {"points_per_axis", n},
          {"extent", extent},
          {"m", m},
          {"theta", theta},
          {"kernel", kernel_echo},
          {"potential", pot_echo},
          {"V0", V0}}},
        {"solve",
         {{"max_iters", rc.solve.max_iters},
          {"grad_tol", rc.solve.grad_tol},
          {"nehari_tol", rc.solve.nehari_tol},
          {"step_init", rc.solve.step_init},
          {"backtrack_factor", rc.solve.backtrack_factor},
          {"armijo_c", rc.solve.armijo_c},
          {"precondition_shift", rc.solve.precondition_shift},
          {"enforce_positivity", rc.solve.enforce_positivity},
          {"init", init_echo},
          {"compare_to_limit", rc.compare_to_limit}}},
        {"seed", rc.seed},
        {"outputs", rc.outputs},
    };
    if (rc.problem.v2)
        rc.echo["problem"]["V2_params"] = {{"k_decay", rc.problem.v2->k_decay},
                                           {"R", rc.problem.v2->R}};
    return rc;
}

RunConfig load_run_config_file(const std::string& path, bool override_hypotheses) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return load_run_config(j, override_hypotheses);
}

}  // namespace prh
