#include "prh/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "prh/errors.hpp"
#include "prh/nehari.hpp"
#include "prh/rng.hpp"
#include "prh/spectral_operator.hpp"

namespace prh {

namespace {

Field initial_field(const ProblemSpec& spec, const SolveConfig& cfg) {
    switch (cfg.init.kind) {
        case InitSpec::Kind::custom: {
            if (!cfg.init.field) throw ConfigError("custom init requires a field");
            if (!(cfg.init.field->lattice == spec.lattice))
                throw ConfigError("custom init field lattice does not match the problem");
            return *cfg.init.field;
        }
        case InitSpec::Kind::random: {
            NormalSampler normal(cfg.seed);
            Field u(spec.lattice);
            for (auto& v : u.values) v = 1.0 + 0.5 * normal();
            return u;
        }
        case InitSpec::Kind::gaussian:
        default: {
            double w = cfg.init.width > 0.0 ? cfg.init.width : spec.lattice.extent / 8.0;
            Field u(spec.lattice);
            auto rad = torus_radius(spec.lattice);
            for (std::size_t i = 0; i < u.size(); ++i)
                u.values[i] = std::exp(-rad[i] * rad[i] / (2.0 * w * w));
            return u;
        }
    }
}

double rel_grad_residual(const ProblemSpec& spec, const Field& u, const Field& g) {
    double gn = lp_norm(g, 2.0);
    double tn = lp_norm(apply_sqrt_op(u, spec.m), 2.0);
    return gn / tn;
}

void attach_diagnostics(SolveReport& rep, const ProblemSpec& spec, const SolveConfig& cfg) {
    rep.min_value = *std::min_element(rep.u.values.begin(), rep.u.values.end());
    rep.max_value = *std::max_element(rep.u.values.begin(), rep.u.values.end());
    rep.center_of_mass = center_of_mass(rep.u);
    if (!cfg.with_diagnostics) return;
    rep.symmetry_dev = symmetry_deviation(rep.u);
    double lo = cfg.decay_window_lo > 0.0 ? cfg.decay_window_lo : spec.lattice.extent / 8.0;
    double hi = cfg.decay_window_hi > 0.0 ? cfg.decay_window_hi : spec.lattice.extent / 4.0;
    // asymptotic reference: m for positive asymptotic potential level, m + V_inf otherwise
    double ref = spec.V_inf > 0.0 ? spec.m : spec.m + spec.V_inf;
    try {
        rep.decay = fit_decay_rate(rep.u, lo, hi, ref);
    } catch (const ConfigError&) {
        rep.decay.reset(); // window unusable on this lattice; leave unset
    }
}

}  // namespace

void SolveConfig::validate() const {
    if (max_iters < 1) throw ConfigError("solve.max_iters must be >= 1");
    if (!(grad_tol > 0.0)) throw ConfigError("solve.grad_tol must be > 0");
    if (!(nehari_tol > 0.0)) throw ConfigError("solve.nehari_tol must be > 0");
    if (!(step_init > 0.0)) throw ConfigError("solve.step_init must be > 0");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
        throw ConfigError("solve.backtrack_factor must lie in (0, 1)");
    if (!(armijo_c > 0.0 && armijo_c < 1.0))
        throw ConfigError("solve.armijo_c must lie in (0, 1)");
    if (precondition_shift < 0.0) throw ConfigError("solve.precondition_shift must be >= 0");
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max_iters";
        case SolveStatus::line_search_stall: return "line_search_stall";
    }
    return "unknown";
}

SolveReport solve_ground_state(const ProblemSpec& spec, const SolveConfig& config) {
    config.validate();

    Field u0 = initial_field(spec, config);
    if (config.enforce_positivity)
        for (auto& v : u0.values) v = std::abs(v);
    NehariState st = project_to_nehari(spec, u0); // DegenerateInit propagates
    Field u = std::move(st.u);
    double E = energy(spec, u);

    SolveReport rep;
    rep.seed = config.seed;
    rep.status = SolveStatus::max_iters;
    rep.iterations = 0;

    for (int it = 0; it < config.max_iters; ++it) {
        Field g = gradient(spec, u);
        double gres = rel_grad_residual(spec, u, g);
        RayCoefficients rc = ray_coefficients(spec, u);
        double nres = std::abs(rc.A - rc.B) / std::max(rc.A, rc.B);
        rep.trace.push_back({it, E, gres});
        if (gres <= config.grad_tol && nres <= config.nehari_tol) {
            rep.status = SolveStatus::converged;
            rep.iterations = it;
            break;
        }

        Field gp = precondition(g, spec.m, config.precondition_shift);

        double eta = config.step_init;
        bool accepted = false;
        Field cand;
        double Ec = 0.0;
        while (eta >= 1e-14) {
            cand = u;
            for (std::size_t i = 0; i < cand.size(); ++i) {
                cand.values[i] -= eta * gp.values[i];
                if (config.enforce_positivity) cand.values[i] = std::abs(cand.values[i]);
            }
            NehariState cst = project_to_nehari(spec, cand);
            cand = std::move(cst.u);
            Ec = energy(spec, cand);
            // Armijo along the realized arc: sufficient decrease is measured
            // against <I'(u), u - cand>, the first-order drop over the actual
            // displacement.  Through the positivity fold this is the correct
            // decrease model (the free-step slope <I'(u), gp> overestimates it
            // and stalls prematurely at the cone boundary); away from the fold
            // the two agree to first order.
            double decr = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                decr += g.values[i] * (u.values[i] - cand.values[i]);
            decr *= spec.lattice.cell_volume;
            if (decr > 0.0 && Ec <= E - config.armijo_c * decr) {
                accepted = true;
                break;
            }
            eta *= config.backtrack_factor;
        }
        if (!accepted) {
            rep.status = SolveStatus::line_search_stall;
            rep.iterations = it;
            break;
        }
        u = std::move(cand);
        E = Ec;
        rep.iterations = it + 1;
    }

    Field g = gradient(spec, u);
    rep.grad_residual = rel_grad_residual(spec, u, g);
    RayCoefficients rc = ray_coefficients(spec, u);
    rep.nehari_residual = std::abs(rc.A - rc.B) / std::max(rc.A, rc.B);
    rep.energy = energy(spec, u);
    rep.trace.push_back({rep.iterations, rep.energy, rep.grad_residual});
    rep.u = std::move(u);
    attach_diagnostics(rep, spec, config);
    return rep;
}

FlowResult flow_ground_state(const ProblemSpec& spec, double dt, double grad_tol,
                             int max_iters, bool enforce_positivity) {
    if (!(dt > 0.0)) throw ConfigError("flow step dt must be > 0");
    SolveConfig cfg; // default gaussian init, as in the main solver
    Field u = initial_field(spec, cfg);
    NehariState st = project_to_nehari(spec, u);
    u = std::move(st.u);

    FlowResult res;
    for (int it = 0; it < max_iters; ++it) {
        Field g = gradient(spec, u);
        double gres = rel_grad_residual(spec, u, g);
        if (gres <= grad_tol) {
            res.converged = true;
            res.iterations = it;
            break;
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            u.values[i] -= dt * g.values[i];
            if (enforce_positivity) u.values[i] = std::abs(u.values[i]);
        }
        NehariState pst = project_to_nehari(spec, u);
        u = std::move(pst.u);
        res.iterations = it + 1;
    }
    Field g = gradient(spec, u);
    res.grad_residual = rel_grad_residual(spec, u, g);
    res.energy = energy(spec, u);
    res.u = std::move(u);
    return res;
}

std::vector<SweepEntry> sweep(const std::vector<ProblemSpec>& specs,
                              const SolveConfig& config, int threads) {
    if (specs.empty()) throw ConfigError("sweep requires a nonempty list of problems");
    if (threads < 1) threads = 1;
    std::vector<SweepEntry> out(specs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) return;
            try {
                out[i].report = solve_ground_state(specs[i], config);
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::future<void>> futs;
        for (int t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }
    return out;
}

}  // namespace prh
