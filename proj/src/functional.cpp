#include "prh/functional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prh/errors.hpp"
#include "prh/fft.hpp"
#include "prh/spectral_operator.hpp"

namespace prh {

namespace {

void fail_or_warn(ProblemSpec& spec, bool override_hypotheses, const std::string& msg) {
    if (!override_hypotheses) throw ConfigError(msg);
    spec.warnings.push_back("hypothesis override: " + msg);
    spec.hypotheses_overridden = true;
}

Field abs_pow(const Field& u, double theta) {
    Field out(u.lattice);
    if (theta == 2.0) {
        for (std::size_t i = 0; i < u.size(); ++i) out.values[i] = u.values[i] * u.values[i];
    } else {
        for (std::size_t i = 0; i < u.size(); ++i)
            out.values[i] = std::pow(std::abs(u.values[i]), theta);
    }
    return out;
}

// |u|^(theta-2) u, with value 0 at u = 0 for theta > 2.
Field signed_pow(const Field& u, double theta) {
    Field out(u.lattice);
    if (theta == 2.0) {
        out.values = u.values;
    } else {
        for (std::size_t i = 0; i < u.size(); ++i) {
            double v = u.values[i];
            out.values[i] = v == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(v), theta - 1.0), v);
        }
    }
    return out;
}

}  // namespace

ProblemSpec make_problem(const Lattice& lat, double m, double theta, Field V,
                         double V0, double V_inf, std::optional<V2Params> v2,
                         KernelSpec kernel, bool override_hypotheses) {
    if (!(m > 0.0)) throw ConfigError("mass m must be positive");
    if (!(theta >= 2.0)) throw ConfigError("theta must be >= 2");
    if (V.values.size() != lat.size() || !(V.lattice == lat))
        throw InvariantError("potential field does not live on the problem lattice");

    ProblemSpec spec;
    spec.lattice = lat;
    spec.m = m;
    spec.theta = theta;
    spec.V = std::move(V);
    spec.V0 = V0;
    spec.V_inf = V_inf;
    spec.v2 = v2;
    spec.kernel = std::move(kernel);

    if (lat.dim < 3)
        spec.warnings.push_back("dim < 3 is outside the decay/comparison hypotheses; "
                                "results are a desk-scale convenience");

    // hypothesis V1
    double vmin = *std::min_element(spec.V.values.begin(), spec.V.values.end());
    if (!(V0 > 0.0 && V0 < m)) {
        std::ostringstream os;
        os << "hypothesis V1 requires V0 in (0, m); got V0 = " << V0 << ", m = " << m;
        fail_or_warn(spec, override_hypotheses, os.str());
    }
    if (vmin + V0 < 0.0) {
        std::ostringstream os;
        os << "hypothesis V1 requires V + V0 >= 0 everywhere; min V = " << vmin
           << " with V0 = " << V0;
        fail_or_warn(spec, override_hypotheses, os.str());
    }

    // hypothesis V2 (optional)
    if (spec.v2) {
        if (!(spec.v2->k_decay > 0.0 && spec.v2->k_decay < 2.0 * m)) {
            std::ostringstream os;
            os << "hypothesis V2 requires k_decay in (0, 2m); got " << spec.v2->k_decay;
            fail_or_warn(spec, override_hypotheses, os.str());
        }
        if (!(spec.v2->R > 0.0))
            fail_or_warn(spec, override_hypotheses, "hypothesis V2 requires R > 0");
        auto rad = torus_radius(lat);
        for (std::size_t i = 0; i < rad.size(); ++i) {
            if (rad[i] < spec.v2->R) continue;
            double bound = V_inf - std::exp(-spec.v2->k_decay * rad[i]);
            if (spec.V.values[i] > bound + 1e-12) {
                std::ostringstream os;
                os << "hypothesis V2 fails at |y| = " << rad[i] << ": V = " << spec.V.values[i]
                   << " > V_inf - e^{-k|y|} = " << bound;
                fail_or_warn(spec, override_hypotheses, os.str());
                break;
            }
        }
    }

    // hypothesis W
    auto wrep = validate_assumption_W(spec.kernel, theta, lat.dim);
    if (!wrep.theta_admissible || !wrep.split_exists)
        fail_or_warn(spec, override_hypotheses, "hypothesis W fails: " + wrep.message);

    if (spec.kernel.kind == KernelSpec::Kind::newton)
        spec.warnings.push_back("newton kernel uses the mean-zero convention: the k = 0 "
                                "multiplier is 0, shifting the Hartree energy by a constant "
                                "multiple of (integral |u|^theta)^2 on this lattice");

    spec.kernel_mult = kernel_multiplier(spec.kernel, lat);
    return spec;
}

ProblemSpec make_problem_constant(const Lattice& lat, double m, double theta,
                                  double alpha, KernelSpec kernel,
                                  bool override_hypotheses) {
    Field V(lat, alpha);
    // any V0 in (max(0, -alpha), m) satisfies V1; fail only when that window is empty
    double V0 = alpha >= 0.0 ? 0.5 * m : 0.5 * (-alpha + m);
    ProblemSpec spec = make_problem(lat, m, theta, std::move(V), V0, alpha, std::nullopt,
                                    std::move(kernel), override_hypotheses);
    spec.constant_potential = true;
    spec.alpha = alpha;
    return spec;
}

ProblemSpec with_constant_potential(const ProblemSpec& spec, double alpha) {
    ProblemSpec out = make_problem_constant(spec.lattice, spec.m, spec.theta, alpha,
                                            spec.kernel, spec.hypotheses_overridden);
    return out;
}

double hartree_term(const ProblemSpec& spec, const Field& u) {
    Field p = abs_pow(u, spec.theta);
    Field conv = convolve_with_multiplier(spec.kernel_mult, p);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += conv.values[i] * p.values[i];
    return spec.lattice.cell_volume * s;
}

double energy(const ProblemSpec& spec, const Field& u) {
    double q = quadratic_form(u, spec.m);
    double pot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        pot += spec.V.values[i] * u.values[i] * u.values[i];
    pot *= spec.lattice.cell_volume;
    return 0.5 * q + 0.5 * pot - hartree_term(spec, u) / (2.0 * spec.theta);
}

Field gradient(const ProblemSpec& spec, const Field& u) {
    Field g = apply_sqrt_op(u, spec.m);
    Field p = abs_pow(u, spec.theta);
    Field conv = convolve_with_multiplier(spec.kernel_mult, p);
    Field sp = signed_pow(u, spec.theta);
    for (std::size_t i = 0; i < u.size(); ++i)
        g.values[i] += spec.V.values[i] * u.values[i] - conv.values[i] * sp.values[i];
    return g;
}

RayCoefficients ray_coefficients(const ProblemSpec& spec, const Field& u) {
    double nrm = 0.0;
    for (double v : u.values) nrm += v * v;
    if (nrm == 0.0) throw InvariantError("ray_coefficients: zero field");
    RayCoefficients rc;
    double pot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        pot += spec.V.values[i] * u.values[i] * u.values[i];
    rc.A = quadratic_form(u, spec.m) + spec.lattice.cell_volume * pot;
    rc.B = hartree_term(spec, u);
    return rc;
}

HlsReport hls_bound_check(const ProblemSpec& spec, const Field& u, double r) {
    auto split = declared_split(spec.kernel, r, spec.lattice.dim);
    if (!split)
        throw ConfigError("hls_bound_check: no declared L^r + L^inf split for kernel " +
                          spec.kernel.describe() + " at r = " + std::to_string(r));
    HlsReport rep;
    rep.r = r;
    rep.W1_norm_r = split->W1_norm_r;
    rep.W2_norm_inf = split->W2_norm_inf;
    rep.lhs = hartree_term(spec, u);
    const double th = spec.theta;
    const double p = 2.0 * r * th / (2.0 * r - 1.0);
    rep.rhs = split->W1_norm_r * std::pow(lp_norm(u, p), 2.0 * th) +
              split->W2_norm_inf * std::pow(lp_norm(u, th), 2.0 * th);
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-8);
    return rep;
}

}  // namespace prh
