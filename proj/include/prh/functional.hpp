#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prh/kernels.hpp"
#include "prh/lattice.hpp"

namespace prh {

// Parameters of the decay hypothesis V(y) <= V_inf - e^{-k_decay |y|} for |y| >= R.
struct V2Params {
    double k_decay = 0.0; // must lie in (0, 2m)
    double R = 0.0;       // must be > 0
};

// The full variational problem on one lattice:
//   energy  I(u) = 1/2 <u, sqrt(-Lap + m^2) u> + 1/2 int V u^2 - 1/(2 theta) D(u)
//   D(u)    = int (W * |u|^theta) |u|^theta
//   gradient I'(u) = sqrt(-Lap + m^2) u + V u - (W * |u|^theta) |u|^(theta-2) u
struct ProblemSpec {
    Lattice lattice;
    double m = 1.0;
    double theta = 2.0;
    Field V;                       // always stored pointwise
    bool constant_potential = false;
    double alpha = 0.0;            // the constant, when constant_potential
    double V0 = 0.0;               // hypothesis V1 constant: V + V0 >= 0, 0 < V0 < m
    double V_inf = 0.0;            // asymptotic level used for energy comparisons
    std::optional<V2Params> v2;
    KernelSpec kernel;
    std::vector<double> kernel_mult; // cached multiplier on `lattice`
    bool hypotheses_overridden = false;
    std::vector<std::string> warnings;
};

// Build and validate a problem.  Hypotheses checked:
//   V1: V + V0 >= 0 everywhere and V0 in (0, m)
//   V2 (when v2 given): k_decay in (0, 2m), R > 0, and
//       V(y) <= V_inf - e^{-k_decay |y|} at grid points with |y| >= R
//   W:  theta in [2, 2N/(N-1)) and an admissible L^r + L^inf split exists
// Violations throw ConfigError unless override_hypotheses, which downgrades
// them to warnings and sets hypotheses_overridden.  N < 3 always produces a
// warning: the decay/comparison theory is formulated for N = 3.
ProblemSpec make_problem(const Lattice& lat, double m, double theta, Field V,
                         double V0, double V_inf, std::optional<V2Params> v2,
                         KernelSpec kernel, bool override_hypotheses = false);

// Constant-potential convenience: V = alpha everywhere, V_inf = alpha,
// V0 chosen automatically to satisfy V1 when possible.
ProblemSpec make_problem_constant(const Lattice& lat, double m, double theta,
                                  double alpha, KernelSpec kernel,
                                  bool override_hypotheses = false);

// Replace the potential of `spec` by the constant alpha (same lattice,
// kernel, theta, mass) — the limit problem of an inhomogeneous run.
ProblemSpec with_constant_potential(const ProblemSpec& spec, double alpha);

// D(u) >= 0 for the built-in kernels except mean-zero newton, where slightly
// negative values are possible and reported as-is (never clamped).
double hartree_term(const ProblemSpec& spec, const Field& u);

double energy(const ProblemSpec& spec, const Field& u);

Field gradient(const ProblemSpec& spec, const Field& u);

// I(t u) = (A/2) t^2 - (B/(2 theta)) t^(2 theta):
//   A = <u, sqrt(-Lap+m^2) u> + int V u^2,   B = D(u).
struct RayCoefficients {
    double A = 0.0;
    double B = 0.0;
};
RayCoefficients ray_coefficients(const ProblemSpec& spec, const Field& u);

// Convolution estimate D(u) <= |W1|_r |u|_p^(2 theta) + |W2|_inf |u|_theta^(2 theta)
// with p = 2 r theta / (2r - 1), using the declared split at radius 1.
// Throws ConfigError when no split is declared for the kernel (tabulated).
struct HlsReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double r = 0.0;
    double W1_norm_r = 0.0;
    double W2_norm_inf = 0.0;
    bool holds = false;
};
HlsReport hls_bound_check(const ProblemSpec& spec, const Field& u, double r = 2.0);

}  // namespace prh
