#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prh/diagnostics.hpp"
#include "prh/functional.hpp"

namespace prh {

struct InitSpec {
    enum class Kind { gaussian, custom, random };
    Kind kind = Kind::gaussian;
    double width = 0.0;          // gaussian; 0 picks extent/8
    std::optional<Field> field;  // custom
    // random draws from 1 + 0.5 * N(0,1) via a deterministic generator on `seed`
};

struct SolveConfig {
    int max_iters = 5000;
    double grad_tol = 1e-7;      // on ||I'(u)||_2 / ||sqrt_op u||_2
    double nehari_tol = 1e-10;   // on |A - B| / max(A, B)
    double step_init = 1.0;
    double backtrack_factor = 0.5;
    double armijo_c = 1e-4;
    double precondition_shift = 1.0;
    bool enforce_positivity = true;
    InitSpec init;
    uint64_t seed = 0;
    // diagnostics
    bool with_diagnostics = true;
    double decay_window_lo = 0.0; // 0 picks extent/8
    double decay_window_hi = 0.0; // 0 picks extent/4

    void validate() const; // throws ConfigError on out-of-range entries
};

enum class SolveStatus { converged, max_iters, line_search_stall };
std::string to_string(SolveStatus s);

struct TraceEntry {
    int iter = 0;
    double energy = 0.0;
    double grad_residual = 0.0;
};

struct SolveReport {
    Field u;
    double energy = 0.0;
    double grad_residual = 0.0;   // ||I'(u*)||_2 / ||sqrt_op u*||_2
    double nehari_residual = 0.0; // |A - B| / max(A, B)
    int iterations = 0;
    SolveStatus status = SolveStatus::max_iters;
    std::vector<TraceEntry> trace;
    uint64_t seed = 0;

    double min_value = 0.0;
    double max_value = 0.0;
    std::array<double, 3> center_of_mass{0.0, 0.0, 0.0};
    double symmetry_dev = 0.0;
    std::optional<DecayFit> decay;

    std::optional<double> limit_level_E_inf;
    std::optional<double> comparison_margin; // E_inf - energy
};

// Nehari-projected preconditioned descent with Armijo backtracking:
//   candidate(eta) = project_to_nehari(|u - eta * precondition(I'(u))|)
// (absolute value applied only when enforce_positivity, before projection so
// each iterate is simultaneously nonnegative and on the manifold).
// Accepted steps never increase the energy.  Throws DegenerateInit when the
// initial point has D <= 0; non-convergence is reported via status, with the
// best iterate attached.
SolveReport solve_ground_state(const ProblemSpec& spec, const SolveConfig& config);

// Independent verification oracle: plain fixed-step gradient flow with Nehari
// reprojection after every step (no preconditioning, no line search).  When
// enforce_positivity is set the flow takes |.| after each step, the discrete
// counterpart of the positivity-preserving imaginary-time flow.  Much slower;
// used to cross-check energies.
struct FlowResult {
    Field u;
    double energy = 0.0;
    double grad_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};
FlowResult flow_ground_state(const ProblemSpec& spec, double dt, double grad_tol,
                             int max_iters, bool enforce_positivity = false);

// Order-preserving batch of independent solves; entries failing with an
// exception are recorded as errors and do not abort the batch.
struct SweepEntry {
    std::optional<SolveReport> report;
    std::string error;
};
std::vector<SweepEntry> sweep(const std::vector<ProblemSpec>& specs,
                              const SolveConfig& config, int threads = 1);

}  // namespace prh
