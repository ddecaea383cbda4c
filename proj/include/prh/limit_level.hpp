#pragma once

#include "prh/solver.hpp"

namespace prh {

// Ground-state level E_alpha of the constant-potential problem (V = alpha)
// on the same lattice/kernel/theta/mass as `base`.  Requires alpha > -m.
// E_alpha is positive and nondecreasing in alpha.
struct LimitLevelResult {
    double alpha = 0.0;
    double E_alpha = 0.0;
    SolveReport report;
};
LimitLevelResult limit_level(double alpha, const ProblemSpec& base, const SolveConfig& config);

}  // namespace prh
