#include "prh/limit_level.hpp"

#include "prh/errors.hpp"

namespace prh {

LimitLevelResult limit_level(double alpha, const ProblemSpec& base, const SolveConfig& config) {
    if (!(alpha > -base.m))
        throw ConfigError("limit_level requires alpha > -m");
    ProblemSpec spec = with_constant_potential(base, alpha);
    LimitLevelResult out;
    out.alpha = alpha;
    out.report = solve_ground_state(spec, config);
    out.E_alpha = out.report.energy;
    return out;
}

}  // namespace prh
