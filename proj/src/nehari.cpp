#include "prh/nehari.hpp"

#include <cmath>

#include "prh/errors.hpp"

namespace prh {

double nehari_scale(const ProblemSpec& spec, const Field& u) {
    RayCoefficients rc = ray_coefficients(spec, u);
    if (!(rc.B > 0.0))
        throw DegenerateInit("nehari_scale: Hartree term D(u) <= 0; no ray maximum exists");
    return std::pow(rc.A / rc.B, 1.0 / (2.0 * spec.theta - 2.0));
}

NehariState project_to_nehari(const ProblemSpec& spec, const Field& u) {
    NehariState st;
    st.t_scale = nehari_scale(spec, u);
    st.u = u;
    for (auto& v : st.u.values) v *= st.t_scale;
    RayCoefficients rc = ray_coefficients(spec, st.u);
    st.nehari_residual = rc.A - rc.B;
    return st;
}

}  // namespace prh
