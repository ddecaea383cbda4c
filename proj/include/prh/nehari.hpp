#pragma once

#include "prh/functional.hpp"

namespace prh {

// A point on the Nehari manifold {u != 0 : <I'(u), u> = A - B = 0}.
struct NehariState {
    Field u;
    double t_scale = 1.0;        // factor applied to reach the manifold
    double nehari_residual = 0.0; // A - B at the projected point
};

// The unique maximizer of t -> I(t u) on (0, inf):  t = (A/B)^(1/(2 theta - 2)).
// Throws DegenerateInit when D(u) <= 0 (no projection exists).
double nehari_scale(const ProblemSpec& spec, const Field& u);

// Scale u onto the manifold.  Ray-invariant: projecting c*u (c > 0) gives the
// same field.  On the manifold I(u) = ((theta-1)/(2 theta)) * D(u).
NehariState project_to_nehari(const ProblemSpec& spec, const Field& u);

}  // namespace prh
