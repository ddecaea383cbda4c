#pragma once

#include <optional>

#include "prh/lattice.hpp"

namespace prh {

// Least-squares fit of log(radial mean |u|) against radius over a window.
struct DecayFit {
    double fitted_rate = 0.0;   // minus the fitted slope; positive for decay
    double intercept = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double r_squared = 0.0;
    double reference_rate = 0.0;
    bool within_tolerance = false; // |fitted - reference| <= 0.15 * reference
    int bins_used = 0;
};

// bins = 0 picks one bin per half grid spacing ((L/2) / n bins).  The window
// must cover at least 6 nonempty bins with positive means; otherwise throws
// ConfigError ("window too narrow" / "nonpositive bin means").
DecayFit fit_decay_rate(const Field& u, double r_min, double r_max,
                        double reference_rate, int bins = 0);

// Max over axis permutations and reflections, after recentring the field so
// its centre of mass sits on the origin cell, of ||u - u.g||_2 / ||u||_2.
double symmetry_deviation(const Field& u);

// Energy comparison against the constant-potential limit level.
struct LimitComparison {
    double E_inf = 0.0;
    double energy = 0.0;
    double margin = 0.0;   // E_inf - energy
    bool flagged = false;  // margin <= 0 for a potential lying strictly below V_inf
};
LimitComparison compare_to_limit(double energy_solved, double E_inf, bool expects_strict_margin);

}  // namespace prh
