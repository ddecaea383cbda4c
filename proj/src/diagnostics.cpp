#include "prh/diagnostics.hpp"

#include <cmath>
#include <vector>

#include "prh/errors.hpp"

namespace prh {

DecayFit fit_decay_rate(const Field& u, double r_min, double r_max,
                        double reference_rate, int bins) {
    if (!(r_min < r_max) || r_max > u.lattice.extent / 2.0 + 1e-12)
        throw ConfigError("fit_decay_rate: window must satisfy r_min < r_max <= extent/2");
    if (bins <= 0) bins = u.lattice.points_per_axis;

    auto prof = radial_profile(u, bins);
    std::vector<double> xs, ys;
    for (const auto& b : prof) {
        if (b.radius < r_min || b.radius > r_max || b.count == 0) continue;
        if (!(b.mean_abs > 0.0))
            throw ConfigError("fit_decay_rate: nonpositive bin mean inside the window");
        xs.push_back(b.radius);
        ys.push_back(std::log(b.mean_abs));
    }
    if (xs.size() < 6) throw ConfigError("fit_decay_rate: window too narrow (< 6 bins)");

    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0.0, ss_tot = 0.0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = slope * xs[i] + intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }

    DecayFit out;
    out.fitted_rate = -slope;
    out.intercept = intercept;
    out.window_lo = r_min;
    out.window_hi = r_max;
    out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    out.reference_rate = reference_rate;
    out.within_tolerance = std::abs(out.fitted_rate - reference_rate) <= 0.15 * reference_rate;
    out.bins_used = static_cast<int>(n);
    return out;
}

double symmetry_deviation(const Field& u) {
    auto com = center_of_mass(u);
    const double h = u.lattice.spacing();
    const int n = u.lattice.points_per_axis;
    std::array<int, 3> center{0, 0, 0};
    for (int d = 0; d < u.lattice.dim; ++d)
        center[d] = static_cast<int>(std::lround(com[d] / h)) % n;
    return octahedral_deviation(recentre(u, center));
}

LimitComparison compare_to_limit(double energy_solved, double E_inf, bool expects_strict_margin) {
    LimitComparison out;
    out.E_inf = E_inf;
    out.energy = energy_solved;
    out.margin = E_inf - energy_solved;
    out.flagged = expects_strict_margin && !(out.margin > 0.0);
    return out;
}

}  // namespace prh
