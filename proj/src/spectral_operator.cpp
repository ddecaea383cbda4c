#include "prh/spectral_operator.hpp"

#include <cmath>

#include "prh/errors.hpp"
#include "prh/fft.hpp"

namespace prh {

std::vector<double> sqrt_op_multiplier(const Lattice& lat, double m) {
    if (!(m > 0.0)) throw ConfigError("operator mass m must be positive");
    auto k2 = wavenumber_sq(lat);
    for (auto& v : k2) v = std::sqrt(m * m + v);
    return k2;
}

std::vector<double> schroedinger_multiplier(const Lattice& lat, double m) {
    if (!(m > 0.0)) throw ConfigError("operator mass m must be positive");
    auto k2 = wavenumber_sq(lat);
    for (auto& v : k2) v = m * m + v;
    return k2;
}

Field apply_sqrt_op(const Field& f, double m) {
    return apply_multiplier(f, sqrt_op_multiplier(f.lattice, m));
}

double quadratic_form(const Field& f, double m) {
    SpectralField F = forward_transform(f);
    auto mult = sqrt_op_multiplier(f.lattice, m);
    double s = 0.0;
    for (std::size_t i = 0; i < mult.size(); ++i) s += mult[i] * std::norm(F.coefficients[i]);
    return s / f.lattice.volume();
}

double quadratic_form(const Field& f, const Field& g, double m) {
    if (!(f.lattice == g.lattice)) throw InvariantError("quadratic_form: lattice mismatch");
    SpectralField F = forward_transform(f);
    SpectralField G = forward_transform(g);
    auto mult = sqrt_op_multiplier(f.lattice, m);
    double s = 0.0;
    for (std::size_t i = 0; i < mult.size(); ++i)
        s += mult[i] * (F.coefficients[i] * std::conj(G.coefficients[i])).real();
    return s / f.lattice.volume();
}

Field precondition(const Field& g, double m, double shift) {
    if (shift < 0.0) throw ConfigError("precondition shift must be >= 0");
    auto mult = sqrt_op_multiplier(g.lattice, m);
    for (auto& v : mult) v = 1.0 / (v + shift);
    return apply_multiplier(g, mult);
}

}  // namespace prh
