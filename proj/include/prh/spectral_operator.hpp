#pragma once

#include "prh/lattice.hpp"

namespace prh {

// Multiplier of sqrt(-Laplacian + m^2): value sqrt(m^2 + |k|^2) at wavenumber k.
// Minimum m at k = 0.  Throws ConfigError for m <= 0.
std::vector<double> sqrt_op_multiplier(const Lattice& lat, double m);

// Multiplier of (-Laplacian + m^2): value m^2 + |k|^2.
std::vector<double> schroedinger_multiplier(const Lattice& lat, double m);

// Apply sqrt(-Laplacian + m^2) spectrally.
Field apply_sqrt_op(const Field& f, double m);

// Quadratic form <f, sqrt(-Laplacian + m^2) f> = sum_k sqrt(m^2+|k|^2) |F(k)|^2 / L^N.
// Always >= m * |f|_2^2.
double quadratic_form(const Field& f, double m);

// Symmetric bilinear extension <f, sqrt(-Laplacian + m^2) g>.
double quadratic_form(const Field& f, const Field& g, double m);

// Divide the spectrum by sqrt(m^2 + |k|^2) + shift.  Exact inverse of
// apply_sqrt_op(f) + shift*f.  Throws ConfigError for shift < 0.
Field precondition(const Field& g, double m, double shift);

}  // namespace prh
