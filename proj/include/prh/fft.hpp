#pragma once

#include "prh/lattice.hpp"

namespace prh {

// Discrete analogue of the continuum Fourier transform on the torus:
//   forward:  F(k) = cell_volume * sum_y f(y) e^{-i k.y}
//   inverse:  f(y) = (1/L^N)    * sum_k F(k) e^{+i k.y}
// With this normalization operator multipliers derived from the continuum
// transform apply verbatim, and Parseval reads
//   cell_volume * sum f g = (1/L^N) * sum F conj(G).
SpectralField forward_transform(const Field& f);

// Throws InvariantError if the coefficients are not conjugate-symmetric
// (imaginary residue above 1e-10 of the max modulus).
Field inverse_transform(const SpectralField& F);

// Multiply the spectrum of f by `multiplier` (one real value per wavenumber)
// and transform back.  The workhorse for all spectral operators.
Field apply_multiplier(const Field& f, const std::vector<double>& multiplier);

}  // namespace prh
