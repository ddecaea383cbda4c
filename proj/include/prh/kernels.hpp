#pragma once

#include <optional>
#include <string>

#include "prh/lattice.hpp"

namespace prh {

// Radial, nonnegative convolution kernels W for the Hartree term.
//   newton:    W(x) = |x|^-lambda, 0 < lambda < min(N, 2)
//   yukawa:    W(x) = e^{-mu |x|} / |x|, mu > 0 (N = 2 or 3)
//   gaussian:  W(x) = amplitude * e^{-|x|^2 / (2 s^2)}
//   tabulated: real-space samples on the problem lattice
struct KernelSpec {
    enum class Kind { newton, yukawa, gaussian, tabulated };
    Kind kind = Kind::yukawa;
    double lambda = 1.0;    // newton
    double mu = 1.0;        // yukawa
    double s = 1.0;         // gaussian width
    double amplitude = 1.0; // gaussian height
    std::optional<Field> table; // tabulated samples

    static KernelSpec newton(double lambda);
    static KernelSpec yukawa(double mu);
    static KernelSpec gaussian(double s, double amplitude);
    static KernelSpec tabulated(Field samples);

    std::string describe() const;
};

// Frequency-space multiplier of W on the lattice (continuum Fourier transform
// of W evaluated at the lattice wavenumbers).  Newton kernels use the
// mean-zero convention: the k = 0 entry is set to 0 because |x|^-lambda has no
// finite mean on the torus; this shifts the Hartree energy by a constant
// multiple of (integral |u|^theta)^2, uniform across runs on the same lattice.
// Tabulated kernels transform their samples; spurious negative multiplier
// entries are clipped to zero when above -1e-10 relative to the largest entry
// and rejected beyond that.
// Throws ConfigError for invalid parameters or unsupported (kind, dim).
std::vector<double> kernel_multiplier(const KernelSpec& spec, const Lattice& lat);

// Periodized convolution W * f via the multiplier.  Linear, translation-
// equivariant.  Throws ConfigError on lattice mismatch (tabulated kernels).
Field convolve(const KernelSpec& spec, const Field& f);
Field convolve_with_multiplier(const std::vector<double>& multiplier, const Field& f);

// L^r + L^infty split of W at radius 1: W1 = W restricted to |x| < 1,
// W2 = W restricted to |x| >= 1.  Closed forms for the built-in kernels;
// unavailable for tabulated kernels.
struct KernelSplit {
    double r = 2.0;
    double W1_norm_r = 0.0;  // |W1|_r
    double W2_norm_inf = 0.0; // |W2|_inf
};
std::optional<KernelSplit> declared_split(const KernelSpec& spec, double r, int dim);

// Hypothesis (W) bookkeeping: theta must satisfy 2 <= theta < 2N/(N-1) and an
// L^r + L^infty split of W must exist with
//   r > max(1, N / (N(2-theta) + theta))   and, for the singular kernels,
//   r < N / lambda_singular.
struct AssumptionWReport {
    bool theta_admissible = false;
    double theta_upper = 0.0;  // 2N/(N-1); infinity for N = 1
    double r_lower = 1.0;      // admissible r interval lower bound
    double r_upper = 0.0;      // upper bound; infinity when W is bounded
    bool split_exists = false;
    std::string message;
};
AssumptionWReport validate_assumption_W(const KernelSpec& spec, double theta, int dim);

}  // namespace prh
