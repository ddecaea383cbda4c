#include "prh/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "prh/errors.hpp"
#include "prh/fft.hpp"

namespace prh {

namespace {

constexpr double kPi = std::numbers::pi;

double surface_area_unit_sphere(int dim) {
    switch (dim) {
        case 1: return 2.0;        // two endpoints
        case 2: return 2.0 * kPi;  // circle
        case 3: return 4.0 * kPi;  // sphere
        default: throw InvariantError("unsupported dimension");
    }
}

void check_params(const KernelSpec& spec, int dim) {
    switch (spec.kind) {
        case KernelSpec::Kind::newton:
            if (!(spec.lambda > 0.0) || !(spec.lambda < std::min(dim, 2)))
                throw ConfigError("newton kernel requires 0 < lambda < min(N, 2)");
            break;
        case KernelSpec::Kind::yukawa:
            if (!(spec.mu > 0.0)) throw ConfigError("yukawa kernel requires mu > 0");
            if (dim == 1)
                throw ConfigError("yukawa kernel e^{-mu|x|}/|x| is not locally integrable for N = 1");
            break;
        case KernelSpec::Kind::gaussian:
            if (!(spec.s > 0.0) || !(spec.amplitude > 0.0))
                throw ConfigError("gaussian kernel requires s > 0 and amplitude > 0");
            break;
        case KernelSpec::Kind::tabulated:
            if (!spec.table) throw ConfigError("tabulated kernel requires samples");
            break;
    }
}

}  // namespace

KernelSpec KernelSpec::newton(double lambda) {
    KernelSpec s;
    s.kind = Kind::newton;
    s.lambda = lambda;
    return s;
}

KernelSpec KernelSpec::yukawa(double mu) {
    KernelSpec s;
    s.kind = Kind::yukawa;
    s.mu = mu;
    return s;
}

KernelSpec KernelSpec::gaussian(double w, double amplitude) {
    KernelSpec s;
    s.kind = Kind::gaussian;
    s.s = w;
    s.amplitude = amplitude;
    return s;
}

KernelSpec KernelSpec::tabulated(Field samples) {
    KernelSpec s;
    s.kind = Kind::tabulated;
    s.table = std::move(samples);
    return s;
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::newton: os << "newton(lambda=" << lambda << ")"; break;
        case Kind::yukawa: os << "yukawa(mu=" << mu << ")"; break;
        case Kind::gaussian: os << "gaussian(s=" << s << ", amplitude=" << amplitude << ")"; break;
        case Kind::tabulated: os << "tabulated"; break;
    }
    return os.str();
}

std::vector<double> kernel_multiplier(const KernelSpec& spec, const Lattice& lat) {
    check_params(spec, lat.dim);
    const auto k2 = wavenumber_sq(lat);
    std::vector<double> out(k2.size());

    switch (spec.kind) {
        case KernelSpec::Kind::yukawa: {
            const double mu2 = spec.mu * spec.mu;
            if (lat.dim == 3) {
                for (std::size_t i = 0; i < out.size(); ++i) out[i] = 4.0 * kPi / (mu2 + k2[i]);
            } else { // dim == 2
                for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * kPi / std::sqrt(mu2 + k2[i]);
            }
            break;
        }
        case KernelSpec::Kind::newton: {
            const int N = lat.dim;
            const double lam = spec.lambda;
            const double c = std::pow(2.0, N - lam) * std::pow(kPi, N / 2.0) *
                             std::tgamma((N - lam) / 2.0) / std::tgamma(lam / 2.0);
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = k2[i] > 0.0 ? c * std::pow(k2[i], (lam - N) / 2.0) : 0.0;
            break;
        }
        case KernelSpec::Kind::gaussian: {
            const double s2 = spec.s * spec.s;
            const double c = spec.amplitude * std::pow(2.0 * kPi * s2, lat.dim / 2.0);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * std::exp(-0.5 * s2 * k2[i]);
            break;
        }
        case KernelSpec::Kind::tabulated: {
            const Field& W = *spec.table;
            if (!(W.lattice == lat))
                throw ConfigError("tabulated kernel lattice does not match problem lattice");
            double mx = 0.0;
            for (double v : W.values) mx = std::max(mx, std::abs(v));
            double mn = 0.0;
            for (double v : W.values) mn = std::min(mn, v);
            if (mn < -1e-12 * mx) throw ConfigError("tabulated kernel must be nonnegative");
            if (octahedral_deviation(W) > 1e-8)
                throw ConfigError("tabulated kernel fails the radial-symmetry check (deviation > 1e-8)");
            SpectralField F = forward_transform(W);
            double mmax = 0.0;
            for (const auto& c : F.coefficients) mmax = std::max(mmax, std::abs(c.real()));
            const double clip = -1e-10 * mmax;
            for (std::size_t i = 0; i < out.size(); ++i) {
                double v = F.coefficients[i].real();
                if (v < clip)
                    throw ConfigError("tabulated kernel multiplier has negative entries beyond tolerance");
                out[i] = std::max(v, 0.0);
            }
            break;
        }
    }
    return out;
}

Field convolve(const KernelSpec& spec, const Field& f) {
    return convolve_with_multiplier(kernel_multiplier(spec, f.lattice), f);
}

Field convolve_with_multiplier(const std::vector<double>& multiplier, const Field& f) {
    return apply_multiplier(f, multiplier);
}

std::optional<KernelSplit> declared_split(const KernelSpec& spec, double r, int dim) {
    const double S = surface_area_unit_sphere(dim);
    KernelSplit out;
    out.r = r;
    switch (spec.kind) {
        case KernelSpec::Kind::yukawa: {
            if (dim == 1) return std::nullopt;
            if (r >= dim) return std::nullopt; // (e^{-mu t}/t)^r t^{N-1} integrable iff r < N
            // |W1|_r^r = S_{N-1} * int_0^1 e^{-r mu t} t^{N-1-r} dt  (numeric quadrature)
            const int steps = 20000;
            double acc = 0.0;
            for (int i = 0; i < steps; ++i) {
                double t0 = static_cast<double>(i) / steps;
                double t1 = static_cast<double>(i + 1) / steps;
                double tm = 0.5 * (t0 + t1);
                acc += std::exp(-r * spec.mu * tm) * std::pow(tm, dim - 1 - r) * (t1 - t0);
            }
            out.W1_norm_r = std::pow(S * acc, 1.0 / r);
            out.W2_norm_inf = std::exp(-spec.mu); // max of e^{-mu t}/t on t >= 1
            return out;
        }
        case KernelSpec::Kind::newton: {
            if (spec.lambda * r >= dim) return std::nullopt;
            out.W1_norm_r = std::pow(S / (dim - spec.lambda * r), 1.0 / r);
            out.W2_norm_inf = 1.0; // max of t^-lambda on t >= 1
            return out;
        }
        case KernelSpec::Kind::gaussian: {
            out.W1_norm_r = 0.0; // W itself is bounded; put all of W in the L^inf part
            out.W2_norm_inf = spec.amplitude;
            return out;
        }
        case KernelSpec::Kind::tabulated:
            return std::nullopt;
    }
    return std::nullopt;
}

AssumptionWReport validate_assumption_W(const KernelSpec& spec, double theta, int dim) {
    if (!(theta >= 2.0)) throw ConfigError("theta must be >= 2");
    AssumptionWReport rep;
    rep.theta_upper = dim == 1 ? std::numeric_limits<double>::infinity()
                               : 2.0 * dim / (dim - 1.0);
    rep.theta_admissible = theta >= 2.0 && theta < rep.theta_upper;

    double denom = dim * (2.0 - theta) + theta; // = 2N - (N-1)theta, > 0 iff theta < 2N/(N-1)
    rep.r_lower = denom > 0.0 ? std::max(1.0, dim / denom) : std::numeric_limits<double>::infinity();

    double lambda_singular = 0.0; // local singularity exponent |x|^-lambda near 0
    switch (spec.kind) {
        case KernelSpec::Kind::newton: lambda_singular = spec.lambda; break;
        case KernelSpec::Kind::yukawa: lambda_singular = 1.0; break;
        case KernelSpec::Kind::gaussian:
        case KernelSpec::Kind::tabulated: lambda_singular = 0.0; break;
    }
    rep.r_upper = lambda_singular > 0.0 ? dim / lambda_singular
                                        : std::numeric_limits<double>::infinity();
    rep.split_exists = rep.theta_admissible && rep.r_lower < rep.r_upper;

    std::ostringstream os;
    if (!rep.theta_admissible) {
        os << "theta = " << theta << " outside the admissible range [2, " << rep.theta_upper
           << ") for N = " << dim;
    } else if (!rep.split_exists) {
        os << "no admissible L^r + L^inf split: requires r in (" << rep.r_lower << ", "
           << rep.r_upper << ")";
    } else {
        os << "admissible: r in (" << rep.r_lower << ", " << rep.r_upper << ")";
    }
    rep.message = os.str();
    return rep;
}

}  // namespace prh
