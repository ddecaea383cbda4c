#include "prh/extension.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "prh/errors.hpp"
#include "prh/fft.hpp"
#include "prh/spectral_operator.hpp"

namespace prh {

namespace {

using cplx = std::complex<double>;

// Solve the per-mode tridiagonal system for v_1..v_M given v_0:
//   v_{i-1} - (2 + rho^2 h^2) v_i + v_{i+1} = 0,          i = 1..M-1
//   2 v_{M-1} - (2 + 2 h rho + rho^2 h^2) v_M = 0          (Robin closure)
// Returns v_0..v_M.
std::vector<cplx> solve_mode(cplx v0, double rho, double h, int M) {
    const double diag = -(2.0 + rho * rho * h * h);
    const double diagM = -(2.0 + 2.0 * h * rho + rho * rho * h * h);
    std::vector<double> cp(M);
    std::vector<cplx> dp(M);
    // forward sweep (Thomas); unknowns x_1..x_M indexed 0..M-1 here
    cp[0] = 1.0 / diag;
    dp[0] = -v0 / diag;
    for (int i = 1; i < M; ++i) {
        double a = (i == M - 1) ? 2.0 : 1.0;  // sub-diagonal
        double b = (i == M - 1) ? diagM : diag;
        double denom = b - a * cp[i - 1];
        cp[i] = (i == M - 1 ? 0.0 : 1.0) / denom;
        dp[i] = (cplx(0.0) - a * dp[i - 1]) / denom;
    }
    std::vector<cplx> v(M + 1);
    v[0] = v0;
    v[M] = dp[M - 1];
    for (int i = M - 2; i >= 0; --i) v[i + 1] = dp[i] - cp[i] * v[i + 2];
    return v;
}

std::vector<double> mode_rhos(const Lattice& lat, double m) {
    auto k2 = wavenumber_sq(lat);
    for (auto& v : k2) v = std::sqrt(m * m + v);
    return k2;
}

}  // namespace

SlabGrid make_slab(const Lattice& base, double depth, int layers) {
    if (!(depth > 0.0)) throw ConfigError("slab depth must be positive");
    if (layers < 8) throw ConfigError("slab layers must be >= 8");
    return SlabGrid{base, depth, layers};
}

SlabField harmonic_extension(const Field& g, double m, const SlabGrid& slab) {
    if (!(g.lattice == slab.base))
        throw InvariantError("harmonic_extension: trace lattice does not match slab base");
    if (!(m > 0.0)) throw ConfigError("operator mass m must be positive");

    const int M = slab.layers;
    const double h = slab.spacing();
    const std::size_t nc = g.size();
    SpectralField G = forward_transform(g);
    auto rhos = mode_rhos(g.lattice, m);

    // spectral layers, then one inverse transform per layer
    std::vector<std::vector<cplx>> spectral(M + 1, std::vector<cplx>(nc));
    for (std::size_t c = 0; c < nc; ++c) {
        auto v = solve_mode(G.coefficients[c], rhos[c], h, M);
        for (int l = 0; l <= M; ++l) spectral[l][c] = v[l];
    }

    SlabField out;
    out.grid = slab;
    out.values.resize(static_cast<std::size_t>(M + 1) * nc);
    for (int l = 0; l <= M; ++l) {
        SpectralField layer{g.lattice, std::move(spectral[l])};
        Field f = inverse_transform(layer);
        std::copy(f.values.begin(), f.values.end(),
                  out.values.begin() + static_cast<std::size_t>(l) * nc);
    }
    return out;
}

Field dtn_apply(const Field& g, double m, const SlabGrid& slab) {
    if (!(g.lattice == slab.base))
        throw InvariantError("dtn_apply: trace lattice does not match slab base");
    if (!(m > 0.0)) throw ConfigError("operator mass m must be positive");

    const int M = slab.layers;
    const double h = slab.spacing();
    SpectralField G = forward_transform(g);
    auto rhos = mode_rhos(g.lattice, m);

    SpectralField D;
    D.lattice = g.lattice;
    D.coefficients.resize(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) {
        const double rho = rhos[c];
        auto v = solve_mode(G.coefficients[c], rho, h, M);
        cplx d = -((v[1] - v[0]) / h - 0.5 * h * rho * rho * v[0]);
        D.coefficients[c] = d / (1.0 + rho * rho * h * h / 6.0);
    }
    return inverse_transform(D);
}

double extension_energy(const SlabField& v, double m) {
    if (!(m > 0.0)) throw ConfigError("operator mass m must be positive");
    const int M = v.grid.layers;
    const double h = v.grid.spacing();
    const Lattice& base = v.grid.base;
    const std::size_t nc = base.size();
    auto rhos = mode_rhos(base, m);

    std::vector<SpectralField> layers(M + 1);
    for (int l = 0; l <= M; ++l) {
        Field f(base);
        std::copy(v.values.begin() + static_cast<std::size_t>(l) * nc,
                  v.values.begin() + static_cast<std::size_t>(l + 1) * nc, f.values.begin());
        layers[l] = forward_transform(f);
    }

    double total = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
        const double rho2 = rhos[c] * rhos[c];
        double acc = 0.0;
        for (int l = 0; l < M; ++l) {
            cplx lo = layers[l].coefficients[c];
            cplx hi = layers[l + 1].coefficients[c];
            double dd = std::norm((hi - lo) / h);
            double mass = 0.5 * (std::norm(lo) + std::norm(hi));
            acc += h * (dd + rho2 * mass);
        }
        acc += rhos[c] * std::norm(layers[M].coefficients[c]); // analytic tail x > depth
        total += acc;
    }
    return total / base.volume();
}

TraceIneqReport trace_inequality_check(const SlabField& v, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("trace inequality requires lambda > 0");
    const int M = v.grid.layers;
    const double h = v.grid.spacing();
    const std::size_t nc = v.grid.base.size();
    const double cv = v.grid.base.cell_volume;

    double lhs = 0.0, mass = 0.0, xen = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
        double v0 = v.at(0, c);
        lhs += v0 * v0;
        for (int l = 0; l < M; ++l) {
            double a = v.at(l, c), b = v.at(l + 1, c);
            mass += h * 0.5 * (a * a + b * b);
            xen += ((b - a) / h) * ((b - a) / h) * h;
        }
        double vM = v.at(M, c);
        mass += vM * vM / (2.0 * lambda); // exponential tail at rate lambda
        xen += lambda * vM * vM / 2.0;
    }
    TraceIneqReport rep;
    rep.lambda = lambda;
    rep.lhs = cv * lhs;
    rep.rhs = cv * (lambda * mass + xen / lambda);
    rep.slack_rel = rep.rhs > 0.0 ? (rep.rhs - rep.lhs) / rep.rhs : 0.0;
    rep.holds = rep.rhs - rep.lhs >= -1e-10 * rep.rhs;
    return rep;
}

DtnConvergence dtn_convergence_study(const Field& g, double m, double depth,
                                     const std::vector<int>& layer_counts) {
    if (layer_counts.size() < 2)
        throw ConfigError("convergence study needs at least two layer counts");
    Field ref = apply_sqrt_op(g, m);
    double refn = lp_norm(ref, 2.0);

    DtnConvergence out;
    out.layer_counts = layer_counts;
    for (int M : layer_counts) {
        Field d = dtn_apply(g, m, make_slab(g.lattice, depth, M));
        double err = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            double e = d.values[i] - ref.values[i];
            err += e * e;
        }
        err = std::sqrt(g.lattice.cell_volume * err) / refn;
        out.rel_errors.push_back(err);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < out.rel_errors.size(); ++i) {
        double ratioM = static_cast<double>(layer_counts[i + 1]) / layer_counts[i];
        acc += std::log(out.rel_errors[i] / out.rel_errors[i + 1]) / std::log(ratioM);
    }
    out.observed_order = acc / (out.rel_errors.size() - 1);
    return out;
}

}  // namespace prh
