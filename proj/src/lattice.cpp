#include "prh/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prh/errors.hpp"

namespace prh {

std::size_t Lattice::size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(points_per_axis);
    return s;
}

double Lattice::volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= extent;
    return v;
}

Lattice make_lattice(int dim, int n, double extent) {
    if (dim < 1 || dim > 3) throw ConfigError("lattice dim must be 1, 2, or 3");
    if (n < 4) throw ConfigError("lattice points_per_axis must be >= 4");
    if (n % 2 != 0) throw ConfigError("lattice points_per_axis must be even");
    if (!(extent > 0.0) || !std::isfinite(extent)) throw ConfigError("lattice extent must be positive");
    Lattice lat;
    lat.dim = dim;
    lat.points_per_axis = n;
    lat.extent = extent;
    lat.cell_volume = std::pow(extent / n, dim);
    return lat;
}

int frequency_index(int idx, int n) { return idx < n / 2 ? idx : idx - n; }

std::array<int, 3> unflatten(const Lattice& lat, std::size_t idx) {
    const int n = lat.points_per_axis;
    std::array<int, 3> ix{0, 0, 0};
    for (int d = lat.dim - 1; d >= 0; --d) {
        ix[d] = static_cast<int>(idx % n);
        idx /= n;
    }
    return ix;
}

std::size_t flatten(const Lattice& lat, const std::array<int, 3>& ix) {
    const int n = lat.points_per_axis;
    std::size_t idx = 0;
    for (int d = 0; d < lat.dim; ++d) {
        int w = ((ix[d] % n) + n) % n;
        idx = idx * n + static_cast<std::size_t>(w);
    }
    return idx;
}

std::vector<double> wavenumber_sq(const Lattice& lat) {
    const int n = lat.points_per_axis;
    const double dk = 2.0 * std::numbers::pi / lat.extent;
    std::vector<double> axis(n);
    for (int j = 0; j < n; ++j) {
        double k = dk * frequency_index(j, n);
        axis[j] = k * k;
    }
    std::vector<double> out(lat.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto ix = unflatten(lat, i);
        double s = 0.0;
        for (int d = 0; d < lat.dim; ++d) s += axis[ix[d]];
        out[i] = s;
    }
    return out;
}

std::vector<double> torus_radius(const Lattice& lat) {
    const int n = lat.points_per_axis;
    const double h = lat.spacing();
    std::vector<double> axis(n);
    for (int j = 0; j < n; ++j) {
        int m = std::min(j, n - j); // minimum-image offset from cell 0
        axis[j] = h * m;
    }
    std::vector<double> out(lat.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto ix = unflatten(lat, i);
        double s = 0.0;
        for (int d = 0; d < lat.dim; ++d) s += axis[ix[d]] * axis[ix[d]];
        out[i] = std::sqrt(s);
    }
    return out;
}

double lp_norm(const Field& f, double p) {
    if (std::isinf(p)) {
        double mx = 0.0;
        for (double v : f.values) mx = std::max(mx, std::abs(v));
        return mx;
    }
    if (p < 1.0) throw ConfigError("lp_norm requires p >= 1 or p = infinity");
    double s = 0.0;
    if (p == 2.0) {
        for (double v : f.values) s += v * v;
    } else if (p == 1.0) {
        for (double v : f.values) s += std::abs(v);
    } else {
        for (double v : f.values) s += std::pow(std::abs(v), p);
    }
    return std::pow(f.lattice.cell_volume * s, 1.0 / p);
}

std::vector<RadialBin> radial_profile(const Field& f, int bins) {
    if (bins < 2) throw ConfigError("radial_profile requires bins >= 2");
    const double rmax = f.lattice.extent / 2.0;
    const double width = rmax / bins;
    std::vector<RadialBin> out(bins);
    for (int b = 0; b < bins; ++b) out[b].radius = (b + 0.5) * width;
    std::vector<double> sums(bins, 0.0);
    auto rad = torus_radius(f.lattice);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (rad[i] > rmax) continue;
        int b = std::min(bins - 1, static_cast<int>(rad[i] / width));
        sums[b] += std::abs(f.values[i]);
        out[b].count += 1;
    }
    for (int b = 0; b < bins; ++b)
        if (out[b].count > 0) out[b].mean_abs = sums[b] / out[b].count;
    return out;
}

Field recentre(const Field& f, const std::array<int, 3>& center) {
    const int n = f.lattice.points_per_axis;
    Field out(f.lattice);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto ix = unflatten(f.lattice, i);
        std::array<int, 3> src{0, 0, 0};
        for (int d = 0; d < f.lattice.dim; ++d) src[d] = (ix[d] + center[d]) % n;
        out.values[i] = f.values[flatten(f.lattice, src)];
    }
    return out;
}

std::array<int, 3> argmax_cell(const Field& f) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f.values[i] > f.values[best]) best = i;
    return unflatten(f.lattice, best);
}

std::array<double, 3> center_of_mass(const Field& f) {
    const int n = f.lattice.points_per_axis;
    const double h = f.lattice.spacing();
    auto anchor = argmax_cell(f);
    std::array<double, 3> com{0.0, 0.0, 0.0};
    double mass = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double w = std::abs(f.values[i]);
        if (w == 0.0) continue;
        auto ix = unflatten(f.lattice, i);
        mass += w;
        for (int d = 0; d < f.lattice.dim; ++d) {
            int off = ix[d] - anchor[d];
            if (off > n / 2) off -= n;
            if (off < -n / 2) off += n;
            com[d] += w * off;
        }
    }
    for (int d = 0; d < f.lattice.dim; ++d) {
        double coord = mass > 0.0 ? anchor[d] + com[d] / mass : 0.0;
        double pos = coord * h;
        // report within [0, L)
        pos = std::fmod(pos, f.lattice.extent);
        if (pos < 0) pos += f.lattice.extent;
        com[d] = pos;
    }
    for (int d = f.lattice.dim; d < 3; ++d) com[d] = 0.0;
    return com;
}

double octahedral_deviation(const Field& f) {
    const int n = f.lattice.points_per_axis;
    const int dim = f.lattice.dim;
    double nrm2 = 0.0;
    for (double v : f.values) nrm2 += v * v;
    if (nrm2 == 0.0) throw InvariantError("octahedral_deviation: zero field");

    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> idp{0, 1, 2};
    if (dim == 1) perms = {{0, 1, 2}};
    else if (dim == 2) perms = {{0, 1, 2}, {1, 0, 2}};
    else {
        perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    }
    (void)idp;

    double worst = 0.0;
    const int nflip = 1 << dim;
    for (const auto& p : perms) {
        for (int mask = 0; mask < nflip; ++mask) {
            if (p == std::array<int, 3>{0, 1, 2} && mask == 0) continue; // identity
            double diff2 = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                auto ix = unflatten(f.lattice, i);
                std::array<int, 3> jx{0, 0, 0};
                for (int d = 0; d < dim; ++d) {
                    int v = ix[p[d]];
                    if (mask & (1 << d)) v = (n - v) % n;
                    jx[d] = v;
                }
                double dlt = f.values[i] - f.values[flatten(f.lattice, jx)];
                diff2 += dlt * dlt;
            }
            worst = std::max(worst, std::sqrt(diff2 / nrm2));
        }
    }
    return worst;
}

}  // namespace prh
