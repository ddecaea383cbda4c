#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace prh {

// Uniform periodic grid on the torus [0, L)^N, N in {1,2,3}, with n points
// per axis.  The wavenumber attached to index j along an axis is (2*pi/L)*j
// with j in {-n/2, ..., n/2 - 1}.
struct Lattice {
    int dim = 0;
    int points_per_axis = 0;
    double extent = 0.0;
    double cell_volume = 0.0;

    std::size_t size() const;
    double spacing() const { return extent / points_per_axis; }
    double volume() const;

    bool operator==(const Lattice& o) const {
        return dim == o.dim && points_per_axis == o.points_per_axis && extent == o.extent;
    }
};

// Throws ConfigError unless dim in {1,2,3}, n >= 4 even, extent > 0.
Lattice make_lattice(int dim, int n, double extent);

// Real scalar field sampled on a lattice, row-major over axes.
struct Field {
    Lattice lattice;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Lattice& lat, double fill = 0.0)
        : lattice(lat), values(lat.size(), fill) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

// Complex Fourier coefficients of a real field (conjugate-symmetric), same
// row-major index layout as Field with the frequency map described above.
struct SpectralField {
    Lattice lattice;
    std::vector<std::complex<double>> coefficients;
};

// Signed frequency index for position idx along one axis: idx < n/2 ? idx : idx - n.
int frequency_index(int idx, int n);

// Wavenumber grid |k|^2 for every lattice site (row-major spectral layout).
std::vector<double> wavenumber_sq(const Lattice& lat);

// Minimum-image distance from the origin cell for every lattice site.
std::vector<double> torus_radius(const Lattice& lat);

// Decompose a flat row-major index into per-axis indices.
std::array<int, 3> unflatten(const Lattice& lat, std::size_t idx);
std::size_t flatten(const Lattice& lat, const std::array<int, 3>& ix);

// Discrete L^p norm (cell_volume * sum |f|^p)^(1/p); p = infinity gives max |f|.
// Throws ConfigError for p < 1.
double lp_norm(const Field& f, double p);

struct RadialBin {
    double radius = 0.0;   // bin midpoint
    double mean_abs = 0.0; // mean of |f| over cells in the bin (0 if empty)
    std::size_t count = 0;
};

// Partition [0, L/2] into `bins` equal bins; cells farther than L/2 from the
// origin cell (in minimum-image distance) are not counted.  bins >= 2.
std::vector<RadialBin> radial_profile(const Field& f, int bins);

// Cyclically roll the field so that the cell at `center` moves to index 0 on
// every axis.  Used to recentre a bump before symmetry/decay diagnostics.
Field recentre(const Field& f, const std::array<int, 3>& center);

// Index of the cell with the largest value.
std::array<int, 3> argmax_cell(const Field& f);

// Intensity-weighted centre of mass in torus coordinates (computed in the
// minimum-image frame around the maximum cell), in physical units.
std::array<double, 3> center_of_mass(const Field& f);

// Max over the lattice symmetry group that fixes cell 0 (axis permutations
// and per-axis reflections i -> n-i) of ||f - f.g||_2 / ||f||_2.
// Zero for fields radially symmetric about the origin cell.
// Throws InvariantError for f identically zero.
double octahedral_deviation(const Field& f);

}  // namespace prh
