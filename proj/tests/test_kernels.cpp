#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "prh/errors.hpp"
#include "prh/fft.hpp"
#include "prh/kernels.hpp"
#include "prh/lattice.hpp"
#include "prh/rng.hpp"

using namespace prh;

namespace {
constexpr double kPi = std::numbers::pi;

// Real-space kernel grid: inverse transform of the multiplier (the periodized,
// frequency-truncated kernel the spectral convolution actually uses).
Field kernel_grid(const std::vector<double>& mult, const Lattice& lat) {
    SpectralField F;
    F.lattice = lat;
    F.coefficients.reserve(mult.size());
    for (double v : mult) F.coefficients.emplace_back(v, 0.0);
    return inverse_transform(F);
}

// Direct O(n^{2N}) periodized convolution (W_grid * f)(y) = cv * sum_z W(z) f(y - z).
Field direct_convolution(const Field& W, const Field& f) {
    const Lattice& lat = f.lattice;
    Field out(lat);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto yi = unflatten(lat, i);
        double acc = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            auto zj = unflatten(lat, j);
            std::array<int, 3> diff{0, 0, 0};
            for (int d = 0; d < lat.dim; ++d) diff[d] = yi[d] - zj[d];
            acc += W[flatten(lat, diff)] * f[j];
        }
        out[i] = lat.cell_volume * acc;
    }
    return out;
}

double rel_l2_diff(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num) / std::sqrt(den);
}
}  // namespace

TEST_CASE("yukawa multiplier closed forms") {
    auto lat3 = make_lattice(3, 8, 2.0 * kPi);  // dk = 1
    auto m3 = kernel_multiplier(KernelSpec::yukawa(1.0), lat3);
    CHECK(m3[0] == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(m3[flatten(lat3, {1, 0, 0})] == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(m3[flatten(lat3, {1, 1, 1})] == doctest::Approx(kPi).epsilon(1e-14));

    auto lat2 = make_lattice(2, 8, 2.0 * kPi);
    auto m2 = kernel_multiplier(KernelSpec::yukawa(2.0), lat2);
    CHECK(m2[0] == doctest::Approx(2.0 * kPi / 2.0).epsilon(1e-14));
    CHECK(m2[flatten(lat2, {0, 1, 0})] ==
          doctest::Approx(2.0 * kPi / std::sqrt(5.0)).epsilon(1e-14));

    auto lat1 = make_lattice(1, 8, 2.0 * kPi);
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::yukawa(1.0), lat1), ConfigError);
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::yukawa(0.0), lat3), ConfigError);
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::yukawa(-1.0), lat3), ConfigError);
}

TEST_CASE("newton multiplier closed forms and mean-zero convention") {
    auto lat = make_lattice(3, 8, 2.0 * kPi);  // dk = 1
    auto m = kernel_multiplier(KernelSpec::newton(1.0), lat);
    CHECK(m[0] == 0.0);  // zero mode removed
    CHECK(m[flatten(lat, {1, 0, 0})] == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(m[flatten(lat, {2, 0, 0})] == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(m[flatten(lat, {1, 1, 1})] == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));

    // N = 2, lambda = 1: 2^{1} pi^{1} Gamma(1/2)/Gamma(1/2) |k|^{-1} = 2 pi / |k|
    auto lat2 = make_lattice(2, 8, 2.0 * kPi);
    auto m2 = kernel_multiplier(KernelSpec::newton(1.0), lat2);
    CHECK(m2[flatten(lat2, {1, 0, 0})] == doctest::Approx(2.0 * kPi).epsilon(1e-12));

    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::newton(0.0), lat), ConfigError);
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::newton(2.0), lat), ConfigError);   // lambda >= min(3,2)
    auto lat1 = make_lattice(1, 8, 2.0 * kPi);
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::newton(1.0), lat1), ConfigError);  // lambda >= min(1,2)
}

TEST_CASE("gaussian multiplier closed forms") {
    for (int dim : {1, 2, 3}) {
        auto lat = make_lattice(dim, 8, 4.0);
        const double s = 0.8, a = 2.5;
        auto m = kernel_multiplier(KernelSpec::gaussian(s, a), lat);
        CHECK(m[0] == doctest::Approx(a * std::pow(2.0 * kPi * s * s, dim / 2.0)).epsilon(1e-13));
        auto k2 = wavenumber_sq(lat);
        std::size_t probe = lat.size() / 2 + 1;
        CHECK(m[probe] == doctest::Approx(m[0] * std::exp(-0.5 * s * s * k2[probe])).epsilon(1e-12));
    }
    auto lat = make_lattice(2, 8, 4.0);
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::gaussian(0.0, 1.0), lat), ConfigError);
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::gaussian(1.0, -1.0), lat), ConfigError);
}

TEST_CASE("convolving a constant field yields c times the zero mode") {
    auto lat = make_lattice(3, 8, 3.0);
    Field c(lat, 1.6);
    auto spec = KernelSpec::yukawa(1.3);
    auto mult = kernel_multiplier(spec, lat);
    Field g = convolve(spec, c);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(g[i] == doctest::Approx(1.6 * mult[0]).epsilon(1e-12));

    // Newton: zero mode is 0, so a constant convolves to ~0
    Field h = convolve(KernelSpec::newton(1.0), c);
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(std::abs(h[i]) < 1e-10);
}

TEST_CASE("unit spike convolves to the sampled periodized kernel shape") {
    auto lat = make_lattice(3, 8, 4.0);
    for (const auto& spec : {KernelSpec::yukawa(1.0), KernelSpec::gaussian(0.7, 1.0),
                             KernelSpec::newton(1.5)}) {
        auto mult = kernel_multiplier(spec, lat);
        Field Wgrid = kernel_grid(mult, lat);
        Field spike(lat);
        spike[0] = 1.0;
        Field g = convolve(spec, spike);
        double scale = 0.0;
        for (double v : g.values) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(std::abs(g[i] - lat.cell_volume * Wgrid[i]) < 1e-8 * scale);
    }
}

TEST_CASE("spectral convolution matches the direct real-space oracle on 8^3") {
    auto lat = make_lattice(3, 8, 4.0);
    Field f = random_field(lat, 910);
    for (const auto& spec : {KernelSpec::yukawa(1.0), KernelSpec::gaussian(0.7, 1.0),
                             KernelSpec::newton(1.0)}) {
        auto mult = kernel_multiplier(spec, lat);  // zero-mode policy shared with the oracle
        Field Wgrid = kernel_grid(mult, lat);
        Field fast = convolve(spec, f);
        Field slow = direct_convolution(Wgrid, f);
        CHECK(rel_l2_diff(fast, slow) < 1e-8);
    }
}

TEST_CASE("gaussian kernel * gaussian field sums the variances") {
    auto lat = make_lattice(1, 64, 32.0);
    const double sk = 1.0, a = 0.8, sf = 1.5;
    auto rad = torus_radius(lat);
    Field f(lat);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-rad[i] * rad[i] / (2.0 * sf * sf));
    Field g = convolve(KernelSpec::gaussian(sk, a), f);
    const double svar = sk * sk + sf * sf;
    const double amp = a * std::sqrt(2.0 * kPi * sk * sk * sf * sf / svar);
    Field want(lat);
    for (std::size_t i = 0; i < f.size(); ++i)
        want[i] = amp * std::exp(-rad[i] * rad[i] / (2.0 * svar));
    CHECK(rel_l2_diff(g, want) < 1e-6);
}

TEST_CASE("convolution is linear and translation-equivariant") {
    auto lat = make_lattice(2, 12, 5.0);
    auto spec = KernelSpec::yukawa(0.9);
    Field f = random_field(lat, 11);
    Field g = random_field(lat, 12);
    Field combo(lat);
    for (std::size_t i = 0; i < f.size(); ++i) combo[i] = 2.0 * f[i] - 3.0 * g[i];
    Field lhs = convolve(spec, combo);
    Field cf = convolve(spec, f);
    Field cg = convolve(spec, g);
    Field rhs(lat);
    for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = 2.0 * cf[i] - 3.0 * cg[i];
    CHECK(rel_l2_diff(lhs, rhs) < 1e-10);

    std::array<int, 3> shift{3, 7, 0};
    Field shifted_then_conv = convolve(spec, recentre(f, shift));
    Field conv_then_shifted = recentre(cf, shift);
    CHECK(rel_l2_diff(shifted_then_conv, conv_then_shifted) < 1e-10);
}

TEST_CASE("nonnegative fields convolve to nonnegative fields (built-in kernels)") {
    auto lat = make_lattice(3, 8, 4.0);
    Field f = random_field(lat, 33);
    for (auto& v : f.values) v = std::abs(v);
    for (const auto& spec : {KernelSpec::yukawa(1.0), KernelSpec::gaussian(1.0, 1.0)}) {
        Field g = convolve(spec, f);
        double mx = 0.0;
        for (double v : g.values) mx = std::max(mx, std::abs(v));
        for (double v : g.values) CHECK(v >= -1e-12 * mx);
    }
}

TEST_CASE("declared L^r + L^inf splits match closed forms") {
    // Yukawa mu = 1, N = 3, r = 2: |W1|_2^2 = 2 pi (1 - e^{-2}), |W2|_inf = e^{-1}
    auto sp = declared_split(KernelSpec::yukawa(1.0), 2.0, 3);
    REQUIRE(sp.has_value());
    CHECK(sp->W1_norm_r * sp->W1_norm_r ==
          doctest::Approx(2.0 * kPi * (1.0 - std::exp(-2.0))).epsilon(1e-6));
    CHECK(sp->W2_norm_inf == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    // r >= N: the singular part is no longer in L^r
    CHECK_FALSE(declared_split(KernelSpec::yukawa(1.0), 3.0, 3).has_value());

    // Newton lambda = 1, N = 3, r = 2: |W1|_2 = sqrt(4 pi / (3 - 2)), |W2|_inf = 1
    auto np = declared_split(KernelSpec::newton(1.0), 2.0, 3);
    REQUIRE(np.has_value());
    CHECK(np->W1_norm_r == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-12));
    CHECK(np->W2_norm_inf == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(declared_split(KernelSpec::newton(1.0), 3.0, 3).has_value());

    // Gaussian is globally bounded: all of W sits in the L^inf part
    auto gp = declared_split(KernelSpec::gaussian(1.0, 2.3), 2.0, 3);
    REQUIRE(gp.has_value());
    CHECK(gp->W1_norm_r == 0.0);
    CHECK(gp->W2_norm_inf == doctest::Approx(2.3).epsilon(1e-15));

    auto lat = make_lattice(1, 8, 1.0);
    CHECK_FALSE(declared_split(KernelSpec::tabulated(Field(lat, 1.0)), 2.0, 1).has_value());
}

TEST_CASE("assumption (W) admissibility arithmetic") {
    // N = 3, theta = 2: admissible since 2 < 2N/(N-1) = 3
    auto a = validate_assumption_W(KernelSpec::yukawa(1.0), 2.0, 3);
    CHECK(a.theta_admissible);
    CHECK(a.theta_upper == doctest::Approx(3.0).epsilon(1e-15));

    // N = 3, theta = 3: boundary, inadmissible
    auto b = validate_assumption_W(KernelSpec::yukawa(1.0), 3.0, 3);
    CHECK_FALSE(b.theta_admissible);
    CHECK(b.message.find("admissible range") != std::string::npos);

    // N = 3, Newton lambda = 1, theta = 2: r in (3/2, 3)
    auto c = validate_assumption_W(KernelSpec::newton(1.0), 2.0, 3);
    CHECK(c.theta_admissible);
    CHECK(c.r_lower == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(c.r_upper == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c.split_exists);

    // Bounded kernels have no upper restriction on r
    auto d = validate_assumption_W(KernelSpec::gaussian(1.0, 1.0), 2.0, 2);
    CHECK(std::isinf(d.r_upper));
    CHECK(d.split_exists);

    // N = 1: theta has no finite upper bound
    auto e = validate_assumption_W(KernelSpec::gaussian(1.0, 1.0), 4.0, 1);
    CHECK(std::isinf(e.theta_upper));
    CHECK(e.theta_admissible);

    CHECK_THROWS_AS(validate_assumption_W(KernelSpec::yukawa(1.0), 1.5, 3), ConfigError);
}

TEST_CASE("tabulated kernels: validation and agreement with the sampled family") {
    auto lat = make_lattice(1, 64, 32.0);
    auto rad = torus_radius(lat);

    // Gaussian samples: accepted, and convolution matches the built-in gaussian
    Field samples(lat);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = std::exp(-rad[i] * rad[i] / 2.0);
    auto tab = KernelSpec::tabulated(samples);
    Field f = random_field(lat, 2024);
    Field via_table = convolve(tab, f);
    Field via_builtin = convolve(KernelSpec::gaussian(1.0, 1.0), f);
    CHECK(rel_l2_diff(via_table, via_builtin) < 1e-6);

    // negative sample -> rejected
    Field bad = samples;
    bad[5] = -0.1;
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::tabulated(bad), lat), ConfigError);

    // radial-symmetry violation -> rejected
    Field skew = samples;
    skew[3] += 0.5;  // no matching bump at n-3
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::tabulated(skew), lat), ConfigError);

    // nonnegative, symmetric, but with a genuinely negative transform -> rejected
    Field spikes(lat);
    spikes[2] = 1.0;
    spikes[64 - 2] = 1.0;
    CHECK_THROWS_AS(kernel_multiplier(KernelSpec::tabulated(spikes), lat), ConfigError);

    // lattice mismatch -> rejected
    auto other = make_lattice(1, 32, 32.0);
    CHECK_THROWS_AS(kernel_multiplier(tab, other), ConfigError);
}
