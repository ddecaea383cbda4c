#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "prh/errors.hpp"
#include "prh/fft.hpp"
#include "prh/lattice.hpp"
#include "prh/rng.hpp"
#include "prh/spectral_operator.hpp"

using namespace prh;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sqrt_op_multiplier equals sqrt(m^2 + |k|^2)") {
    auto lat = make_lattice(1, 8, 2.0 * kPi);  // dk = 1
    auto mult = sqrt_op_multiplier(lat, 1.0);
    CHECK(mult[0] == doctest::Approx(1.0).epsilon(1e-15));               // k = 0
    CHECK(mult[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));    // |k| = 1
    CHECK(mult[4] == doctest::Approx(std::sqrt(17.0)).epsilon(1e-14));   // |k| = 4

    auto mult2 = sqrt_op_multiplier(lat, 2.0);
    CHECK(mult2[0] == doctest::Approx(2.0).epsilon(1e-15));

    // minimum over the grid is m, attained at k = 0
    double mn = mult[0];
    for (double v : mult) mn = std::min(mn, v);
    CHECK(mn == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(sqrt_op_multiplier(lat, 0.0), ConfigError);
    CHECK_THROWS_AS(sqrt_op_multiplier(lat, -1.0), ConfigError);
}

TEST_CASE("apply_sqrt_op maps constants to m * c") {
    auto lat = make_lattice(3, 8, 2.0);
    Field f(lat, 3.0);
    Field g = apply_sqrt_op(f, 1.5);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(g[i] == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("plane-wave modes are exact eigenfunctions") {
    auto lat = make_lattice(1, 32, 4.0);
    const double k0 = 2.0 * kPi / lat.extent * 3.0;  // j = 3 mode
    const double m = 0.7;
    Field f(lat);
    for (int j = 0; j < 32; ++j) f[j] = std::cos(k0 * j * lat.spacing());
    Field g = apply_sqrt_op(f, m);
    const double lambda = std::sqrt(m * m + k0 * k0);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(g[i] - lambda * f[i]) < 1e-12 * lambda);
}

TEST_CASE("applying the operator twice equals the Schroedinger multiplier") {
    for (int dim : {1, 2, 3}) {
        auto lat = make_lattice(dim, dim == 3 ? 8 : 16, 3.0);
        Field f = random_field(lat, 5000 + dim);
        const double m = 1.3;
        Field twice = apply_sqrt_op(apply_sqrt_op(f, m), m);
        Field direct = apply_multiplier(f, schroedinger_multiplier(lat, m));
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            num += (twice[i] - direct[i]) * (twice[i] - direct[i]);
            den += direct[i] * direct[i];
        }
        CHECK(std::sqrt(num) < 1e-10 * std::sqrt(den));
    }
}

TEST_CASE("quadratic_form matches closed forms") {
    auto lat = make_lattice(3, 8, 2.0);  // volume 8
    const double m = 1.25;

    Field c(lat, 2.0);
    // constant: <c, T c> = m * c^2 * Vol
    CHECK(quadratic_form(c, m) == doctest::Approx(m * 4.0 * 8.0).epsilon(1e-12));

    // single cosine mode, amplitude a: Q = sqrt(m^2 + k0^2) a^2 Vol / 2
    auto lat1 = make_lattice(1, 16, 2.0);
    const double k0 = 2.0 * kPi / lat1.extent;
    const double a = 1.7;
    Field f(lat1);
    for (int j = 0; j < 16; ++j) f[j] = a * std::cos(k0 * j * lat1.spacing());
    const double want = std::sqrt(m * m + k0 * k0) * a * a * lat1.volume() / 2.0;
    CHECK(quadratic_form(f, m) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("quadratic_form agrees with cell_volume * sum f * (T f)") {
    for (int dim : {1, 2, 3}) {
        auto lat = make_lattice(dim, dim == 3 ? 8 : 12, 2.5);
        Field f = random_field(lat, 31 + dim);
        const double m = 0.9;
        Field Tf = apply_sqrt_op(f, m);
        double direct = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) direct += f[i] * Tf[i];
        direct *= lat.cell_volume;
        double q = quadratic_form(f, m);
        CHECK(std::abs(q - direct) < 1e-10 * std::abs(q));
    }
}

TEST_CASE("quadratic_form dominates m times the squared L2 norm") {
    auto lat = make_lattice(2, 16, 3.0);
    const double m = 1.1;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        Field f = random_field(lat, seed);
        double l2 = lp_norm(f, 2.0);
        CHECK(quadratic_form(f, m) >= m * l2 * l2 * (1.0 - 1e-12));
    }
}

TEST_CASE("bilinear quadratic_form is symmetric and consistent") {
    auto lat = make_lattice(2, 12, 2.0);
    const double m = 1.4;
    Field f = random_field(lat, 7);
    Field g = random_field(lat, 8);
    double fg = quadratic_form(f, g, m);
    double gf = quadratic_form(g, f, m);
    CHECK(std::abs(fg - gf) < 1e-10 * std::max(std::abs(fg), 1.0));
    CHECK(quadratic_form(f, f, m) == doctest::Approx(quadratic_form(f, m)).epsilon(1e-12));
}

TEST_CASE("operator is self-adjoint on random pairs") {
    for (int dim : {1, 2, 3}) {
        auto lat = make_lattice(dim, 8, 2.0);
        const double m = 1.0;
        Field f = random_field(lat, 600 + dim);
        Field g = random_field(lat, 700 + dim);
        Field Tf = apply_sqrt_op(f, m);
        Field Tg = apply_sqrt_op(g, m);
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            a += Tf[i] * g[i];
            b += f[i] * Tg[i];
        }
        CHECK(std::abs(a - b) < 1e-10 * std::max({std::abs(a), std::abs(b), 1.0}));
    }
}

TEST_CASE("precondition inverts the shifted operator to 1e-10") {
    auto lat = make_lattice(3, 8, 2.0);
    const double m = 1.0, shift = 1.0;
    Field f = random_field(lat, 222);
    Field Tf = apply_sqrt_op(f, m);
    Field shifted(lat);
    for (std::size_t i = 0; i < f.size(); ++i) shifted[i] = Tf[i] + shift * f[i];
    Field back = precondition(shifted, m, shift);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        num += (back[i] - f[i]) * (back[i] - f[i]);
        den += f[i] * f[i];
    }
    CHECK(std::sqrt(num) < 1e-10 * std::sqrt(den));

    // zero shift is allowed (the operator itself is invertible, min eigenvalue m)
    Field back0 = precondition(apply_sqrt_op(f, m), m, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(back0[i] == doctest::Approx(f[i]).epsilon(1e-9));

    CHECK_THROWS_AS(precondition(f, m, -1.0), ConfigError);
}
