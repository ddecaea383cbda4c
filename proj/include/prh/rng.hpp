#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "prh/lattice.hpp"

namespace prh {

// Deterministic standard normals (Box-Muller over mt19937_64) so that fixed
// seeds reproduce bit-identical runs across standard libraries.
class NormalSampler {
public:
    explicit NormalSampler(uint64_t seed) : gen_(seed) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        return (gen_() >> 11) * 0x1.0p-53; // 53-bit mantissa in [0,1)
    }
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_ = false;
};

inline Field random_field(const Lattice& lat, uint64_t seed, double mean = 0.0,
                          double stddev = 1.0) {
    NormalSampler normal(seed);
    Field f(lat);
    for (auto& v : f.values) v = mean + stddev * normal();
    return f;
}

}  // namespace prh
