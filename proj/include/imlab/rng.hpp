// Seeded random number generation with bit-reproducible output.
// The double converters avoid std::*_distribution, whose output is
// implementation-defined; every draw here is a pure function of the
// mt19937_64 stream.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace imlab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1): 53 significant bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; draws two uniforms per call pair.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    std::array<double, 2> complex_gaussian() {
        return {gaussian(), gaussian()};
    }

    std::uint64_t index(std::uint64_t bound) {
        // Rejection-free modulo is fine here; bias is irrelevant for sampling duty.
        return engine_() % bound;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace imlab
