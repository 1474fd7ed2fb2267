#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fracq/core.hpp"

namespace fracq {

// Deterministic draw stream. The mapping from engine words to doubles is
// spelled out here rather than delegated to std distributions, whose exact
// output is implementation-defined and would break the byte-reproducibility
// contract across standard libraries. Box-Muller is exact-distribution (no
// central-limit shortcut) and pair-cached, so a longer run with the same seed
// extends the shorter one sample for sample.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on [-1/2, 1/2).
    double uniform_centered() { return uniform01() - 0.5; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

}  // namespace fracq
