#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "fracq/core.hpp"
#include "fracq/weights.hpp"

namespace fracq {

// Cumulative coefficients multiplying each white-noise sample inside theta(n):
// for fGn the running sums of the fractional weights (= weights(H+1/2) by the
// hockey-stick identity); for fBm the exact double partial sums
// (= weights(H+3/2)). The double sum, not its one-index-shifted variant, is
// what the running-sum error expansion induces.
inline WeightSequence cumulative_coeffs(double hurst, std::size_t nmax, Kind kind) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw DomainError("Hurst exponent must lie in (0, 1), got " + std::to_string(hurst));
    if (kind == Kind::white)
        throw DomainError("cumulative coefficients are defined for fgn and fbm kinds");
    return weights(kind == Kind::fgn ? hurst + 0.5 : hurst + 1.5, nmax);
}

struct CFProfile {
    double hurst = 0;
    double delta = 0;
    long l = 0;
    Kind kind = Kind::fgn;
    std::vector<double> log_magnitudes;  // natural log of |Phi_n(2 pi l)|
    std::vector<double> magnitudes;      // exp of the above, 0.0 once underflowed
    std::optional<std::size_t> first_below;  // first n with magnitude < threshold
    double threshold = 0;
};

inline constexpr long kDefaultHarmonicBound = 8;

// |Phi_n(2 pi l)| = exp(-1/2 (2 pi l / delta)^2 sum_{i<=n} c_i^2) with c the
// cumulative coefficients. Everything runs in log space: at delta = 1 the
// magnitudes underflow double precision within a few dozen steps.
inline CFProfile cf_magnitude_profile(double hurst, double delta, long l,
                                      std::size_t nmax, Kind kind,
                                      double threshold = 1e-6,
                                      long harmonic_bound = kDefaultHarmonicBound) {
    if (!(delta > 0))
        throw DomainError("delta must be positive");
    if (std::labs(l) > harmonic_bound)
        throw DomainError("harmonic l = " + std::to_string(l) +
                          " exceeds configured bound " + std::to_string(harmonic_bound));
    if (nmax < 1)
        throw DomainError("profile needs nmax >= 1");
    if (!(threshold > 0 && threshold < 1))
        throw DomainError("threshold must lie in (0, 1)");
    CFProfile p;
    p.hurst = hurst;
    p.delta = delta;
    p.l = l;
    p.kind = kind;
    p.threshold = threshold;
    p.log_magnitudes.resize(nmax + 1);
    p.magnitudes.resize(nmax + 1);
    if (l == 0) {
        for (std::size_t n = 0; n <= nmax; ++n) {
            p.log_magnitudes[n] = 0.0;
            p.magnitudes[n] = 1.0;
        }
        return p;
    }
    const WeightSequence c = cumulative_coeffs(hurst, nmax, kind);
    const double pi = 3.14159265358979323846;
    const double om = 2.0 * pi * static_cast<double>(l) / delta;
    const double half_om2 = 0.5 * om * om;
    const double log_thresh = std::log(threshold);
    KahanSum csq;
    for (std::size_t n = 0; n <= nmax; ++n) {
        csq.add(c.values[n] * c.values[n]);
        const double lm = -half_om2 * csq.value();
        p.log_magnitudes[n] = lm;
        p.magnitudes[n] = lm < -745.0 ? 0.0 : std::exp(lm);
        if (!p.first_below && lm < log_thresh)
            p.first_below = n;
    }
    return p;
}

struct DichotomyEntry {
    long l = 0;
    bool pass = false;
    std::optional<std::size_t> first_below;
    double final_log_magnitude = 0;
    bool monotone = false;
};

// Limit dichotomy check: the l = 0 profile must be identically one; every
// l != 0 profile must be monotone nonincreasing and sink below the threshold
// by nmax.
inline std::vector<DichotomyEntry> verify_limit_dichotomy(double hurst, double delta,
                                                          const std::vector<long>& l_set,
                                                          std::size_t nmax, Kind kind,
                                                          double threshold = 1e-6) {
    std::vector<DichotomyEntry> out;
    out.reserve(l_set.size());
    for (long l : l_set) {
        const CFProfile p = cf_magnitude_profile(hurst, delta, l, nmax, kind, threshold);
        DichotomyEntry ent;
        ent.l = l;
        ent.final_log_magnitude = p.log_magnitudes.back();
        ent.first_below = p.first_below;
        ent.monotone = true;
        for (std::size_t n = 1; n < p.log_magnitudes.size(); ++n)
            if (p.log_magnitudes[n] > p.log_magnitudes[n - 1])
                ent.monotone = false;
        if (l == 0) {
            bool all_one = true;
            for (double lm : p.log_magnitudes)
                if (lm != 0.0)
                    all_one = false;
            ent.pass = all_one;
        } else {
            ent.pass = ent.monotone && ent.final_log_magnitude < std::log(threshold);
        }
        out.push_back(ent);
    }
    return out;
}

}  // namespace fracq
