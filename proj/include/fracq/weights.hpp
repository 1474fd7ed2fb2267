#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fracq/core.hpp"

namespace fracq {

// Fractional-difference weight sequence w_n = Gamma(n+d) / (Gamma(d) Gamma(n+1)).
// Admissible d is (-1/2, 5/2) so the same type also holds the first and second
// partial-sum sequences (orders d+1 and d+2) used by the characteristic-function
// profiles.
struct WeightSequence {
    double d = 0;
    std::vector<double> values;

    std::size_t nmax() const { return values.empty() ? 0 : values.size() - 1; }
};

inline constexpr double kWeightOrderMin = -0.5;
inline constexpr double kWeightOrderMax = 2.5;

inline void check_weight_order(double d) {
    if (!(d > kWeightOrderMin && d < kWeightOrderMax))
        throw DomainError("fractional order d = " + std::to_string(d) +
                          " outside (-1/2, 5/2)");
}

// Multiplicative recurrence w_0 = 1, w_n = w_{n-1} (n-1+d)/n. Never evaluates
// Gamma directly: the ratio recurrence has no pole at d = 0 and no overflow.
inline WeightSequence weights(double d, std::size_t nmax) {
    check_weight_order(d);
    check_length_cap(nmax + 1, "weight sequence");
    WeightSequence w;
    w.d = d;
    w.values.resize(nmax + 1);
    w.values[0] = 1.0;
    for (std::size_t n = 1; n <= nmax; ++n)
        w.values[n] = w.values[n - 1] * ((static_cast<double>(n) - 1.0 + d) /
                                         static_cast<double>(n));
    return w;
}

// Running sums; by the hockey-stick identity the output is the order-(d+1)
// weight sequence, which is how callers should read its d field.
inline WeightSequence partial_sums(const WeightSequence& w) {
    WeightSequence out;
    out.d = w.d + 1.0;
    out.values.resize(w.values.size());
    KahanSum acc;
    for (std::size_t n = 0; n < w.values.size(); ++n) {
        acc.add(w.values[n]);
        out.values[n] = acc.value();
    }
    return out;
}

enum class TailClass { vanishes, constant_one, exceeds_eta_infinitely_often };

inline const char* tail_class_name(TailClass t) {
    switch (t) {
    case TailClass::vanishes: return "vanishes";
    case TailClass::constant_one: return "constant_one";
    case TailClass::exceeds_eta_infinitely_often: return "exceeds_eta_infinitely_often";
    }
    return "?";
}

// Classifies the tail behaviour of the partial sums of weights(d).
// d = 0 is exact (partial sums identically 1) and accepted at any nmax; the
// asymptotic classifications require nmax >= 1000 so the tail regime is
// visible. "Infinitely often" is operationalized on finite data as: the
// indices with |S_n| > eta keep a density >= 1/2 over the last half of the
// range while |S_n| is still growing.
inline TailClass classify_tail(double d, std::size_t nmax, double eta) {
    check_weight_order(d);
    if (!(eta > 0))
        throw DomainError("eta must be positive");
    if (d == 0.0)
        return TailClass::constant_one;
    if (nmax < 1000)
        throw DomainError("asymptotic tail classification needs nmax >= 1000, got " +
                          std::to_string(nmax));
    const WeightSequence s = partial_sums(weights(d, nmax));
    const std::size_t half = nmax / 2;
    std::size_t above = 0;
    bool nonincreasing = true, nondecreasing = true;
    for (std::size_t n = half; n <= nmax; ++n) {
        if (std::fabs(s.values[n]) > eta)
            ++above;
        if (n > half) {
            if (std::fabs(s.values[n]) > std::fabs(s.values[n - 1]))
                nonincreasing = false;
            if (std::fabs(s.values[n]) < std::fabs(s.values[n - 1]))
                nondecreasing = false;
        }
    }
    const double density = static_cast<double>(above) /
                           static_cast<double>(nmax - half + 1);
    if (density >= 0.5 && nondecreasing)
        return TailClass::exceeds_eta_infinitely_often;
    const double tail_mag = std::fabs(s.values[nmax]);
    const double half_mag = std::fabs(s.values[half]);
    if (nonincreasing && tail_mag < eta && tail_mag < 0.9 * half_mag)
        return TailClass::vanishes;
    throw InconclusiveError(
        "tail behaviour at d = " + std::to_string(d) + ", nmax = " +
        std::to_string(nmax) + ", eta = " + std::to_string(eta) +
        " is inconclusive: density above eta = " + std::to_string(density) +
        ", |S(nmax)| = " + std::to_string(tail_mag));
}

struct LowerBoundReport {
    // holds[n-1] says whether S_n >= 1/sqrt(n), for n in [1, nmax].
    std::vector<bool> holds;
    std::vector<double> partial;  // S_n for n in [1, nmax]
    bool all = false;             // conjunction over every reported index

    bool holds_from(std::size_t n0) const {
        for (std::size_t n = n0; n <= holds.size(); ++n)
            if (!holds[n - 1])
                return false;
        return true;
    }
    std::vector<std::size_t> failing_indices(std::size_t n0 = 1) const {
        std::vector<std::size_t> out;
        for (std::size_t n = n0; n <= holds.size(); ++n)
            if (!holds[n - 1])
                out.push_back(n);
        return out;
    }
};

// Per-index check of the convergence-speed bound S_n >= 1/sqrt(n), where S_n
// is the n-th partial sum of weights(H - 1/2). Reported per index because the
// bound's constants and starting index are not nailed down analytically; the
// bound genuinely fails at small n for small H (see the tests for measured
// boundaries).
inline LowerBoundReport lower_bound_holds(double hurst, std::size_t nmax) {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw DomainError("lower bound is defined for H in (0, 1/2), got " +
                          std::to_string(hurst));
    if (nmax < 1)
        throw DomainError("nmax must be >= 1");
    const WeightSequence s = partial_sums(weights(hurst - 0.5, nmax));
    LowerBoundReport r;
    r.holds.resize(nmax);
    r.partial.resize(nmax);
    r.all = true;
    for (std::size_t n = 1; n <= nmax; ++n) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(n));
        r.partial[n - 1] = s.values[n];
        r.holds[n - 1] = s.values[n] >= bound;
        if (!r.holds[n - 1])
            r.all = false;
    }
    return r;
}

}  // namespace fracq
