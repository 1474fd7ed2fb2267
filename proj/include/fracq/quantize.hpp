#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fracq/core.hpp"

namespace fracq {

struct QuantizeResult {
    SignalPath quantized;   // kind, hurst, seed carried over from the input
    ErrorSeries error;      // raw normalized error (q - x)/delta
};

// M-level uniform quantizer on [-b, b], reproduction levels -b + k*delta.
// Nearest level wins; exact ties go to the level of larger magnitude (and to
// the nonnegative one when the tie straddles zero). Samples outside [-b, b]
// clip to the end levels and are counted, never dropped: the analysis assumes
// a bounded input, and finite Gaussian paths violate that with positive
// probability.
inline QuantizeResult quantize(const SignalPath& signal, const QuantizerSpec& spec) {
    if (!(spec.delta > 0))
        throw DomainError("quantizer step must be positive");
    QuantizeResult r;
    r.quantized.kind = signal.kind;
    r.quantized.hurst = signal.hurst;
    r.quantized.seed = signal.seed;
    r.quantized.values.resize(signal.values.size());
    r.error.source = ErrorSource::raw;
    r.error.values.resize(signal.values.size());
    const double b = spec.b, delta = spec.delta;
    const long long mtop = spec.m - 1;
    for (std::size_t n = 0; n < signal.values.size(); ++n) {
        const double x = signal.values[n];
        double q;
        if (x < -b) {
            q = -b;
            ++r.error.saturation_count;
        } else if (x > b) {
            q = b;
            ++r.error.saturation_count;
        } else {
            const double t = (x + b) / delta;  // level-index coordinate, >= 0
            double k = std::floor(t);
            const double frac = t - k;
            if (frac > 0.5) {
                k += 1.0;
            } else if (frac == 0.5) {
                const double lo = -b + k * delta;
                const double hi = lo + delta;
                k = (std::fabs(hi) >= std::fabs(lo)) ? k + 1.0 : k;
            }
            if (k < 0)
                k = 0;
            if (k > static_cast<double>(mtop))
                k = static_cast<double>(mtop);
            q = -b + k * delta;
        }
        r.quantized.values[n] = q;
        r.error.values[n] = (q - x) / delta;
    }
    return r;
}

// Normalized sigma-delta error e(n) = 1/2 - <theta(n)>, theta(n) the running
// sum of x(i)/delta + 1/2, <.> the fractional part into [0,1), e mapped into
// (-1/2, 1/2]. theta is reduced mod 1 every step with compensated summation:
// naive accumulation would grow theta to ~1e10 on long paths and shed the
// fractional bits this statistic lives on.
inline ErrorSeries sigma_delta_error(const SignalPath& signal, double delta) {
    if (!(delta > 0))
        throw DomainError("sigma-delta step must be positive");
    ErrorSeries e;
    e.source = ErrorSource::sigma_delta;
    e.values.resize(signal.values.size());
    double s = 0.0, c = 0.0;
    for (std::size_t n = 0; n < signal.values.size(); ++n) {
        const double u = signal.values[n] / delta + 0.5;
        const double y = u - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t - std::floor(t);  // exact: subtracting the integer part
        double frac = s - c;    // fold the compensation back in
        frac -= std::floor(frac);
        double val = 0.5 - frac;
        if (val <= -0.5)
            val += 1.0;
        e.values[n] = val;
    }
    return e;
}

// High-resolution quantizer rule: full-range (no saturation) with the step
// tied to the signal's local spread, ratio defaulting to 1/16. Spread is the
// standard deviation of the first differences for fBm (the path itself ranges
// far wider than its moves) and of the samples for fGn/white.
inline QuantizerSpec high_resolution_spec(const SignalPath& signal, double ratio = 1.0 / 16.0) {
    if (!(ratio > 0))
        throw DomainError("high-resolution ratio must be positive");
    if (signal.values.size() < 2)
        throw DomainError("high-resolution rule needs at least 2 samples");
    double b = 0;
    for (double v : signal.values)
        b = std::max(b, std::fabs(v));
    double mean = 0, sq = 0;
    std::size_t cnt = 0;
    if (signal.kind == Kind::fbm) {
        for (std::size_t n = 1; n < signal.values.size(); ++n) {
            const double d = signal.values[n] - signal.values[n - 1];
            mean += d;
            ++cnt;
        }
        mean /= static_cast<double>(cnt);
        for (std::size_t n = 1; n < signal.values.size(); ++n) {
            const double d = signal.values[n] - signal.values[n - 1] - mean;
            sq += d * d;
        }
    } else {
        for (double v : signal.values) {
            mean += v;
            ++cnt;
        }
        mean /= static_cast<double>(cnt);
        for (double v : signal.values)
            sq += (v - mean) * (v - mean);
    }
    const double spread = std::sqrt(sq / static_cast<double>(cnt));
    if (!(spread > 0) || !(b > 0))
        throw DomainError("constant signal has no spread to key the step to");
    const double target = ratio * spread;
    // smallest odd M with 2b/(M-1) <= target
    long long m = static_cast<long long>(std::ceil(2.0 * b / target)) + 1;
    if (m < 3)
        m = 3;
    if (m % 2 == 0)
        ++m;
    while (2.0 * b / static_cast<double>(m - 1) > target)
        m += 2;
    return QuantizerSpec::from_levels(b, m);
}

// Exact unit-step quantizer for the figure settings: M grows to cover the
// path and b = (M-1)/2 makes delta exactly 1.
inline QuantizerSpec unit_step_spec(const SignalPath& signal) {
    double b = 0;
    for (double v : signal.values)
        b = std::max(b, std::fabs(v));
    long long m = static_cast<long long>(std::ceil(2.0 * b)) + 1;
    if (m < 3)
        m = 3;
    if (m % 2 == 0)
        ++m;
    return QuantizerSpec::from_levels(static_cast<double>(m - 1) / 2.0, m);
}

}  // namespace fracq
