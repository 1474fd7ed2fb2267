#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fracq/core.hpp"
#include "fracq/fft.hpp"
#include "fracq/rng.hpp"
#include "fracq/weights.hpp"

namespace fracq {

// The O(n^2) convolution is the reference route; the FFT route is an opt-in
// fast path that must agree with it to 1e-9 (asserted in the tests) and stays
// off by default.
enum class ConvRoute { naive, fft };

inline void check_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw DomainError("Hurst exponent must lie in (0, 1), got " +
                          std::to_string(hurst));
}

inline SignalPath gaussian_white(std::size_t length, std::uint64_t seed) {
    if (length < 1)
        throw DomainError("signal length must be >= 1");
    check_length_cap(length, "white noise");
    SignalPath p;
    p.kind = Kind::white;
    p.seed = seed;
    p.values.resize(length);
    Rng rng(seed);
    for (auto& v : p.values)
        v = rng.normal();
    return p;
}

// Directly sampled U[-1/2, 1/2) series, the analytics self-calibration input.
inline std::vector<double> uniform_centered_series(std::size_t length,
                                                   std::uint64_t seed) {
    if (length < 1)
        throw DomainError("series length must be >= 1");
    check_length_cap(length, "uniform series");
    std::vector<double> v(length);
    Rng rng(seed);
    for (auto& x : v)
        x = rng.uniform_centered();
    return v;
}

namespace detail {

inline std::vector<double> convolve_truncated(const std::vector<double>& w,
                                              const std::vector<double>& x,
                                              ConvRoute route) {
    const std::size_t n = x.size();
    std::vector<double> out(n);
    if (route == ConvRoute::fft) {
        std::vector<double> full = convolve_fft(w, x);
        full.resize(n);
        return full;
    }
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum acc;
        for (std::size_t j = 0; j <= i; ++j)
            acc.add(w[i - j] * x[j]);
        out[i] = acc.value();
    }
    return out;
}

}  // namespace detail

// Truncated moving average of white noise with the fractional weights,
// W(i) = 0 for i < 0. H = 1/2 collapses to the white path itself, exactly.
inline SignalPath fgn(double hurst, std::size_t length, std::uint64_t seed,
                      ConvRoute route = ConvRoute::naive) {
    check_hurst(hurst);
    SignalPath white = gaussian_white(length, seed);
    if (hurst == 0.5) {
        white.kind = Kind::fgn;
        white.hurst = hurst;
        return white;
    }
    const WeightSequence w = weights(hurst - 0.5, length - 1);
    SignalPath p;
    p.kind = Kind::fgn;
    p.hurst = hurst;
    p.seed = seed;
    p.values = detail::convolve_truncated(w.values, white.values, route);
    return p;
}

// Running sum of the fGn path (compensated, so differencing recovers the fGn
// values to a rounding error of the path scale rather than bitwise).
inline SignalPath fbm(double hurst, std::size_t length, std::uint64_t seed,
                      ConvRoute route = ConvRoute::naive) {
    SignalPath g = fgn(hurst, length, seed, route);
    SignalPath p;
    p.kind = Kind::fbm;
    p.hurst = hurst;
    p.seed = seed;
    p.values.resize(length);
    KahanSum acc;
    for (std::size_t n = 0; n < length; ++n) {
        acc.add(g.values[n]);
        p.values[n] = acc.value();
    }
    return p;
}

// Equivalence route for fBm: direct convolution of the white path with the
// partial-sum coefficients. Exists to be tested against fbm(), not for use.
inline std::vector<double> fbm_by_partial_sum_convolution(double hurst,
                                                          std::size_t length,
                                                          std::uint64_t seed,
                                                          ConvRoute route = ConvRoute::naive) {
    check_hurst(hurst);
    SignalPath white = gaussian_white(length, seed);
    const WeightSequence s = partial_sums(weights(hurst - 0.5, length - 1));
    return detail::convolve_truncated(s.values, white.values, route);
}

inline std::vector<double> first_difference(const SignalPath& p) {
    if (p.values.empty())
        throw DomainError("cannot difference an empty path");
    std::vector<double> d(p.values.size());
    d[0] = p.values[0];
    for (std::size_t n = 1; n < p.values.size(); ++n)
        d[n] = p.values[n] - p.values[n - 1];
    return d;
}

}  // namespace fracq
