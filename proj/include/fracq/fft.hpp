#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fracq/core.hpp"

namespace fracq {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

namespace detail {

inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2)
        return;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a)
            x *= inv;
    }
}

// Bluestein chirp-z for arbitrary n, built on the radix-2 kernel.
inline void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2)
        return;
    const double pi = 3.14159265358979323846;
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small and exact
        const std::size_t k2 = static_cast<std::size_t>(
            (static_cast<unsigned long long>(k) * k) % (2ull * n));
        const double ang = sign * pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = {std::cos(ang), std::sin(ang)};
    }
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<std::complex<double>> x(m, {0, 0}), y(m, {0, 0});
    for (std::size_t k = 0; k < n; ++k)
        x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k)
        y[k] = y[m - k] = std::conj(chirp[k]);
    fft_radix2(x, false);
    fft_radix2(y, false);
    for (std::size_t k = 0; k < m; ++k)
        x[k] *= y[k];
    fft_radix2(x, true);
    for (std::size_t k = 0; k < n; ++k)
        a[k] = x[k] * chirp[k];
    if (inverse) {
        const double invn = 1.0 / static_cast<double>(n);
        for (auto& v : a)
            v *= invn;
    }
}

}  // namespace detail

// In-place DFT (forward: e^{-2 pi i kn/N}; inverse includes the 1/N factor).
inline void fft(std::vector<std::complex<double>>& a, bool inverse = false) {
    if (a.empty())
        throw DomainError("fft of empty sequence");
    if (is_pow2(a.size()))
        detail::fft_radix2(a, inverse);
    else
        detail::fft_bluestein(a, inverse);
}

// Full linear convolution, length a+b-1, via zero-padded power-of-two FFT.
inline std::vector<double> convolve_fft(const std::vector<double>& a,
                                        const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw DomainError("convolution of empty sequence");
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t m = next_pow2(out_len);
    std::vector<std::complex<double>> fa(m, {0, 0}), fb(m, {0, 0});
    for (std::size_t i = 0; i < a.size(); ++i)
        fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        fb[i] = b[i];
    detail::fft_radix2(fa, false);
    detail::fft_radix2(fb, false);
    for (std::size_t i = 0; i < m; ++i)
        fa[i] *= fb[i];
    detail::fft_radix2(fa, true);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i)
        out[i] = fa[i].real();
    return out;
}

}  // namespace fracq
