#pragma once

// Independent reference implementations the unit tests check the library
// against. Deliberately different algorithms: log-Gamma for the weight
// recurrence, a quadratic-time DFT for the FFT, determinant bisection for the
// Jacobi eigensolver.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

// w_n = Gamma(n+d) / (Gamma(d) Gamma(n+1)) via lgamma, sign tracked
// analytically: for d in (-1/2, 0) the sole negative factor is 1/Gamma(d).
// Not defined at d = 0 (Gamma pole).
inline double log_gamma_weight(double d, std::size_t n) {
    if (d == 0.0)
        throw std::invalid_argument("oracle undefined at d = 0");
    if (n == 0)
        return 1.0;
    // lgamma returns log|Gamma|, so the sign of 1/Gamma(d) is tracked
    // separately; n + d > 0 for every n >= 1 in the valid order range.
    const double sign = d < 0.0 ? -1.0 : 1.0;
    const double val = std::exp(std::lgamma(static_cast<double>(n) + d) - std::lgamma(d) -
                                std::lgamma(static_cast<double>(n) + 1.0));
    return sign * val;
}

inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x, bool inverse = false) {
    const std::size_t n = x.size();
    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> out(n, {0, 0});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = 2.0 * pi * static_cast<double>(k) *
                               static_cast<double>(j) / static_cast<double>(n) *
                               (inverse ? 1.0 : -1.0);
            out[k] += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        if (inverse)
            out[k] /= static_cast<double>(n);
    }
    return out;
}

inline std::vector<double> naive_convolve(const std::vector<double>& a,
                                          const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// det(A - lambda I) by Gaussian elimination with partial pivoting.
inline double char_poly(const std::vector<double>& a_in, std::size_t n, double lambda) {
    std::vector<double> a = a_in;
    for (std::size_t i = 0; i < n; ++i)
        a[i * n + i] -= lambda;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col]))
                piv = r;
        if (a[piv * n + col] == 0.0)
            return 0.0;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a[piv * n + c], a[col * n + c]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c)
                a[r * n + c] -= f * a[col * n + c];
        }
    }
    return det;
}

// All eigenvalues of a small symmetric matrix by scanning the characteristic
// polynomial for sign changes and bisecting each bracket. Assumes distinct
// eigenvalues (true almost surely for the random matrices the tests use).
inline std::vector<double> eigenvalues_bisect(const std::vector<double>& a, std::size_t n) {
    double radius = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < n; ++j)
            row += std::fabs(a[i * n + j]);
        radius = std::max(radius, row);
    }
    radius += 1.0;
    const std::size_t grid = 20000;
    std::vector<double> roots;
    double prev_x = -radius;
    double prev_f = char_poly(a, n, prev_x);
    for (std::size_t g = 1; g <= grid; ++g) {
        const double x = -radius + 2.0 * radius * static_cast<double>(g) /
                                       static_cast<double>(grid);
        const double f = char_poly(a, n, x);
        if ((prev_f < 0 && f > 0) || (prev_f > 0 && f < 0)) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = char_poly(a, n, mid);
                if ((flo < 0 && fm < 0) || (flo > 0 && fm > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        } else if (f == 0.0 && prev_f != 0.0) {
            roots.push_back(x);
        }
        prev_x = x;
        prev_f = f;
    }
    return roots;
}

}  // namespace oracles
