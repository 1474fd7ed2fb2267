#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fracq/core.hpp"

namespace fracq {

struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major

    explicit Matrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double trace() const {
        KahanSum t;
        for (std::size_t i = 0; i < n; ++i)
            t.add(at(i, i));
        return t.value();
    }
};

enum class AnchorMode { automatic, on, off };

inline const char* anchor_mode_name(AnchorMode m) {
    switch (m) {
    case AnchorMode::automatic: return "auto";
    case AnchorMode::on: return "on";
    case AnchorMode::off: return "off";
    }
    return "?";
}

// Windowed-ensemble auto-correlation matrix: L = floor(length/K) non-overlapping
// windows, entry (i,j) = (1/L) sum_w x_w(i) x_w(j), no mean removal.
//
// For fbm-kind inputs (AnchorMode::automatic) each window is first anchored by
// subtracting the sample immediately preceding it (zero for the first window,
// exact for a path that starts at the origin). fBm is non-stationary: without
// anchoring the window-start offsets, whose variance grows like (wK)^{2H}
// across the ensemble, swamp the low-rank structure and steepen the fitted
// power law well past -(2H+1). With anchoring, stationary increments make each
// entry an unbiased estimate of E[B(i+1) B(j+1)], the process auto-correlation
// itself. Stationary kinds are left raw, where the plain second moment is
// already the estimator.
inline Matrix covariance_matrix(const SignalPath& x, std::size_t window_len,
                                AnchorMode mode = AnchorMode::automatic) {
    const std::size_t n = x.values.size();
    if (window_len < 1)
        throw DomainError("window length must be >= 1");
    if (n < 4 * window_len)
        throw DomainError("need length >= 4K; length " + std::to_string(n) +
                          ", K = " + std::to_string(window_len));
    const bool anchored =
        mode == AnchorMode::on ||
        (mode == AnchorMode::automatic && x.kind == Kind::fbm);
    const std::size_t L = n / window_len;
    Matrix m(window_len);
    std::vector<double> win(window_len);
    for (std::size_t w = 0; w < L; ++w) {
        const std::size_t base = w * window_len;
        const double anchor = (anchored && base > 0) ? x.values[base - 1] : 0.0;
        for (std::size_t i = 0; i < window_len; ++i)
            win[i] = x.values[base + i] - (anchored ? anchor : 0.0);
        for (std::size_t i = 0; i < window_len; ++i)
            for (std::size_t j = i; j < window_len; ++j)
                m.at(i, j) += win[i] * win[j];
    }
    const double inv = 1.0 / static_cast<double>(L);
    for (std::size_t i = 0; i < window_len; ++i)
        for (std::size_t j = i; j < window_len; ++j) {
            m.at(i, j) *= inv;
            m.at(j, i) = m.at(i, j);
        }
    return m;
}

struct EigenSpectrum {
    std::vector<double> eigenvalues;  // sorted descending
    std::size_t window_len = 0;       // K
    std::size_t windows = 0;          // L, 0 when the matrix did not come from windows
    double slope = std::numeric_limits<double>::quiet_NaN();
    std::size_t fit_lo = 0, fit_hi = 0;
};

// Cyclic Jacobi eigensolver. Input must be symmetric to 1e-10 relative; sweeps
// run until the off-diagonal Frobenius mass falls below 1e-12 of the matrix
// norm. Matrices here are at most a few hundred square, where Jacobi is exact
// enough and self-contained.
inline EigenSpectrum eigenvalues_symmetric(const Matrix& input) {
    const std::size_t n = input.n;
    if (n == 0)
        throw DomainError("empty matrix");
    double maxabs = 0;
    for (double v : input.a)
        maxabs = std::max(maxabs, std::fabs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(input.at(i, j) - input.at(j, i)) > 1e-10 * std::max(maxabs, 1e-300))
                throw DomainError("matrix is not symmetric at (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ")");
    Matrix m = input;
    double fro = 0;
    for (double v : m.a)
        fro += v * v;
    fro = std::sqrt(fro);
    const double tol = 1e-12 * std::max(fro, 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                off += 2.0 * m.at(i, j) * m.at(i, j);
        if (std::sqrt(off) <= tol)
            break;
        if (sweep == 99)
            throw ResourceError("Jacobi eigensolver failed to converge in 100 sweeps");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (apq == 0.0)
                    continue;
                const double app = m.at(p, p), aqq = m.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    EigenSpectrum spec;
    spec.window_len = n;
    spec.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        spec.eigenvalues[i] = m.at(i, i);
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), std::greater<double>());
    return spec;
}

// OLS of log(lambda_k) on log(k) over ranks [k_min, k_max]; k_max = 0 means
// the default floor(K/2). Records the fit into the spectrum and returns it.
inline double fit_power_law(EigenSpectrum& spec, std::size_t k_min = 2,
                            std::size_t k_max = 0) {
    const std::size_t K = spec.eigenvalues.size();
    if (k_max == 0)
        k_max = K / 2;
    if (k_min < 1 || k_min >= k_max || k_max > K)
        throw DomainError("power-law fit range [" + std::to_string(k_min) + ", " +
                          std::to_string(k_max) + "] invalid for K = " + std::to_string(K));
    std::vector<double> lx, ly;
    lx.reserve(k_max - k_min + 1);
    ly.reserve(k_max - k_min + 1);
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const double ev = spec.eigenvalues[k - 1];
        if (!(ev > 0))
            throw DomainError("nonpositive eigenvalue at rank " + std::to_string(k) +
                              " inside the fit range");
        lx.push_back(std::log(static_cast<double>(k)));
        ly.push_back(std::log(ev));
    }
    spec.slope = ols(lx, ly).slope;
    spec.fit_lo = k_min;
    spec.fit_hi = k_max;
    return spec.slope;
}

// Inverts lambda_k ~ k^{-(2H+1)}; only meaningful on the fBm side of the
// spectrum, i.e. slopes steeper than -1.
inline double hurst_from_slope(double slope) {
    if (!(slope < -1.0))
        throw OutOfRegimeError("slope " + std::to_string(slope) +
                               " is not in the fBm regime (needs slope < -1)");
    return -(slope + 1.0) / 2.0;
}

struct CrossoverReport {
    std::size_t breakpoint = 0;  // last rank of the left segment
    double slope_left = 0;
    double slope_right = 0;
    double sse_ratio = 1.0;  // one-segment SSE / best two-segment SSE
};

// Exhaustive two-segment log-log fit over breakpoints k* in [4, K-4]; ranks
// with nonpositive eigenvalues (numerical floor of the ensemble estimate) are
// truncated off the tail before fitting.
inline CrossoverReport crossover_detect(const EigenSpectrum& spec) {
    const std::size_t K = spec.eigenvalues.size();
    if (K < 16)
        throw DomainError("crossover detection needs K >= 16, got " + std::to_string(K));
    std::size_t kpos = 0;
    while (kpos < K && spec.eigenvalues[kpos] > 0)
        ++kpos;
    if (kpos < 16)
        throw DomainError("crossover detection needs at least 16 positive eigenvalues");
    std::vector<double> lx(kpos), ly(kpos);
    for (std::size_t k = 0; k < kpos; ++k) {
        lx[k] = std::log(static_cast<double>(k + 1));
        ly[k] = std::log(spec.eigenvalues[k]);
    }
    const OlsFit one = ols(lx, ly);
    CrossoverReport best;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t kstar = 4; kstar + 4 <= kpos; ++kstar) {
        std::vector<double> lxl(lx.begin(), lx.begin() + kstar);
        std::vector<double> lyl(ly.begin(), ly.begin() + kstar);
        std::vector<double> lxr(lx.begin() + kstar, lx.end());
        std::vector<double> lyr(ly.begin() + kstar, ly.end());
        const OlsFit left = ols(lxl, lyl);
        const OlsFit right = ols(lxr, lyr);
        const double total = left.sse + right.sse;
        if (total < best_total) {
            best_total = total;
            best.breakpoint = kstar;
            best.slope_left = left.slope;
            best.slope_right = right.slope;
        }
    }
    if (one.sse <= 1e-15)
        best.sse_ratio = 1.0;  // single line already fits, nothing to gain
    else if (best_total > 0)
        best.sse_ratio = one.sse / best_total;
    else
        best.sse_ratio = std::numeric_limits<double>::infinity();
    return best;
}

}  // namespace fracq
