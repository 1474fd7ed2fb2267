#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fracq/core.hpp"
#include "fracq/fft.hpp"

namespace fracq {

struct UniformityResult {
    double ks_statistic = 0;
    double threshold = 0;   // 1.63/sqrt(N), asymptotic Kolmogorov quantile at alpha = 0.01
    bool pass = false;
    double sample_mean = 0;
    double sample_variance = 0;  // biased (1/N), mean-removed
};

// Kolmogorov-Smirnov distance of the empirical CDF against U[-1/2, 1/2].
inline UniformityResult uniformity_test(const ErrorSeries& e) {
    const std::size_t n = e.values.size();
    if (n < 100)
        throw DomainError("uniformity test needs N >= 100, got " + std::to_string(n));
    std::vector<double> sorted = e.values;
    std::sort(sorted.begin(), sorted.end());
    const double dn = static_cast<double>(n);
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = std::clamp(sorted[i] + 0.5, 0.0, 1.0);
        d = std::max(d, (static_cast<double>(i) + 1.0) / dn - f);
        d = std::max(d, f - static_cast<double>(i) / dn);
    }
    UniformityResult r;
    r.ks_statistic = d;
    r.threshold = 1.63 / std::sqrt(dn);
    r.pass = d <= r.threshold;
    KahanSum m;
    for (double v : e.values)
        m.add(v);
    r.sample_mean = m.value() / dn;
    KahanSum sq;
    for (double v : e.values)
        sq.add((v - r.sample_mean) * (v - r.sample_mean));
    r.sample_variance = sq.value() / dn;
    return r;
}

struct CorrelationReport {
    std::vector<double> autocov;   // R(k), k = 0..max_lag, biased 1/N, mean-removed
    std::vector<double> autocorr;  // rho(k) = R(k)/R(0), rho(0) = 1 exactly
    double cross_corr_with_signal = std::numeric_limits<double>::quiet_NaN();
    std::size_t n_samples = 0;

    double max_abs_autocorr_from(std::size_t k0 = 1) const {
        double m = 0;
        for (std::size_t k = k0; k < autocorr.size(); ++k)
            m = std::max(m, std::fabs(autocorr[k]));
        return m;
    }
};

// Autocovariance is the biased 1/N estimator for positive semidefiniteness;
// cross-correlation is the lag-0 Pearson coefficient against the signal.
inline CorrelationReport correlation_report(const ErrorSeries& e,
                                            const SignalPath* signal,
                                            std::size_t max_lag) {
    const std::size_t n = e.values.size();
    if (n == 0)
        throw DomainError("empty error series");
    if (max_lag > n / 10)
        throw DomainError("max_lag " + std::to_string(max_lag) +
                          " exceeds N/10 = " + std::to_string(n / 10));
    if (signal && signal->values.size() != n)
        throw DomainError("error series and signal lengths differ");
    CorrelationReport r;
    r.n_samples = n;
    KahanSum ms;
    for (double v : e.values)
        ms.add(v);
    const double mean = ms.value() / static_cast<double>(n);
    r.autocov.resize(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        KahanSum acc;
        for (std::size_t i = 0; i + k < n; ++i)
            acc.add((e.values[i] - mean) * (e.values[i + k] - mean));
        r.autocov[k] = acc.value() / static_cast<double>(n);
    }
    if (!(r.autocov[0] > 0))
        throw DomainError("error series is constant, autocorrelation undefined");
    r.autocorr.resize(max_lag + 1);
    r.autocorr[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k)
        r.autocorr[k] = r.autocov[k] / r.autocov[0];
    if (signal) {
        double msig = 0;
        for (double v : signal->values)
            msig += v;
        msig /= static_cast<double>(n);
        double see = 0, sss = 0, ses = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = e.values[i] - mean;
            const double b = signal->values[i] - msig;
            see += a * a;
            sss += b * b;
            ses += a * b;
        }
        if (see > 0 && sss > 0)
            r.cross_corr_with_signal = ses / std::sqrt(see * sss);
    }
    return r;
}

struct SpectrumEstimate {
    std::vector<double> frequencies;  // f_k = k/N, k = 1..N/2
    std::vector<double> power;        // |X_k|^2 / N
    double slope_loglog = 0;
    std::size_t k_lo = 0, k_hi = 0;
    double parseval_time = 0;      // sum of x(n)^2 after mean removal
    double parseval_spectral = 0;  // sum over the full DFT of |X_k|^2 / N
};

// Plain rectangular-window periodogram with mean removal; ordinates at the
// positive Fourier frequencies; OLS log-log slope over k in [k_lo, k_hi]
// (defaults 2 and floor(N/2)). k_hi = 0 means the default.
inline SpectrumEstimate periodogram(const std::vector<double>& x,
                                    std::size_t k_lo = 2, std::size_t k_hi = 0) {
    const std::size_t n = x.size();
    if (n < 64)
        throw DomainError("periodogram needs N >= 64, got " + std::to_string(n));
    const std::size_t half = n / 2;
    if (k_hi == 0)
        k_hi = half;
    if (k_lo < 1 || k_lo >= k_hi || k_hi > half)
        throw DomainError("periodogram fit range [" + std::to_string(k_lo) + ", " +
                          std::to_string(k_hi) + "] invalid for N = " + std::to_string(n));
    KahanSum ms;
    for (double v : x)
        ms.add(v);
    const double mean = ms.value() / static_cast<double>(n);
    std::vector<std::complex<double>> a(n);
    double sumsq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i] - mean;
        a[i] = v;
        sumsq += v * v;
    }
    fft(a, false);
    SpectrumEstimate s;
    s.k_lo = k_lo;
    s.k_hi = k_hi;
    s.parseval_time = sumsq;
    double spectral = 0;
    for (std::size_t k = 0; k < n; ++k)
        spectral += std::norm(a[k]);
    s.parseval_spectral = spectral / static_cast<double>(n);
    const double scale = std::max(std::fabs(s.parseval_time), 1e-300);
    if (std::fabs(s.parseval_spectral - s.parseval_time) > 1e-6 * scale)
        throw ResourceError("periodogram failed its Parseval sanity check");
    s.frequencies.resize(half);
    s.power.resize(half);
    for (std::size_t k = 1; k <= half; ++k) {
        s.frequencies[k - 1] = static_cast<double>(k) / static_cast<double>(n);
        s.power[k - 1] = std::norm(a[k]) / static_cast<double>(n);
    }
    std::vector<double> lx, ly;
    lx.reserve(k_hi - k_lo + 1);
    ly.reserve(k_hi - k_lo + 1);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        if (s.power[k - 1] > 0) {
            lx.push_back(std::log(s.frequencies[k - 1]));
            ly.push_back(std::log(s.power[k - 1]));
        }
    }
    if (lx.size() < 2)
        throw DomainError("fewer than two positive periodogram ordinates in fit range");
    s.slope_loglog = ols(lx, ly).slope;
    return s;
}

}  // namespace fracq
