#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter or input outside the documented domain. CLI maps this to exit 1.
class DomainError : public Error {
public:
    using Error::Error;
};

// Request exceeds a configured ceiling (e.g. FRACQ_MAX_N).
class ResourceError : public Error {
public:
    using Error::Error;
};

// File or stream problem. CLI maps this to exit 2.
class IoError : public Error {
public:
    using Error::Error;
};

// Numeric evidence does not support any classification; never guessed over.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

// Input is valid but outside the regime where the formula applies.
class OutOfRegimeError : public Error {
public:
    using Error::Error;
};

enum class Kind { white, fgn, fbm };

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::white: return "white";
    case Kind::fgn: return "fgn";
    case Kind::fbm: return "fbm";
    }
    return "?";
}

struct SignalPath {
    std::vector<double> values;
    Kind kind = Kind::white;
    double hurst = std::numeric_limits<double>::quiet_NaN();  // NaN when absent
    std::uint64_t seed = 0;

    std::size_t length() const { return values.size(); }
};

enum class ErrorSource { raw, sigma_delta };

struct ErrorSeries {
    std::vector<double> values;
    ErrorSource source = ErrorSource::raw;
    std::uint64_t saturation_count = 0;

    std::size_t length() const { return values.size(); }
};

struct QuantizerSpec {
    double b = 0;       // half-range
    long long m = 0;    // level count
    double delta = 0;   // step, 2b/(M-1)

    static QuantizerSpec from_levels(double b, long long m) {
        if (!(b > 0) || !std::isfinite(b))
            throw DomainError("quantizer half-range must be positive and finite");
        if (m < 2)
            throw DomainError("quantizer needs at least 2 levels, got " + std::to_string(m));
        QuantizerSpec s;
        s.b = b;
        s.m = m;
        s.delta = 2.0 * b / static_cast<double>(m - 1);
        return s;
    }

    bool midtread() const { return m % 2 == 1; }
};

struct KahanSum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

struct OlsFit {
    double slope = 0;
    double intercept = 0;
    double sse = 0;
};

inline OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("ols needs two equally sized series of length >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0)
        throw DomainError("ols abscissas are all equal");
    OlsFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        f.sse += r * r;
    }
    return f;
}

inline constexpr std::uint64_t kDefaultMaxN = 1ull << 22;

// Sequence-length ceiling, overridable via FRACQ_MAX_N.
inline std::uint64_t max_n_cap() {
    if (const char* env = std::getenv("FRACQ_MAX_N")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return kDefaultMaxN;
}

inline void check_length_cap(std::uint64_t n, const char* what) {
    const std::uint64_t cap = max_n_cap();
    if (n > cap)
        throw ResourceError(std::string(what) + " length " + std::to_string(n) +
                            " exceeds FRACQ_MAX_N cap " + std::to_string(cap));
}

}  // namespace fracq
