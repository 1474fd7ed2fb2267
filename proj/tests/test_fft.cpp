#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "fracq/fft.hpp"
#include "fracq/rng.hpp"
#include "oracles.hpp"

using namespace fracq;

namespace {

std::vector<std::complex<double>> random_complex(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::complex<double>> out(n);
    for (auto& v : out)
        v = {rng.uniform_centered(), rng.uniform_centered()};
    return out;
}

double max_abs_diff(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("fft matches the quadratic DFT on power-of-two sizes") {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{4},
                          std::size_t{8}, std::size_t{64}, std::size_t{256}}) {
        auto x = random_complex(n, 100 + n);
        const auto ref = oracles::naive_dft(x);
        fft(x);
        REQUIRE(max_abs_diff(x, ref) <= 1e-9);
    }
}

TEST_CASE("fft matches the quadratic DFT on arbitrary sizes") {
    for (std::size_t n : {std::size_t{3}, std::size_t{5}, std::size_t{6},
                          std::size_t{12}, std::size_t{100}, std::size_t{257},
                          std::size_t{1000}}) {
        auto x = random_complex(n, 200 + n);
        const auto ref = oracles::naive_dft(x);
        fft(x);
        REQUIRE(max_abs_diff(x, ref) <= 1e-9);

        auto y = ref;
        const auto back = oracles::naive_dft(y, true);
        fft(y, true);
        REQUIRE(max_abs_diff(y, back) <= 1e-9);
    }
}

TEST_CASE("fft round trip recovers the input") {
    for (std::size_t n : {std::size_t{8}, std::size_t{12}, std::size_t{257}}) {
        const auto orig = random_complex(n, 300 + n);
        auto x = orig;
        fft(x);
        fft(x, true);
        REQUIRE(max_abs_diff(x, orig) <= 1e-12);
    }
}

TEST_CASE("fft of an impulse is flat") {
    std::vector<std::complex<double>> x(16, {0, 0});
    x[0] = 1.0;
    fft(x);
    for (const auto& v : x) {
        REQUIRE(v.real() == Catch::Approx(1.0).margin(1e-14));
        REQUIRE(v.imag() == Catch::Approx(0.0).margin(1e-14));
    }
}

TEST_CASE("fft preserves energy") {
    for (std::size_t n : {std::size_t{64}, std::size_t{100}}) {
        auto x = random_complex(n, 400 + n);
        double time_energy = 0;
        for (const auto& v : x)
            time_energy += std::norm(v);
        fft(x);
        double freq_energy = 0;
        for (const auto& v : x)
            freq_energy += std::norm(v);
        freq_energy /= static_cast<double>(n);
        REQUIRE(freq_energy == Catch::Approx(time_energy).epsilon(1e-12));
    }
}

TEST_CASE("fft convolution matches the direct sum") {
    Rng rng(77);
    for (auto [na, nb] : {std::pair<std::size_t, std::size_t>{1, 1},
                          {5, 3},
                          {17, 64},
                          {200, 33},
                          {1000, 1000}}) {
        std::vector<double> a(na), b(nb);
        for (auto& v : a)
            v = rng.uniform_centered();
        for (auto& v : b)
            v = rng.uniform_centered();
        const auto ref = oracles::naive_convolve(a, b);
        const auto got = convolve_fft(a, b);
        REQUIRE(got.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i)
            REQUIRE(std::fabs(got[i] - ref[i]) <= 1e-9);
    }
}

TEST_CASE("fft rejects empty input") {
    std::vector<std::complex<double>> empty;
    REQUIRE_THROWS_AS(fft(empty), DomainError);
    REQUIRE_THROWS_AS(convolve_fft({}, {1.0}), DomainError);
    REQUIRE_THROWS_AS(convolve_fft({1.0}, {}), DomainError);
}
