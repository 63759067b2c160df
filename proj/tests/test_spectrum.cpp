#include "strokelab/error.hpp"
#include "strokelab/spectrum.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace strokelab;

TEST_CASE("blackman window values") {
    const auto w5 = blackman_window(5);
    CHECK(w5[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w5[1] == doctest::Approx(0.34));
    CHECK(w5[2] == doctest::Approx(1.0));
    CHECK(w5[3] == doctest::Approx(0.34));

    const auto w8 = blackman_window(8);
    const double ref[] = {-1.3877787807814457e-17, 0.09045342435412808, 0.45918295754596367, 0.9203636180999082,
                          0.9203636180999082,      0.45918295754596367, 0.09045342435412808, -1.3877787807814457e-17};
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(w8[i] - ref[i]) < 1e-15);
}

TEST_CASE("window of one sample") {
    const auto w = blackman_window(1);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == 1.0);
}

TEST_CASE("padded length reaches the requested bin width") {
    CHECK(padded_fft_length(1201, 60.0, 0.01) == 8192);
    CHECK(padded_fft_length(100, 10.0, 0.01) == 1024);
    CHECK(padded_fft_length(5000, 10.0, 0.01) == 8192);
    for (std::size_t n : {32u, 100u, 1201u, 7000u}) {
        const auto len = padded_fft_length(n, 60.0, 0.01);
        CHECK((len & (len - 1)) == 0);
        CHECK(len >= n);
        CHECK(60.0 / static_cast<double>(len) <= 0.01);
    }
}

TEST_CASE("resample is exact on a uniform input") {
    std::vector<AngleSample> s;
    for (int i = 0; i < 10; ++i)
        s.push_back({i / 60.0, 3.0 * i});
    const auto u = resample_linear(s, 60.0);
    REQUIRE(u.values.size() == 10);
    for (int i = 0; i < 10; ++i)
        CHECK(u.values[i] == doctest::Approx(3.0 * i));
}

TEST_CASE("resample interpolates linearly across a gap") {
    const std::vector<AngleSample> s = {{0.0, 0.0}, {0.1, 10.0}, {0.5, 50.0}};
    const auto u = resample_linear(s, 10.0);
    REQUIRE(u.values.size() == 6);
    CHECK(u.start_time == 0.0);
    CHECK(u.values[3] == doctest::Approx(30.0));
    CHECK(u.values[5] == doctest::Approx(50.0));
}

TEST_CASE("resample of a single sample and of nothing") {
    const std::vector<AngleSample> s = {{0.5, 1.0}};
    const auto u = resample_linear(s, 60.0);
    CHECK(u.values == std::vector<double>{1.0});
    CHECK(u.start_time == 0.5);
    CHECK_THROWS_AS(resample_linear({}, 60.0), InsufficientData);
}

TEST_CASE("FFT spectrum matches a direct DFT") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> noise(0.0, 5.0);
    for (std::size_t n : {33u, 100u, 257u, 600u}) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = 180.0 + 60.0 * std::sin(2.0 * test::kPi * 0.7 * i / 30.0) + noise(rng);
        const std::size_t len = padded_fft_length(n, 30.0, 0.05);
        const auto spec = tapered_spectrum(x, 30.0, len);
        CHECK(spec.magnitude.size() == len / 2 + 1);
        CHECK(spec.bin_width_hz == doctest::Approx(30.0 / len));
        std::vector<std::size_t> bins;
        for (std::size_t k = 0; k <= len / 2; k += 7)
            bins.push_back(k);
        bins.push_back(len / 2);
        const auto ref = test::brute_force_spectrum(x, len, bins);
        for (std::size_t j = 0; j < bins.size(); ++j)
            REQUIRE(std::abs(spec.magnitude[bins[j]] - ref[j]) < 1e-9);
    }
}

TEST_CASE("pure tone peaks near its amplitude at its frequency") {
    const double fs = 60.0, f0 = 0.4, amp = 40.0;
    std::vector<double> x(1201);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = amp * std::sin(2.0 * test::kPi * f0 * i / fs);
    const auto spec = tapered_spectrum(x, fs, padded_fft_length(x.size(), fs, 0.01));
    std::size_t best = 1;
    for (std::size_t k = 1; k < spec.magnitude.size(); ++k)
        if (spec.magnitude[k] > spec.magnitude[best])
            best = k;
    CHECK(std::abs(spec.frequency(best) - f0) <= spec.bin_width_hz);
    CHECK(spec.magnitude[best] == doctest::Approx(amp).epsilon(0.02));
}
