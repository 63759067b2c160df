#pragma once

#include "strokelab/kinematics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace strokelab {

struct UniformSignal {
    double start_time = 0.0;
    double sample_rate = 0.0;
    std::vector<double> values;
};

// Linear interpolation of a time-ordered (possibly gappy) series onto a grid
// start, start + 1/rate, ... covering [first, last].
UniformSignal resample_linear(std::span<const AngleSample> samples, double sample_rate);

// Symmetric Blackman window: 0.42 - 0.5 cos(2 pi n/(N-1)) + 0.08 cos(4 pi n/(N-1)).
std::vector<double> blackman_window(std::size_t n);

// Power-of-two FFT length >= n whose bin width is at most max_bin_width_hz.
std::size_t padded_fft_length(std::size_t n, double sample_rate, double max_bin_width_hz);

inline constexpr double kDefaultMaxBinWidthHz = 0.01;

// One-sided amplitude spectrum (bins 0..N/2).
struct Spectrum {
    double bin_width_hz = 0.0;
    std::vector<double> magnitude;

    double frequency(std::size_t bin) const { return bin_width_hz * static_cast<double>(bin); }
};

// Removes the mean, applies the Blackman taper, zero-pads to fft_length and
// returns |X_k| scaled by 2 / sum(window) (a pure tone of amplitude A peaks near A).
Spectrum tapered_spectrum(std::span<const double> signal, double sample_rate, std::size_t fft_length);

} // namespace strokelab
