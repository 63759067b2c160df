#pragma once

#include "strokelab/kinematics.hpp"
#include "strokelab/spectrum.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace strokelab {

struct SymmetryResult {
    double si_percent = 0.0;
    double x_left = 0.0;  // mean angle, degrees
    double x_right = 0.0;
    double threshold_percent = 10.0;
    bool symmetric = true; // |si_percent| <= threshold_percent
};

inline constexpr double kDefaultSymmetryThreshold = 10.0;

// SI = (X_right - X_left) / (0.5 (X_right + X_left)) * 100 over mean angles.
SymmetryResult symmetry_index(const AngleSeries& left, const AngleSeries& right,
                              double threshold_percent = kDefaultSymmetryThreshold);

enum class StrokeMethod { fft, peaks };

const char* to_string(StrokeMethod m);

struct StrokeEstimate {
    StrokeMethod method = StrokeMethod::fft;
    double duration = 0.0;                 // seconds per cycle
    std::optional<double> dominant_frequency; // fft only
    std::optional<int> peak_count;            // peaks only
    std::optional<Spectrum> spectrum;         // fft only
};

struct StrokeOptions {
    double f_min = 0.1;  // Hz
    double f_max = 2.0;  // Hz
    double min_separation = 0.5; // s
    double min_prominence = 10.0; // degrees
    double rate_cutoff = 0.9;
    double max_bin_width_hz = kDefaultMaxBinWidthHz;
    std::size_t min_fft_samples = 32;
    double min_fft_span = 5.0; // s
};

StrokeEstimate stroke_duration_fft(const AngleSeries& series, const StrokeOptions& opt = {});
StrokeEstimate stroke_duration_peaks(const AngleSeries& series, const StrokeOptions& opt = {});

// FFT when detection_rate >= opt.rate_cutoff, peak counting otherwise. A failing
// FFT falls back to peak counting before giving up.
StrokeEstimate stroke_duration(const AngleSeries& series, double detection_rate,
                               const StrokeOptions& opt = {});

} // namespace strokelab
