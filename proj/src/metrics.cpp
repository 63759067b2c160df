#include "strokelab/metrics.hpp"

#include "strokelab/error.hpp"
#include "strokelab/peaks.hpp"
#include "strokelab/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace strokelab {
namespace {

double mean_angle(const AngleSeries& s) {
    std::vector<double> v;
    v.reserve(s.samples.size());
    for (const auto& a : s.samples)
        v.push_back(a.angle);
    return simd::mean(v);
}

} // namespace

const char* to_string(StrokeMethod m) {
    return m == StrokeMethod::fft ? "fft" : "peaks";
}

SymmetryResult symmetry_index(const AngleSeries& left, const AngleSeries& right, double threshold) {
    if (left.samples.empty() || right.samples.empty())
        throw InsufficientData("symmetry index needs non-empty left and right series");
    SymmetryResult r;
    r.x_left = mean_angle(left);
    r.x_right = mean_angle(right);
    const double total = r.x_right + r.x_left;
    if (total == 0.0)
        throw InsufficientData("symmetry index undefined: mean angles sum to zero");
    // 200 (R - L) / (R + L) is the same ratio with fewer roundings; it keeps the
    // left/right swap an exact negation.
    r.si_percent = 200.0 * (r.x_right - r.x_left) / total;
    r.threshold_percent = threshold;
    r.symmetric = std::abs(r.si_percent) <= threshold;
    return r;
}

StrokeEstimate stroke_duration_fft(const AngleSeries& series, const StrokeOptions& opt) {
    const auto& s = series.samples;
    if (s.size() < opt.min_fft_samples)
        throw InsufficientData("FFT needs at least " + std::to_string(opt.min_fft_samples) +
                               " samples, got " + std::to_string(s.size()));
    const double span = s.back().timestamp - s.front().timestamp;
    if (span < opt.min_fft_span)
        throw InsufficientData("FFT needs a series spanning at least " +
                               std::to_string(opt.min_fft_span) + " s");

    const UniformSignal grid = resample_linear(s, series.source_fps);
    const auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
    if (*hi - *lo <= 1e-9)
        throw InsufficientData("no dominant frequency: series is constant");

    const std::size_t len = padded_fft_length(grid.values.size(), series.source_fps, opt.max_bin_width_hz);
    Spectrum spec = tapered_spectrum(grid.values, series.source_fps, len);

    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < spec.magnitude.size(); ++k) {
        const double f = spec.frequency(k);
        if (f < opt.f_min || f > opt.f_max)
            continue;
        if (!best || spec.magnitude[k] > spec.magnitude[*best])
            best = k;
    }
    if (!best)
        throw InsufficientData("no spectral bin inside the search band");
    if (!(spec.magnitude[*best] > 0.0))
        throw InsufficientData("no dominant frequency: empty spectrum in band");

    StrokeEstimate e;
    e.method = StrokeMethod::fft;
    e.dominant_frequency = spec.frequency(*best);
    e.duration = 1.0 / *e.dominant_frequency;
    e.spectrum = std::move(spec);
    return e;
}

StrokeEstimate stroke_duration_peaks(const AngleSeries& series, const StrokeOptions& opt) {
    const auto& s = series.samples;
    if (s.empty())
        throw InsufficientData("peak counting needs a non-empty series");
    const double span = s.back().timestamp - s.front().timestamp;
    if (!(span > 0.0))
        throw InsufficientData("peak counting needs a series with positive time span");

    std::vector<Peak> peaks = select_peaks(find_local_maxima(s), opt.min_prominence, opt.min_separation);

    // Never imply a cadence faster than min_separation.
    if (opt.min_separation > 0.0) {
        const auto cap = static_cast<std::size_t>(std::floor(span / opt.min_separation));
        if (peaks.size() > cap) {
            std::stable_sort(peaks.begin(), peaks.end(),
                             [](const Peak& a, const Peak& b) { return a.value > b.value; });
            peaks.resize(cap);
        }
    }
    if (peaks.empty())
        throw InsufficientData("no peaks found");

    StrokeEstimate e;
    e.method = StrokeMethod::peaks;
    e.peak_count = static_cast<int>(peaks.size());
    e.duration = span / static_cast<double>(peaks.size());
    return e;
}

StrokeEstimate stroke_duration(const AngleSeries& series, double detection_rate, const StrokeOptions& opt) {
    if (detection_rate >= opt.rate_cutoff) {
        try {
            return stroke_duration_fft(series, opt);
        } catch (const InsufficientData&) {
            // fall through to peak counting
        }
    }
    return stroke_duration_peaks(series, opt);
}

} // namespace strokelab
