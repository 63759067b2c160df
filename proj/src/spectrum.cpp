#include "strokelab/spectrum.hpp"

#include "strokelab/error.hpp"
#include "strokelab/simd/kernels.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <new>
#include <numbers>

namespace strokelab {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

} // namespace

UniformSignal resample_linear(std::span<const AngleSample> samples, double sample_rate) {
    if (samples.empty())
        throw InsufficientData("cannot resample an empty series");
    if (!(sample_rate > 0.0))
        throw InvalidArgument("sample rate must be > 0");

    UniformSignal out;
    out.start_time = samples.front().timestamp;
    out.sample_rate = sample_rate;
    const double span = samples.back().timestamp - out.start_time;
    const auto n = static_cast<std::size_t>(std::floor(span * sample_rate + 1e-9)) + 1;
    out.values.resize(n);

    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = out.start_time + static_cast<double>(i) / sample_rate;
        while (j + 1 < samples.size() && samples[j + 1].timestamp <= t)
            ++j;
        if (j + 1 >= samples.size()) {
            out.values[i] = samples.back().angle;
            continue;
        }
        const auto& a = samples[j];
        const auto& b = samples[j + 1];
        const double w = (t - a.timestamp) / (b.timestamp - a.timestamp);
        out.values[i] = a.angle + w * (b.angle - a.angle);
    }
    return out;
}

std::vector<double> blackman_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2)
        return w;
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * std::numbers::pi * static_cast<double>(i) / denom;
        w[i] = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
    }
    return w;
}

std::size_t padded_fft_length(std::size_t n, double sample_rate, double max_bin_width_hz) {
    constexpr std::size_t kMaxLength = std::size_t{1} << 22;
    const auto needed = static_cast<std::size_t>(std::ceil(sample_rate / max_bin_width_hz));
    std::size_t len = 1;
    while (len < n || len < needed) {
        if (len >= kMaxLength)
            break;
        len <<= 1;
    }
    if (len < n)
        throw InvalidArgument("series too long for the FFT length cap");
    return len;
}

Spectrum tapered_spectrum(std::span<const double> signal, double sample_rate, std::size_t fft_length) {
    const std::size_t n = signal.size();
    if (n == 0 || fft_length < n)
        throw InvalidArgument("FFT length must cover the signal");

    const std::vector<double> window = blackman_window(n);
    const double mean = simd::mean(signal);

    std::unique_ptr<double, FftwFree> in(fftw_alloc_real(fft_length));
    std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(fft_length / 2 + 1));
    if (!in || !out)
        throw std::bad_alloc();

    simd::active().center_and_window(signal.data(), window.data(), mean, in.get(), n);
    std::fill(in.get() + n, in.get() + fft_length, 0.0);

    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(fft_length), in.get(), out.get(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    Spectrum spec;
    spec.bin_width_hz = sample_rate / static_cast<double>(fft_length);
    const std::size_t bins = fft_length / 2 + 1;
    spec.magnitude.resize(bins);
    simd::active().magnitudes(reinterpret_cast<const double*>(out.get()), spec.magnitude.data(), bins);

    const double scale = 2.0 / simd::sum(window);
    for (auto& m : spec.magnitude)
        m *= scale;
    return spec;
}

} // namespace strokelab
