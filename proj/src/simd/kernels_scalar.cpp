#include "kernels_internal.hpp"

#include <cmath>

namespace strokelab::simd::detail {
namespace {

double sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i];
    return s;
}

void center_and_window_scalar(const double* in, const double* window, double mean, double* out,
                              std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (in[i] - mean) * window[i];
}

void magnitudes_scalar(const double* interleaved, double* out, std::size_t bins) {
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = interleaved[2 * k];
        const double im = interleaved[2 * k + 1];
        out[k] = std::sqrt(re * re + im * im);
    }
}

inline bool within(std::uint8_t v, std::uint8_t c, std::uint8_t tol) {
    const int d = static_cast<int>(v) - static_cast<int>(c);
    return (d < 0 ? -d : d) <= tol;
}

std::size_t count_color_matches_scalar(const std::uint8_t* rgb, std::size_t pixels, Rgb8 color,
                                       std::uint8_t tolerance) {
    std::size_t count = 0;
    for (std::size_t p = 0; p < pixels; ++p) {
        const std::uint8_t* px = rgb + 3 * p;
        count += within(px[0], color.r, tolerance) && within(px[1], color.g, tolerance) &&
                 within(px[2], color.b, tolerance);
    }
    return count;
}

} // namespace

const KernelTable kScalarTable{
    Isa::scalar, sum_scalar, center_and_window_scalar, magnitudes_scalar,
    count_color_matches_scalar,
};

} // namespace strokelab::simd::detail
