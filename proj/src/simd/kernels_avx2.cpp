#include "kernels_internal.hpp"

#include <immintrin.h>

#include <array>
#include <cmath>

namespace strokelab::simd::detail {
namespace {

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    if (i + 4 <= n) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        i += 4;
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    for (; i < n; ++i)
        s += x[i];
    return s;
}

void center_and_window_avx2(const double* in, const double* window, double mean, double* out,
                            std::size_t n) {
    const __m256d m = _mm256_set1_pd(mean);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(in + i), m);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(v, _mm256_loadu_pd(window + i)));
    }
    for (; i < n; ++i)
        out[i] = (in[i] - mean) * window[i];
}

void magnitudes_avx2(const double* interleaved, double* out, std::size_t bins) {
    std::size_t k = 0;
    for (; k + 4 <= bins; k += 4) {
        const __m256d a = _mm256_loadu_pd(interleaved + 2 * k);     // re0 im0 re1 im1
        const __m256d b = _mm256_loadu_pd(interleaved + 2 * k + 4); // re2 im2 re3 im3
        // hadd -> |x0|^2 |x2|^2 |x1|^2 |x3|^2
        const __m256d power = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        const __m256d ordered = _mm256_permute4x64_pd(power, 0xD8);
        _mm256_storeu_pd(out + k, _mm256_sqrt_pd(ordered));
    }
    for (; k < bins; ++k) {
        const double re = interleaved[2 * k];
        const double im = interleaved[2 * k + 1];
        out[k] = std::sqrt(re * re + im * im);
    }
}

inline std::uint32_t within_mask(__m256i bytes, __m256i color, __m256i tol) {
    const __m256i diff = _mm256_sub_epi8(_mm256_max_epu8(bytes, color), _mm256_min_epu8(bytes, color));
    const __m256i ok = _mm256_cmpeq_epi8(_mm256_min_epu8(diff, tol), diff);
    return static_cast<std::uint32_t>(_mm256_movemask_epi8(ok));
}

// 32 pixels = 96 bytes = three registers; the channel of byte i in register j
// is (32 * j + i) % 3.
std::size_t count_color_matches_avx2(const std::uint8_t* rgb, std::size_t pixels, Rgb8 color,
                                     std::uint8_t tolerance) {
    const std::array<std::uint8_t, 3> channels{color.r, color.g, color.b};
    alignas(32) std::array<std::array<std::uint8_t, 32>, 3> pattern{};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 32; ++i)
            pattern[j][i] = channels[(32 * j + i) % 3];
    const __m256i c0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern[0].data()));
    const __m256i c1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern[1].data()));
    const __m256i c2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern[2].data()));
    const __m256i tol = _mm256_set1_epi8(static_cast<char>(tolerance));

    unsigned __int128 starts = 0; // bits 0, 3, ..., 93
    for (int b = 0; b < 96; b += 3)
        starts |= static_cast<unsigned __int128>(1) << b;

    std::size_t count = 0;
    std::size_t p = 0;
    for (; p + 32 <= pixels; p += 32) {
        const std::uint8_t* base = rgb + 3 * p;
        const auto m0 = within_mask(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(base)), c0, tol);
        const auto m1 = within_mask(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + 32)), c1, tol);
        const auto m2 = within_mask(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + 64)), c2, tol);
        const unsigned __int128 m = static_cast<unsigned __int128>(m0) |
                                    (static_cast<unsigned __int128>(m1) << 32) |
                                    (static_cast<unsigned __int128>(m2) << 64);
        const unsigned __int128 all = m & (m >> 1) & (m >> 2) & starts;
        count += static_cast<std::size_t>(__builtin_popcountll(static_cast<std::uint64_t>(all)) +
                                          __builtin_popcountll(static_cast<std::uint64_t>(all >> 64)));
    }
    if (p < pixels)
        count += kScalarTable.count_color_matches(rgb + 3 * p, pixels - p, color, tolerance);
    return count;
}

} // namespace

const KernelTable kAvx2Table{
    Isa::avx2, sum_avx2, center_and_window_avx2, magnitudes_avx2, count_color_matches_avx2,
};

} // namespace strokelab::simd::detail
