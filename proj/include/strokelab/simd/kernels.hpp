#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// ISA-specific variants selected once at runtime.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace strokelab::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct Rgb8 {
    std::uint8_t r = 0, g = 0, b = 0;
};

struct KernelTable {
    Isa isa;
    double (*sum)(const double* x, std::size_t n);
    // out[i] = (in[i] - mean) * window[i]
    void (*center_and_window)(const double* in, const double* window, double mean, double* out,
                              std::size_t n);
    // out[k] = sqrt(re^2 + im^2) over `bins` interleaved (re, im) pairs
    void (*magnitudes)(const double* interleaved, double* out, std::size_t bins);
    // Packed RGB pixels whose every channel is within `tolerance` of `color`.
    std::size_t (*count_color_matches)(const std::uint8_t* rgb, std::size_t pixels, Rgb8 color,
                                       std::uint8_t tolerance);
};

const KernelTable& scalar_kernels();

// True when the running CPU (and the build) supports `isa`.
bool isa_available(Isa isa);

// Kernel table for `isa`; throws InvalidArgument if unavailable.
const KernelTable& kernels(Isa isa);

// Best available ISA, unless STROKELAB_SIMD=scalar|avx2 narrows the choice.
Isa active_isa();
const KernelTable& active();

inline double sum(std::span<const double> x) {
    return active().sum(x.data(), x.size());
}

inline double mean(std::span<const double> x) {
    return x.empty() ? 0.0 : sum(x) / static_cast<double>(x.size());
}

} // namespace strokelab::simd
