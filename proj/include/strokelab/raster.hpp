#pragma once

#include "strokelab/simd/kernels.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace strokelab {

using Rgb = simd::Rgb8;

// Packed 8-bit RGB, row stride = width * 3.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = {});

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::vector<std::uint8_t>& data() noexcept { return pixels_; }
    const std::vector<std::uint8_t>& data() const noexcept { return pixels_; }

    const std::uint8_t* row(int y) const { return pixels_.data() + static_cast<std::size_t>(y) * width_ * 3; }
    std::uint8_t* row(int y) { return pixels_.data() + static_cast<std::size_t>(y) * width_ * 3; }

    Rgb at(int x, int y) const;
    void set(int x, int y, Rgb c);

    // Half-open rectangle [x0, x1) x [y0, y1), clipped to the image.
    void fill_rect(int x0, int y0, int x1, int y1, Rgb c);
    void fill_disc(double cx, double cy, double radius, Rgb c);

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

// Binary PPM (P6, maxval 255).
RgbImage read_ppm(const std::string& path);
void write_ppm(const RgbImage& img, const std::string& path);

// Headerless packed RGB with known dimensions.
RgbImage read_raw_rgb(const std::string& path, int width, int height);

} // namespace strokelab
