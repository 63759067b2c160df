#pragma once

// Test-only helpers: hand-built frames and brute-force reference computations.

#include "strokelab/kinematics.hpp"
#include "strokelab/landmarks.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <unistd.h>

namespace strokelab::test {

inline constexpr double kPi = std::numbers::pi;

inline double deg2rad(double d) { return d * kPi / 180.0; }

inline LandmarkFrame blank_frame(std::int64_t index = 0, double fps = 60.0) {
    LandmarkFrame f;
    f.frame_index = index;
    f.timestamp = static_cast<double>(index) / fps;
    f.detected = true;
    for (auto& p : f.landmarks)
        p = {100.0, 100.0, 1.0};
    return f;
}

inline void put(LandmarkFrame& f, std::size_t idx, double x, double y) {
    f.landmarks[idx].x = x;
    f.landmarks[idx].y = y;
}

// A frame whose body axis points along `axis_deg` (image coordinates, y down)
// from the hip midpoint `origin`, with each upper arm swept by the given angle:
// clockwise on screen for the right arm, counter-clockwise for the left.
inline LandmarkFrame posed_frame(double axis_deg, double right_deg, double left_deg,
                                 double ox = 400.0, double oy = 300.0, double scale = 1.0) {
    LandmarkFrame f = blank_frame();
    const double a = deg2rad(axis_deg);
    const double bx = std::cos(a), by = std::sin(a); // toward nose
    const double rx = -by, ry = bx;                  // swimmer's right
    const auto at = [&](double fwd, double lat) {
        return std::pair{ox + scale * (fwd * bx + lat * rx), oy + scale * (fwd * by + lat * ry)};
    };
    auto [nx, ny] = at(80.0, 0.0);
    put(f, landmark::nose, nx, ny);
    auto [lhx, lhy] = at(0.0, -15.0);
    auto [rhx, rhy] = at(0.0, 15.0);
    put(f, landmark::left_hip, lhx, lhy);
    put(f, landmark::right_hip, rhx, rhy);
    auto [rsx, rsy] = at(60.0, 20.0);
    auto [lsx, lsy] = at(60.0, -20.0);
    put(f, landmark::right_shoulder, rsx, rsy);
    put(f, landmark::left_shoulder, lsx, lsy);

    const double r = deg2rad(axis_deg + right_deg); // clockwise on screen = +angle with y down
    const double l = deg2rad(axis_deg - left_deg);
    put(f, landmark::right_elbow, rsx + scale * 25.0 * std::cos(r), rsy + scale * 25.0 * std::sin(r));
    put(f, landmark::left_elbow, lsx + scale * 25.0 * std::cos(l), lsy + scale * 25.0 * std::sin(l));
    return f;
}

inline double angle_diff(double a, double b) {
    double d = std::fmod(a - b, 360.0);
    if (d > 180.0)
        d -= 360.0;
    if (d < -180.0)
        d += 360.0;
    return std::abs(d);
}

// Direct O(N * K) DFT magnitude of (x - mean) * blackman, zero-padded to `length`,
// scaled like the library's amplitude spectrum. Evaluated only at `bins`.
inline std::vector<double> brute_force_spectrum(std::span<const double> x, std::size_t length,
                                                std::span<const std::size_t> bins) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> w(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1);
        w[i] = 0.42 - 0.5 * std::cos(t) + 0.08 * std::cos(2.0 * t);
        wsum += w[i];
    }
    std::vector<double> out;
    for (std::size_t k : bins) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const double ang = -2.0 * kPi * static_cast<double>(k) * static_cast<double>(i) /
                               static_cast<double>(length);
            acc += (x[i] - mean) * w[i] * std::polar(1.0, ang);
        }
        out.push_back(2.0 * std::abs(acc) / wsum);
    }
    return out;
}

inline AngleSeries series_from(std::span<const double> t, std::span<const double> angle, Side side = Side::right,
                               double fps = 60.0) {
    AngleSeries s;
    s.side = side;
    s.source_fps = fps;
    for (std::size_t i = 0; i < t.size(); ++i)
        s.samples.push_back({t[i], angle[i]});
    return s;
}

// Samples f(t) at i/fps for t in [0, duration], dropping each sample with probability `dropout`.
template <class F>
AngleSeries sampled_series(F f, double duration, double fps = 60.0, double dropout = 0.0, std::uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution drop(dropout);
    AngleSeries s;
    s.source_fps = fps;
    const auto n = static_cast<std::size_t>(std::floor(duration * fps + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fps;
        if (dropout > 0.0 && drop(rng))
            continue;
        s.samples.push_back({t, f(t)});
    }
    return s;
}

inline std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("strokelab_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace strokelab::test
