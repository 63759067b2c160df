#pragma once

#include "strokelab/landmarks.hpp"
#include "strokelab/preprocess.hpp"
#include "strokelab/raster.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace strokelab {

struct PoolCalibration {
    double marker_spacing = 10.0; // metres
    Rgb marker_color{220, 30, 30};
    int color_tolerance = 40;     // per-channel (Chebyshev) distance, 0..255
    int crop_width = 60;          // pixels along the swim axis
    int crop_height = 40;         // pixels across it
    double min_colored_fraction = 0.02;

    // Throws InvalidArgument on violated invariants.
    void validate() const;
};

struct MarkerCrossing {
    double timestamp = 0.0;
    std::int64_t frame_index = 0;
    double cumulative_distance = 0.0; // metres

    friend bool operator==(const MarkerCrossing&, const MarkerCrossing&) = default;
};

struct VelocitySegment {
    double t_start = 0.0;
    double t_end = 0.0;
    double distance = 0.0;
    double velocity = 0.0; // m/s
};

struct VelocityResult {
    std::vector<VelocitySegment> segments;
    double average = 0.0; // total distance / total time, first to last crossing
};

// Half-open pixel rectangle.
struct PixelRect {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    bool empty() const { return x1 <= x0 || y1 <= y0; }
    long long area() const { return empty() ? 0 : static_cast<long long>(x1 - x0) * (y1 - y0); }
};

// Crop on the trailing side of the head (opposite the swim direction), clipped
// to a width x height raster. Empty when it falls entirely outside.
PixelRect trailing_crop(const LandmarkPoint& head, const PoolCalibration& cal, SwimDirection dir,
                        int width, int height);

struct Adjacency {
    bool adjacent = false;
    bool crop_outside = false; // head at the image edge; reported as not adjacent
    double colored_fraction = 0.0;
};

Adjacency marker_adjacency(const RgbImage& frame, const LandmarkPoint& head, const PoolCalibration& cal,
                           SwimDirection dir);

inline bool marker_adjacent(const RgbImage& frame, const LandmarkPoint& head, const PoolCalibration& cal,
                            SwimDirection dir) {
    return marker_adjacency(frame, head, cal, dir).adjacent;
}

struct AdjacencySample {
    double timestamp = 0.0;
    std::int64_t frame_index = 0;
    bool adjacent = false;
};

inline constexpr double kDefaultRefractory = 2.0;

// One crossing per rising edge of the adjacency signal. A run starting within
// `refractory` seconds of the crossing it would follow, or of the end of the
// last run already merged into that crossing, is folded into it.
std::vector<MarkerCrossing> extract_crossings(std::span<const AdjacencySample> adjacency,
                                              const PoolCalibration& cal,
                                              double refractory = kDefaultRefractory);

// Needs at least two crossings; throws InsufficientData otherwise.
VelocityResult velocity_segments(std::span<const MarkerCrossing> crossings);

// Crossing events as JSON Lines: {"t": s, "frame": n, "distance_m": m}
std::vector<MarkerCrossing> parse_crossings(std::istream& in);
void write_crossings(std::span<const MarkerCrossing> crossings, std::ostream& out);

} // namespace strokelab
