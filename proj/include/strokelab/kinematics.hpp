#pragma once

#include "strokelab/landmarks.hpp"
#include "strokelab/preprocess.hpp"

#include <optional>
#include <vector>

namespace strokelab {

enum class Side { left, right };

const char* to_string(Side side);

// Segments shorter than this (pixels) carry no usable direction.
inline constexpr double kMinSegmentLength = 1.0;

// Body centre line: from the hip midpoint toward the nose.
struct ReferenceLine {
    Vec2 origin;
    Vec2 direction; // unit length
};

struct AngleSample {
    double timestamp = 0.0;
    double angle = 0.0; // degrees, [0, 360)
};

struct AngleSeries {
    Side side = Side::left;
    std::vector<AngleSample> samples;
    double source_fps = 60.0;
};

// Throws DegenerateGeometry when the nose sits within kMinSegmentLength of the hip midpoint.
ReferenceLine reference_line(const LandmarkFrame& frame, double min_length = kMinSegmentLength);

// Upper-arm angle against the reference line, degrees in [0, 360). Zero points at
// the nose; the right arm is measured clockwise and the left arm counter-clockwise
// in image coordinates, so mirror-image arm positions give equal angles.
double arm_angle(const LandmarkFrame& frame, Side side, double min_length = kMinSegmentLength);

// Non-throwing form; nullopt for undetected frames and degenerate geometry.
std::optional<double> try_arm_angle(const LandmarkFrame& frame, Side side,
                                    double min_length = kMinSegmentLength);

// One sample per frame with a computable angle. Throws InsufficientData when none is.
AngleSeries angle_series(const CorrectedSequence& seq, Side side,
                         double min_length = kMinSegmentLength);

} // namespace strokelab
