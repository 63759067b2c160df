#include "strokelab/kinematics.hpp"

#include "strokelab/error.hpp"

#include <cmath>
#include <numbers>

namespace strokelab {
namespace {

std::optional<ReferenceLine> make_reference(const LandmarkFrame& frame, double min_length) {
    const auto& lh = frame.landmarks[landmark::left_hip];
    const auto& rh = frame.landmarks[landmark::right_hip];
    const auto& nose = frame.landmarks[landmark::nose];
    const Vec2 origin{(lh.x + rh.x) / 2.0, (lh.y + rh.y) / 2.0};
    const double dx = nose.x - origin.x;
    const double dy = nose.y - origin.y;
    const double len = std::hypot(dx, dy);
    if (!(len >= min_length))
        return std::nullopt;
    return ReferenceLine{origin, {dx / len, dy / len}};
}

// nullopt: upper arm shorter than min_length.
std::optional<double> angle_against(const ReferenceLine& ref, const LandmarkFrame& frame, Side side,
                                    double min_length) {
    const auto& shoulder =
        frame.landmarks[side == Side::right ? landmark::right_shoulder : landmark::left_shoulder];
    const auto& elbow =
        frame.landmarks[side == Side::right ? landmark::right_elbow : landmark::left_elbow];
    const double ux = elbow.x - shoulder.x;
    const double uy = elbow.y - shoulder.y;
    if (!(std::hypot(ux, uy) >= min_length))
        return std::nullopt;

    const Vec2 d = ref.direction;
    const double dot = d.x * ux + d.y * uy;
    double cross = d.x * uy - d.y * ux; // > 0: clockwise on screen (y down)
    if (side == Side::left)
        cross = -cross;

    double deg = std::atan2(cross, dot) * (180.0 / std::numbers::pi);
    if (deg < 0.0)
        deg += 360.0;
    if (deg >= 360.0) // -tiny + 360 can round up
        deg -= 360.0;
    return deg;
}

} // namespace

const char* to_string(Side side) {
    return side == Side::left ? "left" : "right";
}

ReferenceLine reference_line(const LandmarkFrame& frame, double min_length) {
    if (!frame.detected)
        throw InvalidArgument("reference line requested on an undetected frame");
    auto ref = make_reference(frame, min_length);
    if (!ref)
        throw DegenerateGeometry("nose coincides with hip midpoint");
    return *ref;
}

double arm_angle(const LandmarkFrame& frame, Side side, double min_length) {
    const ReferenceLine ref = reference_line(frame, min_length);
    auto deg = angle_against(ref, frame, side, min_length);
    if (!deg)
        throw DegenerateGeometry(std::string(to_string(side)) + " upper arm shorter than " +
                                 std::to_string(min_length) + " px");
    return *deg;
}

std::optional<double> try_arm_angle(const LandmarkFrame& frame, Side side, double min_length) {
    if (!frame.detected)
        return std::nullopt;
    auto ref = make_reference(frame, min_length);
    if (!ref)
        return std::nullopt;
    return angle_against(*ref, frame, side, min_length);
}

AngleSeries angle_series(const CorrectedSequence& seq, Side side, double min_length) {
    AngleSeries series;
    series.side = side;
    series.source_fps = seq.base.fps;
    for (const auto& f : seq.base.frames) {
        auto deg = try_arm_angle(f, side, min_length);
        if (!deg)
            continue;
        if (!series.samples.empty() && f.timestamp <= series.samples.back().timestamp)
            continue; // duplicate timestamp
        series.samples.push_back({f.timestamp, *deg});
    }
    if (series.samples.empty())
        throw InsufficientData(std::string("no computable ") + to_string(side) + " arm angles");
    return series;
}

} // namespace strokelab
