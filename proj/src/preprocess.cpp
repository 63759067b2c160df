#include "strokelab/preprocess.hpp"

#include "strokelab/error.hpp"

#include <cmath>
#include <utility>

namespace strokelab {

std::string to_string(SwimDirection dir) {
    if (dir.axis == Axis::horizontal)
        return dir.sense == Sense::positive ? "ltr" : "rtl";
    return dir.sense == Sense::positive ? "ttb" : "btt";
}

SwimDirection parse_direction(std::string_view text) {
    if (text == "ltr")
        return kLeftToRight;
    if (text == "rtl")
        return kRightToLeft;
    if (text == "ttb")
        return kTopToBottom;
    if (text == "btt")
        return kBottomToTop;
    throw InvalidArgument("unknown direction '" + std::string(text) + "' (expected ltr|rtl|ttb|btt)");
}

Vec2 travel_vector(SwimDirection dir) {
    const double s = dir.sense == Sense::positive ? 1.0 : -1.0;
    return dir.axis == Axis::horizontal ? Vec2{s, 0.0} : Vec2{0.0, s};
}

Vec2 right_side_vector(SwimDirection dir) {
    // Travel vector rotated +90 degrees in y-down image coordinates:
    // ltr -> +y, rtl -> -y, ttb -> -x, btt -> +x.
    const Vec2 t = travel_vector(dir);
    return {-t.y, t.x};
}

FrameCounts frame_counts(const LandmarkSequence& seq) {
    FrameCounts c;
    if (seq.frames.empty())
        return c;
    c.total = seq.frames.back().frame_index - seq.frames.front().frame_index + 1;
    for (const auto& f : seq.frames)
        c.detected += f.detected ? 1 : 0;
    return c;
}

double detection_rate(const LandmarkSequence& seq) {
    const FrameCounts c = frame_counts(seq);
    if (c.total <= 0)
        throw InsufficientData("detection rate of an empty sequence");
    return static_cast<double>(c.detected) / static_cast<double>(c.total);
}

SwimDirection estimate_direction(const LandmarkSequence& seq) {
    const LandmarkFrame* first = nullptr;
    const LandmarkFrame* last = nullptr;
    for (const auto& f : seq.frames) {
        if (!f.detected)
            continue;
        if (!first)
            first = &f;
        last = &f;
    }
    if (!first || first == last)
        throw InsufficientData("direction needs at least 2 detected frames");

    const auto& a = first->landmarks[landmark::nose];
    const auto& b = last->landmarks[landmark::nose];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    if (dx == 0.0 && dy == 0.0)
        throw InsufficientData("nose shows no net displacement; cannot infer swim direction");

    if (std::abs(dx) >= std::abs(dy))
        return {Axis::horizontal, dx > 0.0 ? Sense::positive : Sense::negative};
    return {Axis::vertical, dy > 0.0 ? Sense::positive : Sense::negative};
}

void swap_pair(LandmarkFrame& frame, const SymmetricPair& pair) {
    std::swap(frame.landmarks[pair.left], frame.landmarks[pair.right]);
}

bool correct_frame(LandmarkFrame& frame, SwimDirection dir) {
    if (!frame.detected)
        return false;
    const Vec2 r = right_side_vector(dir);
    bool swapped = false;
    for (const auto& pair : kSymmetricPairs) {
        const auto& l = frame.landmarks[pair.left];
        const auto& rt = frame.landmarks[pair.right];
        const double left_lateral = l.x * r.x + l.y * r.y;
        const double right_lateral = rt.x * r.x + rt.y * r.y;
        // Ties carry no evidence and are left alone.
        if (right_lateral < left_lateral) {
            swap_pair(frame, pair);
            swapped = true;
        }
    }
    return swapped;
}

CorrectedSequence correct_sides(const LandmarkSequence& seq, SwimDirection dir) {
    CorrectedSequence out{seq, dir, {}};
    for (auto& f : out.base.frames) {
        if (correct_frame(f, dir))
            out.swapped_frames.push_back(f.frame_index);
    }
    return out;
}

} // namespace strokelab
