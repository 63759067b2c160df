#pragma once

#include "strokelab/landmarks.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace strokelab {

enum class Axis { horizontal, vertical };
enum class Sense { positive, negative }; // positive = increasing pixel coordinate

struct SwimDirection {
    Axis axis = Axis::horizontal;
    Sense sense = Sense::positive;

    friend bool operator==(const SwimDirection&, const SwimDirection&) = default;
};

inline constexpr SwimDirection kLeftToRight{Axis::horizontal, Sense::positive};
inline constexpr SwimDirection kRightToLeft{Axis::horizontal, Sense::negative};
inline constexpr SwimDirection kTopToBottom{Axis::vertical, Sense::positive};
inline constexpr SwimDirection kBottomToTop{Axis::vertical, Sense::negative};

// "ltr" | "rtl" | "ttb" | "btt"
std::string to_string(SwimDirection dir);
SwimDirection parse_direction(std::string_view text);

// Unit vector of travel in image coordinates.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};
Vec2 travel_vector(SwimDirection dir);

// Unit vector pointing from the body axis toward the swimmer's right side for a
// face-down swimmer travelling in `dir` (image y grows downward).
Vec2 right_side_vector(SwimDirection dir);

struct CorrectedSequence {
    LandmarkSequence base;
    SwimDirection direction;
    std::vector<std::int64_t> swapped_frames; // sorted frame indices
};

struct FrameCounts {
    std::int64_t total = 0;    // includes gaps between records
    std::int64_t detected = 0;
};

FrameCounts frame_counts(const LandmarkSequence& seq);

// Detected frames over all frames of the clip; gaps in frame_index count as misses.
double detection_rate(const LandmarkSequence& seq);

// Dominant axis and sign of the nose's net displacement between the first and
// last detected frames.
SwimDirection estimate_direction(const LandmarkSequence& seq);

// Swaps the labels of a symmetric pair in place.
void swap_pair(LandmarkFrame& frame, const SymmetricPair& pair);

// Returns true when at least one pair was swapped.
bool correct_frame(LandmarkFrame& frame, SwimDirection dir);

CorrectedSequence correct_sides(const LandmarkSequence& seq, SwimDirection dir);

} // namespace strokelab
