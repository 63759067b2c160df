#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace strokelab {

inline constexpr std::size_t kLandmarkCount = 33;

// Pose landmark indices used by the analysis (33-point body topology).
namespace landmark {
inline constexpr std::size_t nose = 0;
inline constexpr std::size_t left_shoulder = 11;
inline constexpr std::size_t right_shoulder = 12;
inline constexpr std::size_t left_elbow = 13;
inline constexpr std::size_t right_elbow = 14;
inline constexpr std::size_t left_wrist = 15;
inline constexpr std::size_t right_wrist = 16;
inline constexpr std::size_t left_hip = 23;
inline constexpr std::size_t right_hip = 24;
inline constexpr std::size_t left_knee = 25;
inline constexpr std::size_t right_knee = 26;
inline constexpr std::size_t left_ankle = 27;
inline constexpr std::size_t right_ankle = 28;
} // namespace landmark

struct SymmetricPair {
    std::size_t left;
    std::size_t right;
};

inline constexpr std::array<SymmetricPair, 6> kSymmetricPairs{{
    {landmark::left_shoulder, landmark::right_shoulder},
    {landmark::left_elbow, landmark::right_elbow},
    {landmark::left_wrist, landmark::right_wrist},
    {landmark::left_hip, landmark::right_hip},
    {landmark::left_knee, landmark::right_knee},
    {landmark::left_ankle, landmark::right_ankle},
}};

// Pixel coordinates, origin top-left, y pointing down.
struct LandmarkPoint {
    double x = 0.0;
    double y = 0.0;
    double visibility = 1.0;

    friend bool operator==(const LandmarkPoint&, const LandmarkPoint&) = default;
};

using Landmarks = std::array<LandmarkPoint, kLandmarkCount>;

struct LandmarkFrame {
    std::int64_t frame_index = 0;
    double timestamp = 0.0;
    bool detected = false;
    Landmarks landmarks{}; // meaningful only when detected

    friend bool operator==(const LandmarkFrame& a, const LandmarkFrame& b) {
        return a.frame_index == b.frame_index && a.timestamp == b.timestamp &&
               a.detected == b.detected && (!a.detected || a.landmarks == b.landmarks);
    }
};

struct LandmarkSequence {
    double fps = 60.0;
    int image_width = 0;
    int image_height = 0;
    std::vector<LandmarkFrame> frames;

    friend bool operator==(const LandmarkSequence&, const LandmarkSequence&) = default;
};

// Throws InvalidArgument describing the first violated invariant.
void validate(const LandmarkSequence& seq);

// Reads the JSON Lines interchange format: one header object, then one object per frame.
// Errors carry the 1-based line number of the offending record.
LandmarkSequence parse_sequence(std::istream& in);
LandmarkSequence parse_sequence_file(const std::string& path);

void write_sequence(const LandmarkSequence& seq, std::ostream& out);
std::string write_sequence(const LandmarkSequence& seq);

} // namespace strokelab
