#pragma once

// Deterministic synthetic front-crawl swimmer with full ground truth.

#include "strokelab/landmarks.hpp"
#include "strokelab/preprocess.hpp"
#include "strokelab/raster.hpp"
#include "strokelab/velocity.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace strokelab::oracle {

inline constexpr double kPixelsPerMetre = 20.0;
inline constexpr int kMaxRasterSide = 8192;

struct SwimScenario {
    double cadence = 2.5;   // seconds per cycle
    double velocity = 1.5;  // m/s
    SwimDirection direction = kLeftToRight;
    double duration = 20.0; // seconds
    double fps = 60.0;
    double dropout_prob = 0.0;
    double swap_prob = 0.0;        // per symmetric pair, per frame
    double angle_noise_sd = 0.0;   // degrees
    double asymmetry_offset = 0.0; // degrees added to the right arm
    std::uint64_t seed = 1;

    double start_phase = 0.0;        // fraction of a cycle at t = 0
    double dropout_burst_mean = 1.0; // mean miss-burst length in frames; 1 = i.i.d.
    double splash_prob = 0.0;        // per frame: spray hides the area behind the head
    double position_noise_px = 0.0;  // per-frame rigid jitter of the whole body
    double amplitude = 90.0;         // degrees
    double offset = 180.0;           // degrees

    void validate() const;
};

struct FrameTruth {
    bool detected = true;
    std::array<bool, kSymmetricPairs.size()> swapped{}; // labels swapped in the emitted frame
    double phase = 0.0;       // right-arm cycle phase in [0, 1)
    double right_angle = 0.0; // degrees used to build the landmarks
    double left_angle = 0.0;
    double head_x = 0.0;
    double head_y = 0.0;
    Landmarks true_landmarks{}; // correctly labelled
};

struct GroundTruth {
    double cadence = 0.0;
    double velocity = 0.0;
    SwimDirection direction;
    double marker_spacing = 10.0;
    std::vector<double> crossing_times; // k * spacing / velocity within the clip
    std::vector<FrameTruth> frames;
};

struct Simulation {
    SwimScenario scenario;
    LandmarkSequence sequence;
    GroundTruth truth;
};

// Arm angle profile (degrees) at the given cycle phase, before noise and offsets.
double stroke_profile(double phase, double amplitude);

Simulation generate(const SwimScenario& scenario, double marker_spacing = 10.0);

// Water background, marker stripes every marker_spacing, the swimmer and any splash.
class FrameRenderer {
public:
    FrameRenderer(const Simulation& sim, const PoolCalibration& cal);

    std::size_t frame_count() const { return sim_.truth.frames.size(); }
    const RgbImage& render(std::size_t frame);

private:
    const Simulation& sim_;
    PoolCalibration cal_;
    RgbImage background_;
    RgbImage frame_;
};

inline constexpr Rgb kWaterColor{20, 90, 180};

// Streams every frame of the clip to `sink`.
void render_frames(const Simulation& sim, const PoolCalibration& cal,
                   const std::function<void(std::size_t, const RgbImage&)>& sink);

SwimScenario parse_scenario(std::istream& in);
void write_scenario(const SwimScenario& s, std::ostream& out);
void write_truth(const Simulation& sim, std::ostream& out);

} // namespace strokelab::oracle
