#pragma once

#include "strokelab/kinematics.hpp"
#include "strokelab/metrics.hpp"
#include "strokelab/preprocess.hpp"
#include "strokelab/velocity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace strokelab {

struct PipelineOptions {
    std::string input;
    std::optional<std::string> frames_dir;
    std::optional<std::string> crossings_in;
    std::optional<std::string> crossings_out;
    std::optional<std::string> series_out; // directory for left.csv / right.csv
    std::optional<std::string> spectrum_out;
    std::optional<SwimDirection> direction; // nullopt: estimate from the nose track
    std::optional<double> fps_override;
    bool reproducible = false;

    StrokeOptions stroke;
    double si_threshold = kDefaultSymmetryThreshold;
    PoolCalibration calibration;
    double refractory = kDefaultRefractory;
    double min_segment_length = kMinSegmentLength;
};

struct StrokeSummary {
    StrokeMethod method = StrokeMethod::fft; // fft only if every contributing side used fft
    double duration = 0.0;                   // mean of the available per-side estimates
    std::optional<StrokeEstimate> left;
    std::optional<StrokeEstimate> right;
};

struct VelocityReport {
    std::string source; // "crossings-in" | "frames"
    std::vector<MarkerCrossing> crossings;
    std::optional<VelocityResult> result; // present iff >= 2 crossings
};

struct MetricsReport {
    std::string tool_version;
    std::string generated_at;
    std::string input;
    FrameCounts frames;
    double detection_rate = 0.0;
    SwimDirection direction;
    std::string direction_source; // "auto" | "override"
    std::size_t swapped_frames = 0;
    std::optional<SymmetryResult> symmetry;
    std::optional<StrokeSummary> stroke;
    std::optional<VelocityReport> velocity;
    PipelineOptions config;
    std::vector<std::string> warnings;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseFailure = 1;
inline constexpr int kExitNoDetections = 2;

struct PipelineResult {
    int exit_code = kExitOk;
    std::optional<MetricsReport> report;
    std::string error; // set when exit_code != 0
};

// parse -> side correction -> angles -> symmetry / stroke -> velocity. Stages
// that cannot run leave their section empty and add a warning.
PipelineResult run_pipeline(const PipelineOptions& options);

// Headline summary from per-side estimates; nullopt when neither side has one.
std::optional<StrokeSummary> combine_strokes(std::optional<StrokeEstimate> left,
                                             std::optional<StrokeEstimate> right);

std::string report_json(const MetricsReport& report);

} // namespace strokelab
