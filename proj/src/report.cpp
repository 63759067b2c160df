#include "strokelab/report.hpp"

#include "strokelab/error.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#ifndef STROKELAB_VERSION
#define STROKELAB_VERSION "0.0.0"
#endif

namespace strokelab {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::optional<fs::path> find_frame_file(const fs::path& dir, std::int64_t index) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06lld", static_cast<long long>(index));
    for (const char* ext : {".ppm", ".rgb"}) {
        fs::path p = dir / (std::string(name) + ext);
        if (fs::exists(p))
            return p;
    }
    return std::nullopt;
}

RgbImage load_frame(const fs::path& p, int width, int height) {
    if (p.extension() == ".rgb")
        return read_raw_rgb(p.string(), width, height);
    return read_ppm(p.string());
}

void write_series_csv(const AngleSeries& s, const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    out << "t,angle_deg\n" << std::setprecision(10);
    for (const auto& a : s.samples)
        out << a.timestamp << ',' << a.angle << '\n';
}

void write_spectrum_csv(const Spectrum& spec, const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    out << "f_hz,magnitude\n" << std::setprecision(10);
    for (std::size_t k = 0; k < spec.magnitude.size(); ++k)
        out << spec.frequency(k) << ',' << spec.magnitude[k] << '\n';
}

VelocityReport velocity_from_frames(const CorrectedSequence& seq, const PipelineOptions& opt,
                                    std::vector<std::string>& warnings) {
    const fs::path dir(*opt.frames_dir);
    if (!fs::is_directory(dir))
        throw InvalidArgument("frames directory " + dir.string() + " does not exist");

    std::vector<AdjacencySample> adjacency;
    std::size_t missing = 0, outside = 0, mismatched = 0;
    for (const auto& f : seq.base.frames) {
        if (!f.detected)
            continue;
        auto path = find_frame_file(dir, f.frame_index);
        if (!path) {
            ++missing;
            continue;
        }
        RgbImage img = load_frame(*path, seq.base.image_width, seq.base.image_height);
        if (img.width() != seq.base.image_width || img.height() != seq.base.image_height) {
            ++mismatched;
            continue;
        }
        const Adjacency a = marker_adjacency(img, f.landmarks[landmark::nose], opt.calibration, seq.direction);
        if (a.crop_outside)
            ++outside;
        adjacency.push_back({f.timestamp, f.frame_index, a.adjacent});
    }
    if (missing)
        warnings.push_back(std::to_string(missing) + " detected frames have no raster in " + dir.string());
    if (mismatched)
        warnings.push_back(std::to_string(mismatched) + " rasters do not match the header dimensions");
    if (outside)
        warnings.push_back(std::to_string(outside) + " frames had the marker crop outside the image");

    VelocityReport v;
    v.source = "frames";
    v.crossings = extract_crossings(adjacency, opt.calibration, opt.refractory);
    return v;
}

ordered_json estimate_json(const StrokeEstimate& e) {
    ordered_json j;
    j["method"] = to_string(e.method);
    j["duration_s"] = e.duration;
    if (e.dominant_frequency)
        j["dominant_frequency_hz"] = *e.dominant_frequency;
    if (e.peak_count)
        j["peak_count"] = *e.peak_count;
    return j;
}

ordered_json direction_json(SwimDirection d) {
    ordered_json j;
    j["label"] = to_string(d);
    j["axis"] = d.axis == Axis::horizontal ? "horizontal" : "vertical";
    j["sense"] = d.sense == Sense::positive ? "positive" : "negative";
    return j;
}

} // namespace

std::optional<StrokeSummary> combine_strokes(std::optional<StrokeEstimate> left,
                                             std::optional<StrokeEstimate> right) {
    if (!left && !right)
        return std::nullopt;
    StrokeSummary s;
    double total = 0.0;
    int count = 0;
    bool all_fft = true;
    for (const auto* e : {&left, &right}) {
        if (!*e)
            continue;
        total += (*e)->duration;
        ++count;
        all_fft = all_fft && (*e)->method == StrokeMethod::fft;
    }
    s.duration = total / count;
    s.method = all_fft ? StrokeMethod::fft : StrokeMethod::peaks;
    s.left = std::move(left);
    s.right = std::move(right);
    return s;
}

PipelineResult run_pipeline(const PipelineOptions& opt) {
    PipelineResult result;
    LandmarkSequence seq;
    try {
        seq = parse_sequence_file(opt.input);
    } catch (const ParseError& e) {
        result.exit_code = kExitParseFailure;
        result.error = opt.input + ": " + e.what();
        return result;
    }

    MetricsReport rep;
    rep.tool_version = STROKELAB_VERSION;
    rep.generated_at = opt.reproducible ? "1970-01-01T00:00:00Z" : utc_now();
    rep.input = opt.input;
    rep.config = opt;
    auto& warnings = rep.warnings;

    if (opt.fps_override) {
        if (!(*opt.fps_override > 0.0))
            throw InvalidArgument("--fps-override must be > 0");
        seq.fps = *opt.fps_override;
        for (auto& f : seq.frames)
            f.timestamp = static_cast<double>(f.frame_index) / seq.fps;
    }

    rep.frames = frame_counts(seq);
    if (rep.frames.detected == 0) {
        result.exit_code = kExitNoDetections;
        result.error = opt.input + ": no detected frames";
        return result;
    }
    rep.detection_rate = detection_rate(seq);

    if (opt.direction) {
        rep.direction = *opt.direction;
        rep.direction_source = "override";
    } else {
        rep.direction_source = "auto";
        try {
            rep.direction = estimate_direction(seq);
        } catch (const InsufficientData& e) {
            rep.direction = kLeftToRight;
            warnings.push_back(std::string(e.what()) + "; assuming ltr");
        }
    }

    const CorrectedSequence corrected = correct_sides(seq, rep.direction);
    rep.swapped_frames = corrected.swapped_frames.size();

    std::optional<AngleSeries> left, right;
    for (Side side : {Side::left, Side::right}) {
        try {
            (side == Side::left ? left : right) = angle_series(corrected, side, opt.min_segment_length);
        } catch (const InsufficientData& e) {
            warnings.push_back(e.what());
        }
    }

    if (left && right) {
        try {
            rep.symmetry = symmetry_index(*left, *right, opt.si_threshold);
        } catch (const InsufficientData& e) {
            warnings.push_back(e.what());
        }
    }

    std::optional<StrokeEstimate> left_stroke, right_stroke;
    for (Side side : {Side::left, Side::right}) {
        const auto& series = side == Side::left ? left : right;
        if (!series)
            continue;
        try {
            StrokeEstimate e = stroke_duration(*series, rep.detection_rate, opt.stroke);
            if (rep.detection_rate >= opt.stroke.rate_cutoff && e.method == StrokeMethod::peaks)
                warnings.push_back(std::string(to_string(side)) + " stroke: FFT failed, fell back to peak counting");
            (side == Side::left ? left_stroke : right_stroke) = std::move(e);
        } catch (const InsufficientData& e) {
            warnings.push_back(std::string(to_string(side)) + " stroke: " + e.what());
        }
    }
    if ((left_stroke != std::nullopt) != (right_stroke != std::nullopt))
        warnings.push_back("headline stroke duration uses one side only");
    rep.stroke = combine_strokes(left_stroke, right_stroke);

    std::optional<VelocityReport> velocity;
    if (opt.crossings_in) {
        std::ifstream in(*opt.crossings_in);
        if (!in) {
            result.exit_code = kExitParseFailure;
            result.error = "cannot open " + *opt.crossings_in;
            return result;
        }
        try {
            velocity = VelocityReport{"crossings-in", parse_crossings(in), std::nullopt};
        } catch (const ParseError& e) {
            result.exit_code = kExitParseFailure;
            result.error = *opt.crossings_in + ": " + e.what();
            return result;
        }
    } else if (opt.frames_dir) {
        velocity = velocity_from_frames(corrected, opt, warnings);
        if (opt.crossings_out) {
            std::ofstream out(*opt.crossings_out);
            if (!out)
                throw InvalidArgument("cannot write " + *opt.crossings_out);
            write_crossings(velocity->crossings, out);
        }
    }
    if (velocity) {
        try {
            velocity->result = velocity_segments(velocity->crossings);
        } catch (const InsufficientData& e) {
            warnings.push_back(std::string("velocity: ") + e.what());
        }
        rep.velocity = std::move(velocity);
    }

    if (opt.series_out) {
        const fs::path dir(*opt.series_out);
        fs::create_directories(dir);
        if (left)
            write_series_csv(*left, dir / "left.csv");
        if (right)
            write_series_csv(*right, dir / "right.csv");
    }
    if (opt.spectrum_out) {
        const StrokeEstimate* src = nullptr;
        if (right_stroke && right_stroke->spectrum)
            src = &*right_stroke;
        else if (left_stroke && left_stroke->spectrum)
            src = &*left_stroke;
        if (src)
            write_spectrum_csv(*src->spectrum, *opt.spectrum_out);
        else
            warnings.push_back("no FFT spectrum available for --spectrum-out");
    }

    result.report = std::move(rep);
    return result;
}

std::string report_json(const MetricsReport& r) {
    ordered_json j;
    j["tool"] = {{"name", "strokelab"}, {"version", r.tool_version}};
    j["generated_at"] = r.generated_at;
    j["input"] = r.input;
    j["frames"] = {{"total", r.frames.total}, {"detected", r.frames.detected}};
    j["detection_rate"] = r.detection_rate;

    ordered_json dir = direction_json(r.direction);
    dir["source"] = r.direction_source;
    j["direction"] = std::move(dir);
    j["side_correction"] = {{"swapped_frames", r.swapped_frames}};

    if (r.symmetry) {
        const auto& s = *r.symmetry;
        ordered_json sj;
        sj["si_percent"] = s.si_percent;
        sj["x_left_deg"] = s.x_left;
        sj["x_right_deg"] = s.x_right;
        sj["threshold_percent"] = s.threshold_percent;
        sj["symmetric"] = s.symmetric;
        j["symmetry"] = std::move(sj);
    }

    if (r.stroke) {
        ordered_json sj;
        sj["method"] = to_string(r.stroke->method);
        sj["duration_s"] = r.stroke->duration;
        if (r.stroke->left)
            sj["left"] = estimate_json(*r.stroke->left);
        if (r.stroke->right)
            sj["right"] = estimate_json(*r.stroke->right);
        j["stroke"] = std::move(sj);
    }

    if (r.velocity) {
        ordered_json vj;
        vj["source"] = r.velocity->source;
        ordered_json crossings = ordered_json::array();
        for (const auto& c : r.velocity->crossings)
            crossings.push_back({{"t", c.timestamp}, {"frame", c.frame_index}, {"distance_m", c.cumulative_distance}});
        vj["crossings"] = std::move(crossings);
        if (r.velocity->result) {
            ordered_json segs = ordered_json::array();
            for (const auto& s : r.velocity->result->segments)
                segs.push_back({{"t_start", s.t_start},
                                {"t_end", s.t_end},
                                {"distance_m", s.distance},
                                {"velocity_mps", s.velocity}});
            vj["segments"] = std::move(segs);
            vj["average_mps"] = r.velocity->result->average;
        }
        j["velocity"] = std::move(vj);
    }

    const auto& c = r.config;
    ordered_json cfg;
    cfg["direction"] = c.direction ? to_string(*c.direction) : "auto";
    if (c.fps_override)
        cfg["fps_override"] = *c.fps_override;
    cfg["rate_cutoff"] = c.stroke.rate_cutoff;
    cfg["f_min_hz"] = c.stroke.f_min;
    cfg["f_max_hz"] = c.stroke.f_max;
    cfg["max_bin_width_hz"] = c.stroke.max_bin_width_hz;
    cfg["min_separation_s"] = c.stroke.min_separation;
    cfg["min_prominence_deg"] = c.stroke.min_prominence;
    cfg["si_threshold_percent"] = c.si_threshold;
    cfg["min_segment_px"] = c.min_segment_length;
    cfg["marker_spacing_m"] = c.calibration.marker_spacing;
    cfg["marker_color"] = {c.calibration.marker_color.r, c.calibration.marker_color.g, c.calibration.marker_color.b};
    cfg["marker_tolerance"] = c.calibration.color_tolerance;
    cfg["crop_width_px"] = c.calibration.crop_width;
    cfg["crop_height_px"] = c.calibration.crop_height;
    cfg["min_colored_fraction"] = c.calibration.min_colored_fraction;
    cfg["refractory_s"] = c.refractory;
    j["config"] = std::move(cfg);
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

} // namespace strokelab
