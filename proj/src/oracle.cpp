#include "strokelab/oracle.hpp"

#include "strokelab/error.hpp"
#include "strokelab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <json.hpp>

namespace strokelab::oracle {
namespace {

constexpr double kMarginMetres = 3.0;
constexpr double kLaneWidthMetres = 5.0;
constexpr double kStripeMetres = 0.2;

// Body dimensions in metres, as seen from above. The projected upper arm is
// shorter than half the shoulder width so each elbow stays on its own side of
// the body axis over the whole stroke.
constexpr double kNeck = 0.25;
constexpr double kHalfShoulder = 0.25;
constexpr double kUpperArm = 0.20;
constexpr double kForearm = 0.25;
constexpr double kTorso = 0.80;
constexpr double kHalfHip = 0.15;
constexpr double kThigh = 0.45;
constexpr double kShin = 0.45;
constexpr double kKickAmplitude = 0.04;

constexpr Rgb kSkin{235, 190, 160};
constexpr Rgb kSuit{30, 30, 30};
constexpr Rgb kSpray{245, 245, 245};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t id) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(id)));
}

enum StreamId : std::uint64_t { kDropout = 1, kSwap, kAngleNoise, kJitter, kSplash };

struct Layout {
    int width = 0;
    int height = 0;
    double along_extent = 0.0; // pixels along the swim axis
    double start = 0.0;        // head position along the axis at t = 0
    double lane_centre = 0.0;
};

Layout make_layout(const SwimScenario& s) {
    Layout l;
    const double along = std::ceil((2.0 * kMarginMetres + s.velocity * s.duration) * kPixelsPerMetre);
    const double across = kLaneWidthMetres * kPixelsPerMetre;
    if (along > kMaxRasterSide)
        throw InvalidArgument("scenario needs a " + std::to_string(static_cast<long long>(along)) +
                              " px raster side; limit is " + std::to_string(kMaxRasterSide));
    l.along_extent = along;
    l.start = kMarginMetres * kPixelsPerMetre;
    l.lane_centre = across / 2.0;
    if (s.direction.axis == Axis::horizontal) {
        l.width = static_cast<int>(along);
        l.height = static_cast<int>(across);
    } else {
        l.width = static_cast<int>(across);
        l.height = static_cast<int>(along);
    }
    return l;
}

// Continuous image position of a point `along` pixels down the swim axis.
Vec2 to_image(const Layout& l, SwimDirection dir, double along, double across) {
    const double a = dir.sense == Sense::positive ? along : l.along_extent - along;
    return dir.axis == Axis::horizontal ? Vec2{a, across} : Vec2{across, a};
}

LandmarkPoint at(Vec2 base, Vec2 b, Vec2 r, double fwd_m, double right_m) {
    const double f = fwd_m * kPixelsPerMetre;
    const double s = right_m * kPixelsPerMetre;
    return {base.x + f * b.x + s * r.x, base.y + f * b.y + s * r.y, 0.9};
}

double wrap_degrees(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg < 0.0)
        deg += 360.0;
    return deg >= 360.0 ? 0.0 : deg;
}

Landmarks build_body(Vec2 nose, SwimDirection dir, double right_deg, double left_deg, double kick_phase) {
    const Vec2 b = travel_vector(dir);
    const Vec2 r = right_side_vector(dir);
    Landmarks lm{};
    for (auto& p : lm)
        p = {nose.x, nose.y, 0.9};

    lm[landmark::nose] = {nose.x, nose.y, 0.9};
    // Face points (eyes, ears, mouth) cluster near the nose, left ones on the left.
    for (std::size_t i = 1; i <= 10; ++i) {
        const bool left = (i <= 3) || i == 7 || i == 9;
        lm[i] = at(nose, b, r, -0.05, left ? -0.04 : 0.04);
    }

    const auto arm = [&](Side side, double deg) {
        const double sign = side == Side::right ? 1.0 : -1.0;
        const double th = deg * std::numbers::pi / 180.0;
        const LandmarkPoint shoulder = at(nose, b, r, -kNeck, sign * kHalfShoulder);
        // Right arm rotates clockwise on screen from the nose direction, left counter-clockwise.
        const double fwd = std::cos(th);
        const double lat = sign * std::sin(th);
        const LandmarkPoint elbow = {shoulder.x + kUpperArm * kPixelsPerMetre * (fwd * b.x + lat * r.x),
                                     shoulder.y + kUpperArm * kPixelsPerMetre * (fwd * b.y + lat * r.y), 0.9};
        const double out = sign * std::abs(std::sin(th));
        const LandmarkPoint wrist = {elbow.x + kForearm * kPixelsPerMetre * (fwd * b.x + out * r.x),
                                     elbow.y + kForearm * kPixelsPerMetre * (fwd * b.y + out * r.y), 0.9};
        const bool right = side == Side::right;
        lm[right ? landmark::right_shoulder : landmark::left_shoulder] = shoulder;
        lm[right ? landmark::right_elbow : landmark::left_elbow] = elbow;
        lm[right ? landmark::right_wrist : landmark::left_wrist] = wrist;
        // Hand points 17..22 (pinky, index, thumb): odd = left, even = right.
        for (std::size_t i = right ? 18 : 17; i <= 22; i += 2)
            lm[i] = wrist;
    };
    arm(Side::right, right_deg);
    arm(Side::left, left_deg);

    const auto leg = [&](Side side, double kick) {
        const double sign = side == Side::right ? 1.0 : -1.0;
        const bool right = side == Side::right;
        const LandmarkPoint hip = at(nose, b, r, -kTorso, sign * kHalfHip);
        const LandmarkPoint knee = at(nose, b, r, -kTorso - kThigh + kick, sign * kHalfHip);
        const LandmarkPoint ankle = at(nose, b, r, -kTorso - kThigh - kShin + 2.0 * kick, sign * kHalfHip);
        lm[right ? landmark::right_hip : landmark::left_hip] = hip;
        lm[right ? landmark::right_knee : landmark::left_knee] = knee;
        lm[right ? landmark::right_ankle : landmark::left_ankle] = ankle;
        // Heel and foot index 29..32: odd = left, even = right.
        for (std::size_t i = right ? 30 : 29; i <= 32; i += 2)
            lm[i] = ankle;
    };
    const double kick = kKickAmplitude * std::sin(2.0 * std::numbers::pi * kick_phase);
    leg(Side::right, kick);
    leg(Side::left, -kick);
    return lm;
}

} // namespace

void SwimScenario::validate() const {
    if (!(cadence > 0.0))
        throw InvalidArgument("cadence must be > 0");
    if (!(velocity > 0.0))
        throw InvalidArgument("velocity must be > 0");
    if (!(duration > 0.0))
        throw InvalidArgument("duration must be > 0");
    if (!(fps > 0.0))
        throw InvalidArgument("fps must be > 0");
    const auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p < 1.0))
            throw InvalidArgument(std::string(name) + " must be in [0, 1)");
    };
    prob(dropout_prob, "dropout_prob");
    prob(swap_prob, "swap_prob");
    prob(splash_prob, "splash_prob");
    if (!(angle_noise_sd >= 0.0) || !(position_noise_px >= 0.0))
        throw InvalidArgument("noise levels must be >= 0");
    if (!(dropout_burst_mean >= 1.0))
        throw InvalidArgument("dropout_burst_mean must be >= 1");
    if (!std::isfinite(asymmetry_offset) || !std::isfinite(start_phase) || !std::isfinite(amplitude) ||
        !std::isfinite(offset))
        throw InvalidArgument("scenario values must be finite");
}

double stroke_profile(double phase, double amplitude) {
    const double w = 2.0 * std::numbers::pi * phase;
    return amplitude * (std::sin(w) + 0.3 * std::sin(2.0 * w));
}

Simulation generate(const SwimScenario& s, double marker_spacing) {
    s.validate();
    if (!(marker_spacing > 0.0))
        throw InvalidArgument("marker spacing must be > 0");
    const Layout layout = make_layout(s);

    Simulation sim;
    sim.scenario = s;
    sim.sequence.fps = s.fps;
    sim.sequence.image_width = layout.width;
    sim.sequence.image_height = layout.height;
    sim.truth.cadence = s.cadence;
    sim.truth.velocity = s.velocity;
    sim.truth.direction = s.direction;
    sim.truth.marker_spacing = marker_spacing;
    for (int k = 1; k * marker_spacing / s.velocity <= s.duration; ++k)
        sim.truth.crossing_times.push_back(k * marker_spacing / s.velocity);

    auto dropout_rng = stream(s.seed, kDropout);
    auto swap_rng = stream(s.seed, kSwap);
    auto noise_rng = stream(s.seed, kAngleNoise);
    auto jitter_rng = stream(s.seed, kJitter);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> angle_noise(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, 1.0);

    // Two-state miss process with stationary miss fraction dropout_prob and mean
    // burst length dropout_burst_mean (i.i.d. when the mean is 1).
    const double p = s.dropout_prob;
    const double leave_miss = 1.0 / s.dropout_burst_mean;
    const double enter_miss = p >= 1.0 ? 1.0 : p * leave_miss / (1.0 - p);
    bool missing = unit(dropout_rng) < p;

    const auto n = static_cast<std::size_t>(std::floor(s.duration * s.fps + 1e-9)) + 1;
    sim.sequence.frames.reserve(n);
    sim.truth.frames.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / s.fps;
        if (i > 0) {
            if (s.dropout_burst_mean <= 1.0)
                missing = unit(dropout_rng) < p;
            else
                missing = missing ? unit(dropout_rng) >= leave_miss : unit(dropout_rng) < enter_miss;
        }

        FrameTruth ft;
        ft.detected = !missing;
        double cycle = t / s.cadence + s.start_phase;
        ft.phase = cycle - std::floor(cycle);
        const double nr = s.angle_noise_sd > 0.0 ? s.angle_noise_sd * angle_noise(noise_rng) : 0.0;
        const double nl = s.angle_noise_sd > 0.0 ? s.angle_noise_sd * angle_noise(noise_rng) : 0.0;
        ft.right_angle = wrap_degrees(s.offset + stroke_profile(ft.phase, s.amplitude) + s.asymmetry_offset + nr);
        ft.left_angle = wrap_degrees(s.offset + stroke_profile(ft.phase + 0.5, s.amplitude) + nl);

        Vec2 head = to_image(layout, s.direction, layout.start + kPixelsPerMetre * s.velocity * t,
                             layout.lane_centre);
        if (s.position_noise_px > 0.0) {
            head.x += s.position_noise_px * jitter(jitter_rng);
            head.y += s.position_noise_px * jitter(jitter_rng);
        }
        ft.head_x = head.x;
        ft.head_y = head.y;
        ft.true_landmarks = build_body(head, s.direction, ft.right_angle, ft.left_angle, 2.0 * cycle);

        LandmarkFrame frame;
        frame.frame_index = static_cast<std::int64_t>(i);
        frame.timestamp = t;
        frame.detected = ft.detected;
        if (ft.detected) {
            frame.landmarks = ft.true_landmarks;
            for (std::size_t k = 0; k < kSymmetricPairs.size(); ++k) {
                ft.swapped[k] = s.swap_prob > 0.0 && unit(swap_rng) < s.swap_prob;
                if (ft.swapped[k])
                    swap_pair(frame, kSymmetricPairs[k]);
            }
        }
        sim.sequence.frames.push_back(frame);
        sim.truth.frames.push_back(ft);
    }
    return sim;
}

FrameRenderer::FrameRenderer(const Simulation& sim, const PoolCalibration& cal) : sim_(sim), cal_(cal) {
    cal_.validate();
    const auto& s = sim_.scenario;
    const Layout layout = make_layout(s);
    background_ = RgbImage(layout.width, layout.height, kWaterColor);

    const double stripe = kStripeMetres * kPixelsPerMetre;
    const double spacing = sim_.truth.marker_spacing * kPixelsPerMetre;
    const int along_pixels = static_cast<int>(layout.along_extent);
    for (int i = 0; i < along_pixels; ++i) {
        const double a = s.direction.sense == Sense::positive ? i + 0.5 : layout.along_extent - i - 0.5;
        const double rel = a - layout.start;
        const double k = std::floor(rel / spacing);
        if (k < 1.0 || rel - k * spacing >= stripe)
            continue;
        if (s.direction.axis == Axis::horizontal)
            background_.fill_rect(i, 0, i + 1, layout.height, cal_.marker_color);
        else
            background_.fill_rect(0, i, layout.width, i + 1, cal_.marker_color);
    }
}

const RgbImage& FrameRenderer::render(std::size_t index) {
    const auto& ft = sim_.truth.frames.at(index);
    const auto& s = sim_.scenario;
    frame_ = background_;

    const Vec2 b = travel_vector(s.direction);
    const Vec2 r = right_side_vector(s.direction);
    const Vec2 head{ft.head_x, ft.head_y};
    for (double back = 0.1; back <= kTorso + 1e-9; back += 0.1) {
        const LandmarkPoint p = at(head, b, r, -back, 0.0);
        frame_.fill_disc(p.x, p.y, 2.5, kSuit);
    }
    frame_.fill_disc(head.x, head.y, 3.0, kSkin);

    auto rng = stream(s.seed ^ splitmix64(static_cast<std::uint64_t>(index)), kSplash);
    if (s.splash_prob > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < s.splash_prob) {
        const double back = (cal_.crop_width + 6) / kPixelsPerMetre;
        const double half = (cal_.crop_height / 2 + 4) / kPixelsPerMetre;
        const LandmarkPoint c0 = at(head, b, r, -back, -half);
        const LandmarkPoint c1 = at(head, b, r, 0.0, half);
        frame_.fill_rect(static_cast<int>(std::floor(std::min(c0.x, c1.x))),
                         static_cast<int>(std::floor(std::min(c0.y, c1.y))),
                         static_cast<int>(std::ceil(std::max(c0.x, c1.x))),
                         static_cast<int>(std::ceil(std::max(c0.y, c1.y))), kSpray);
    }
    return frame_;
}

void render_frames(const Simulation& sim, const PoolCalibration& cal,
                   const std::function<void(std::size_t, const RgbImage&)>& sink) {
    FrameRenderer renderer(sim, cal);
    for (std::size_t i = 0; i < renderer.frame_count(); ++i)
        sink(i, renderer.render(i));
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double get_number(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end())
        return fallback;
    if (!it->is_number())
        throw InvalidArgument(std::string("scenario field \"") + key + "\" must be a number");
    return it->get<double>();
}

} // namespace

SwimScenario parse_scenario(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed scenario: ") + e.what(), 0);
    }
    if (!j.is_object())
        throw ParseError("scenario must be a JSON object", 0);

    static const char* const known[] = {"cadence", "velocity", "direction", "duration", "fps",
                                        "dropout_prob", "swap_prob", "angle_noise_sd", "asymmetry_offset",
                                        "seed", "start_phase", "dropout_burst_mean", "splash_prob",
                                        "position_noise_px", "amplitude", "offset"};
    for (const auto& item : j.items()) {
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known))
            throw InvalidArgument("unknown scenario field \"" + item.key() + "\"");
    }

    SwimScenario s;
    s.cadence = get_number(j, "cadence", s.cadence);
    s.velocity = get_number(j, "velocity", s.velocity);
    if (j.contains("direction")) {
        if (!j["direction"].is_string())
            throw InvalidArgument("scenario field \"direction\" must be a string");
        s.direction = parse_direction(j["direction"].get<std::string>());
    }
    s.duration = get_number(j, "duration", s.duration);
    s.fps = get_number(j, "fps", s.fps);
    s.dropout_prob = get_number(j, "dropout_prob", s.dropout_prob);
    s.swap_prob = get_number(j, "swap_prob", s.swap_prob);
    s.angle_noise_sd = get_number(j, "angle_noise_sd", s.angle_noise_sd);
    s.asymmetry_offset = get_number(j, "asymmetry_offset", s.asymmetry_offset);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer())
            throw InvalidArgument("scenario field \"seed\" must be an integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    s.start_phase = get_number(j, "start_phase", s.start_phase);
    s.dropout_burst_mean = get_number(j, "dropout_burst_mean", s.dropout_burst_mean);
    s.splash_prob = get_number(j, "splash_prob", s.splash_prob);
    s.position_noise_px = get_number(j, "position_noise_px", s.position_noise_px);
    s.amplitude = get_number(j, "amplitude", s.amplitude);
    s.offset = get_number(j, "offset", s.offset);
    s.validate();
    return s;
}

void write_scenario(const SwimScenario& s, std::ostream& out) {
    ordered_json j;
    j["cadence"] = s.cadence;
    j["velocity"] = s.velocity;
    j["direction"] = to_string(s.direction);
    j["duration"] = s.duration;
    j["fps"] = s.fps;
    j["dropout_prob"] = s.dropout_prob;
    j["swap_prob"] = s.swap_prob;
    j["angle_noise_sd"] = s.angle_noise_sd;
    j["asymmetry_offset"] = s.asymmetry_offset;
    j["seed"] = s.seed;
    j["start_phase"] = s.start_phase;
    j["dropout_burst_mean"] = s.dropout_burst_mean;
    j["splash_prob"] = s.splash_prob;
    j["position_noise_px"] = s.position_noise_px;
    j["amplitude"] = s.amplitude;
    j["offset"] = s.offset;
    out << j.dump(2) << '\n';
}

void write_truth(const Simulation& sim, std::ostream& out) {
    const auto& t = sim.truth;
    ordered_json j;
    j["cadence"] = t.cadence;
    j["velocity"] = t.velocity;
    j["direction"] = to_string(t.direction);
    j["marker_spacing"] = t.marker_spacing;
    j["detection_rate"] = detection_rate(sim.sequence);
    j["crossing_times"] = t.crossing_times;
    ordered_json frames = ordered_json::array();
    for (std::size_t i = 0; i < t.frames.size(); ++i) {
        const auto& f = t.frames[i];
        ordered_json fj;
        fj["frame"] = i;
        fj["detected"] = f.detected;
        fj["phase"] = f.phase;
        fj["right_angle"] = f.right_angle;
        fj["left_angle"] = f.left_angle;
        fj["head"] = {f.head_x, f.head_y};
        fj["swapped_pairs"] = f.swapped;
        frames.push_back(std::move(fj));
    }
    j["frames"] = std::move(frames);
    out << j.dump() << '\n';
}

} // namespace strokelab::oracle
