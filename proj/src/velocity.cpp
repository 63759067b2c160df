#include "strokelab/velocity.hpp"

#include "strokelab/error.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace strokelab {

void PoolCalibration::validate() const {
    if (!(marker_spacing > 0.0))
        throw InvalidArgument("marker spacing must be > 0");
    if (crop_width <= 0 || crop_height <= 0)
        throw InvalidArgument("crop dimensions must be > 0");
    if (!(min_colored_fraction > 0.0 && min_colored_fraction <= 1.0))
        throw InvalidArgument("min colored fraction must be in (0, 1]");
    if (color_tolerance < 0 || color_tolerance > 255)
        throw InvalidArgument("color tolerance must be in [0, 255]");
}

PixelRect trailing_crop(const LandmarkPoint& head, const PoolCalibration& cal, SwimDirection dir,
                        int width, int height) {
    const int hx = static_cast<int>(std::floor(head.x));
    const int hy = static_cast<int>(std::floor(head.y));
    const int along = cal.crop_width;
    const int across = cal.crop_height;
    PixelRect r;
    if (dir.axis == Axis::horizontal) {
        r.y0 = hy - across / 2;
        r.y1 = r.y0 + across;
        if (dir.sense == Sense::positive) {
            r.x0 = hx - along;
            r.x1 = hx;
        } else {
            r.x0 = hx + 1;
            r.x1 = hx + 1 + along;
        }
    } else {
        r.x0 = hx - across / 2;
        r.x1 = r.x0 + across;
        if (dir.sense == Sense::positive) {
            r.y0 = hy - along;
            r.y1 = hy;
        } else {
            r.y0 = hy + 1;
            r.y1 = hy + 1 + along;
        }
    }
    r.x0 = std::clamp(r.x0, 0, width);
    r.x1 = std::clamp(r.x1, 0, width);
    r.y0 = std::clamp(r.y0, 0, height);
    r.y1 = std::clamp(r.y1, 0, height);
    return r;
}

Adjacency marker_adjacency(const RgbImage& frame, const LandmarkPoint& head, const PoolCalibration& cal,
                           SwimDirection dir) {
    Adjacency out;
    const bool head_inside = head.x >= 0.0 && head.y >= 0.0 && head.x < frame.width() &&
                             head.y < frame.height();
    const PixelRect crop = trailing_crop(head, cal, dir, frame.width(), frame.height());
    if (!head_inside || crop.empty()) {
        out.crop_outside = true;
        return out;
    }

    const auto& k = simd::active();
    const auto tol = static_cast<std::uint8_t>(cal.color_tolerance);
    const auto cols = static_cast<std::size_t>(crop.x1 - crop.x0);
    std::size_t hits = 0;
    for (int y = crop.y0; y < crop.y1; ++y)
        hits += k.count_color_matches(frame.row(y) + 3 * static_cast<std::size_t>(crop.x0), cols,
                                      cal.marker_color, tol);

    out.colored_fraction = static_cast<double>(hits) / static_cast<double>(crop.area());
    out.adjacent = out.colored_fraction >= cal.min_colored_fraction;
    return out;
}

std::vector<MarkerCrossing> extract_crossings(std::span<const AdjacencySample> adjacency,
                                              const PoolCalibration& cal, double refractory) {
    std::vector<MarkerCrossing> crossings;
    bool in_run = false;
    double last_merged_end = 0.0; // last true sample belonging to the current crossing

    for (const auto& s : adjacency) {
        if (!s.adjacent) {
            in_run = false;
            continue;
        }
        if (!in_run) {
            in_run = true;
            const bool merge = !crossings.empty() &&
                               (s.timestamp - crossings.back().timestamp < refractory ||
                                s.timestamp - last_merged_end < refractory);
            if (!merge) {
                const double k = static_cast<double>(crossings.size() + 1);
                crossings.push_back({s.timestamp, s.frame_index, k * cal.marker_spacing});
            }
        }
        last_merged_end = s.timestamp;
    }
    return crossings;
}

VelocityResult velocity_segments(std::span<const MarkerCrossing> crossings) {
    if (crossings.size() < 2)
        throw InsufficientData("velocity needs at least 2 marker crossings, got " +
                               std::to_string(crossings.size()));
    VelocityResult out;
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
        const auto& a = crossings[i];
        const auto& b = crossings[i + 1];
        const double dt = b.timestamp - a.timestamp;
        const double dd = b.cumulative_distance - a.cumulative_distance;
        if (!(dt > 0.0) || !(dd > 0.0))
            throw InvalidArgument("marker crossings must increase in time and distance");
        out.segments.push_back({a.timestamp, b.timestamp, dd, dd / dt});
    }
    const auto& first = crossings.front();
    const auto& last = crossings.back();
    out.average = (last.cumulative_distance - first.cumulative_distance) / (last.timestamp - first.timestamp);
    return out;
}

std::vector<MarkerCrossing> parse_crossings(std::istream& in) {
    using nlohmann::json;
    std::vector<MarkerCrossing> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed crossing record: ") + e.what(), line);
        }
        if (!j.is_object() || !j.contains("t") || !j["t"].is_number() || !j.contains("frame") ||
            !j["frame"].is_number_integer() || !j.contains("distance_m") || !j["distance_m"].is_number())
            throw ParseError("crossing record needs numeric t, integer frame, numeric distance_m", line);
        MarkerCrossing c{j["t"].get<double>(), j["frame"].get<std::int64_t>(), j["distance_m"].get<double>()};
        if (!std::isfinite(c.timestamp) || !std::isfinite(c.cumulative_distance))
            throw ParseError("non-finite crossing value", line);
        if (!out.empty() && (c.timestamp <= out.back().timestamp ||
                             c.cumulative_distance <= out.back().cumulative_distance))
            throw ParseError("crossings must strictly increase in t and distance_m", line);
        out.push_back(c);
    }
    return out;
}

void write_crossings(std::span<const MarkerCrossing> crossings, std::ostream& out) {
    for (const auto& c : crossings) {
        nlohmann::ordered_json j;
        j["t"] = c.timestamp;
        j["frame"] = c.frame_index;
        j["distance_m"] = c.cumulative_distance;
        out << j.dump() << '\n';
    }
}

} // namespace strokelab
