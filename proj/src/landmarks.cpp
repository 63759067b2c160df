#include "strokelab/landmarks.hpp"

#include "strokelab/error.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace strokelab {
namespace {

using nlohmann::json;

std::optional<std::string> check_point(const LandmarkPoint& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        return "non-finite coordinate";
    if (!(p.visibility >= 0.0 && p.visibility <= 1.0))
        return "visibility " + std::to_string(p.visibility) + " outside [0,1]";
    return std::nullopt;
}

// Invariants shared by the parser (line-addressed) and validate() (frame-addressed).
std::optional<std::string> check_frame(const LandmarkFrame& f, const LandmarkFrame* prev, double fps) {
    if (f.frame_index < 0)
        return "negative frame index";
    if (!std::isfinite(f.timestamp) || f.timestamp < 0.0)
        return "timestamp must be finite and >= 0";
    if (prev) {
        if (f.frame_index <= prev->frame_index)
            return "non-monotonic frame index " + std::to_string(f.frame_index) + " after " +
                   std::to_string(prev->frame_index);
        if (f.timestamp < prev->timestamp)
            return "decreasing timestamp";
    }
    const double nominal = static_cast<double>(f.frame_index) / fps;
    if (std::abs(f.timestamp - nominal) > 1.0 / fps + 1e-9)
        return "timestamp " + std::to_string(f.timestamp) + " inconsistent with frame " +
               std::to_string(f.frame_index) + " at " + std::to_string(fps) + " fps";
    if (f.detected) {
        for (const auto& p : f.landmarks)
            if (auto err = check_point(p))
                return err;
    }
    return std::nullopt;
}

std::optional<std::string> check_header(double fps, long long width, long long height) {
    if (!std::isfinite(fps) || fps <= 0.0)
        return "header fps must be > 0";
    if (width <= 0 || height <= 0)
        return "header width and height must be > 0";
    return std::nullopt;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

double number_field(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("missing field \"") + key + "\"", line);
    if (!it->is_number())
        throw ParseError(std::string("field \"") + key + "\" must be a number", line);
    return it->get<double>();
}

long long integer_field(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("missing field \"") + key + "\"", line);
    if (!it->is_number_integer())
        throw ParseError(std::string("field \"") + key + "\" must be an integer", line);
    return it->get<long long>();
}

LandmarkPoint parse_point(const json& j, std::size_t line) {
    if (!j.is_object())
        throw ParseError("landmark entry must be an object", line);
    LandmarkPoint p;
    p.x = number_field(j, "x", line);
    p.y = number_field(j, "y", line);
    p.visibility = number_field(j, "v", line);
    // "z" is accepted and discarded; analysis is planar.
    return p;
}

LandmarkFrame parse_frame(const json& j, std::size_t line) {
    LandmarkFrame f;
    f.frame_index = integer_field(j, "frame", line);
    f.timestamp = number_field(j, "t", line);
    auto det = j.find("detected");
    if (det == j.end() || !det->is_boolean())
        throw ParseError("field \"detected\" must be a boolean", line);
    f.detected = det->get<bool>();

    auto lm = j.find("landmarks");
    if (!f.detected) {
        if (lm != j.end() && !(lm->is_array() && lm->empty()) && !lm->is_null())
            throw ParseError("landmarks present on undetected frame", line);
        return f;
    }
    if (lm == j.end() || !lm->is_array())
        throw ParseError("detected frame without landmarks array", line);
    if (lm->size() != kLandmarkCount)
        throw ParseError("landmark count " + std::to_string(lm->size()) + " ≠ " +
                             std::to_string(kLandmarkCount),
                         line);
    for (std::size_t i = 0; i < kLandmarkCount; ++i)
        f.landmarks[i] = parse_point((*lm)[i], line);
    return f;
}

} // namespace

void validate(const LandmarkSequence& seq) {
    if (auto err = check_header(seq.fps, seq.image_width, seq.image_height))
        throw InvalidArgument(*err);
    const LandmarkFrame* prev = nullptr;
    for (const auto& f : seq.frames) {
        if (auto err = check_frame(f, prev, seq.fps))
            throw InvalidArgument(*err + " (frame " + std::to_string(f.frame_index) + ")");
        prev = &f;
    }
}

LandmarkSequence parse_sequence(std::istream& in) {
    LandmarkSequence seq;
    bool have_header = false;
    std::string text;
    std::size_t line = 0;

    while (std::getline(in, text)) {
        ++line;
        if (is_blank(text))
            continue;

        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed record: ") + e.what(), line);
        }
        if (!j.is_object())
            throw ParseError("malformed record: expected a JSON object", line);

        if (!have_header) {
            if (!j.contains("fps") || j.contains("frame"))
                throw ParseError("missing header", line);
            seq.fps = number_field(j, "fps", line);
            const auto w = integer_field(j, "width", line);
            const auto h = integer_field(j, "height", line);
            if (auto err = check_header(seq.fps, w, h))
                throw ParseError(*err, line);
            seq.image_width = static_cast<int>(w);
            seq.image_height = static_cast<int>(h);
            have_header = true;
            continue;
        }

        LandmarkFrame f = parse_frame(j, line);
        const LandmarkFrame* prev = seq.frames.empty() ? nullptr : &seq.frames.back();
        if (auto err = check_frame(f, prev, seq.fps))
            throw ParseError(*err, line);
        seq.frames.push_back(f);
    }
    if (!have_header)
        throw ParseError("missing header", 0);
    return seq;
}

LandmarkSequence parse_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path, 0);
    return parse_sequence(in);
}

void write_sequence(const LandmarkSequence& seq, std::ostream& out) {
    using nlohmann::ordered_json;

    ordered_json header;
    header["fps"] = seq.fps;
    header["width"] = seq.image_width;
    header["height"] = seq.image_height;
    out << header.dump() << '\n';

    for (const auto& f : seq.frames) {
        ordered_json j;
        j["frame"] = f.frame_index;
        j["t"] = f.timestamp;
        j["detected"] = f.detected;
        if (f.detected) {
            ordered_json lms = ordered_json::array();
            for (const auto& p : f.landmarks) {
                ordered_json pt;
                pt["x"] = p.x;
                pt["y"] = p.y;
                pt["v"] = p.visibility;
                lms.push_back(std::move(pt));
            }
            j["landmarks"] = std::move(lms);
        }
        out << j.dump() << '\n';
    }
}

std::string write_sequence(const LandmarkSequence& seq) {
    std::ostringstream os;
    write_sequence(seq, os);
    return os.str();
}

} // namespace strokelab
