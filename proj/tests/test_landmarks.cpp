#include "strokelab/error.hpp"
#include "strokelab/landmarks.hpp"
#include "strokelab/oracle.hpp"

#include "fuzz.hpp"
#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace strokelab;

namespace {

LandmarkSequence parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_sequence(in);
}

std::string detected_line(int frame, double t, std::size_t count) {
    std::string s = "{\"frame\":" + std::to_string(frame) + ",\"t\":" + std::to_string(t) +
                    ",\"detected\":true,\"landmarks\":[";
    for (std::size_t i = 0; i < count; ++i)
        s += std::string(i ? "," : "") + "{\"x\":10.5,\"y\":20.25,\"v\":0.9}";
    return s + "]}";
}

std::size_t error_line(const std::string& text) {
    try {
        parse_text(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return static_cast<std::size_t>(-1);
}

} // namespace

TEST_CASE("header with no frames parses to an empty sequence") {
    const auto seq = parse_text("{\"fps\":60,\"width\":3840,\"height\":2160}\n");
    CHECK(seq.fps == 60.0);
    CHECK(seq.image_width == 3840);
    CHECK(seq.image_height == 2160);
    CHECK(seq.frames.empty());
}

TEST_CASE("undetected frame without landmarks key") {
    const auto seq = parse_text("{\"fps\":60,\"width\":100,\"height\":100}\n"
                                "{\"frame\":0,\"t\":0,\"detected\":false}\n");
    REQUIRE(seq.frames.size() == 1);
    CHECK_FALSE(seq.frames[0].detected);
}

TEST_CASE("detected frame with 32 landmarks is rejected with its line number") {
    const std::string text = "{\"fps\":60,\"width\":100,\"height\":100}\n" + detected_line(0, 0.0, 33) + "\n" +
                             detected_line(1, 1.0 / 60, 32) + "\n";
    try {
        parse_text(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()) == "landmark count 32 ≠ 33 at line 3");
    }
}

TEST_CASE("optional z coordinate is accepted and dropped") {
    std::string line = detected_line(0, 0.0, 33);
    const auto pos = line.find("\"v\":0.9}");
    line.replace(pos, 8, "\"v\":0.9,\"z\":-0.3}");
    const auto seq = parse_text("{\"fps\":30,\"width\":64,\"height\":48}\n" + line + "\n");
    CHECK(seq.frames[0].landmarks[5].x == 10.5);
}

TEST_CASE("blank lines are skipped but still counted") {
    const std::string text = "{\"fps\":60,\"width\":100,\"height\":100}\n\n" + detected_line(0, 0.0, 31) + "\n";
    CHECK(error_line(text) == 3);
}

TEST_CASE("parser error paths") {
    const std::string header = "{\"fps\":60,\"width\":100,\"height\":100}\n";
    SUBCASE("empty input has no header") {
        CHECK_THROWS_AS(parse_text(""), ParseError);
    }
    SUBCASE("frame before header") {
        CHECK(error_line("{\"frame\":0,\"t\":0,\"detected\":false}\n") == 1);
    }
    SUBCASE("non-positive fps") {
        CHECK(error_line("{\"fps\":0,\"width\":100,\"height\":100}\n") == 1);
    }
    SUBCASE("non-monotonic frame index") {
        CHECK(error_line(header + "{\"frame\":3,\"t\":0.05,\"detected\":false}\n"
                                  "{\"frame\":3,\"t\":0.05,\"detected\":false}\n") == 3);
    }
    SUBCASE("timestamp far from frame/fps") {
        CHECK(error_line(header + "{\"frame\":60,\"t\":5.0,\"detected\":false}\n") == 2);
    }
    SUBCASE("landmarks on an undetected frame") {
        std::string line = detected_line(0, 0.0, 33);
        line.replace(line.find("true"), 4, "false");
        CHECK(error_line(header + line + "\n") == 2);
    }
    SUBCASE("malformed JSON") {
        CHECK(error_line(header + "{\"frame\":0,\"t\":0,\n") == 2);
    }
    SUBCASE("visibility out of range") {
        std::string line = detected_line(0, 0.0, 33);
        line.replace(line.find("\"v\":0.9"), 7, "\"v\":1.2");
        CHECK(error_line(header + line + "\n") == 2);
    }
}

TEST_CASE("writer emits one miss line per undetected frame") {
    LandmarkSequence seq;
    seq.fps = 60.0;
    seq.image_width = 640;
    seq.image_height = 480;
    seq.frames.push_back(test::blank_frame(0));
    LandmarkFrame miss;
    miss.frame_index = 1;
    miss.timestamp = 1.0 / 60.0;
    seq.frames.push_back(miss);
    seq.frames.push_back(test::blank_frame(2));

    const std::string text = write_sequence(seq);
    std::size_t misses = 0;
    for (const auto& l : test::split_lines(text))
        misses += l.find("\"detected\":false") != std::string::npos;
    CHECK(misses == 1);
    CHECK(test::split_lines(text)[0] == "{\"fps\":60.0,\"width\":640,\"height\":480}");
}

TEST_CASE("writer output is byte-identical across runs") {
    oracle::SwimScenario sc;
    sc.duration = 1.0 / 60.0; // two frames
    sc.swap_prob = 0.5;
    sc.angle_noise_sd = 3.0;
    const auto a = write_sequence(oracle::generate(sc).sequence);
    const auto b = write_sequence(oracle::generate(sc).sequence);
    CHECK(test::split_lines(a).size() == 3);
    CHECK(a == b);
}

TEST_CASE("round trip: parse(write(s)) == s on random sequences") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto seq = test::random_sequence(rng);
        validate(seq);
        const auto back = parse_text(write_sequence(seq));
        REQUIRE(back == seq);
    }
}

TEST_CASE("mutated files are rejected at the mutated line") {
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 200) {
        auto seq = test::random_sequence(rng);
        if (seq.frames.size() < 2 || std::none_of(seq.frames.begin(), seq.frames.end(),
                                                  [](const auto& f) { return f.detected; }))
            continue;
        const auto m = test::mutate(write_sequence(seq), rng);
        INFO(m.kind);
        CHECK(error_line(m.text) == m.line);
        ++checked;
    }
}

TEST_CASE("validate rejects invariant violations") {
    LandmarkSequence seq;
    seq.image_width = 10;
    seq.image_height = 10;
    seq.frames.push_back(test::blank_frame(0));
    CHECK_NOTHROW(validate(seq));
    seq.frames[0].landmarks[3].x = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(seq), InvalidArgument);
}
