#include "strokelab/cli.hpp"
#include "strokelab/landmarks.hpp"
#include "strokelab/oracle.hpp"
#include "strokelab/report.hpp"

#include "support.hpp"

#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace strokelab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Enough of draft-07 for the report schema: type, enum, required, properties,
// additionalProperties = false, items, minimum/maximum and local $ref.
void check_schema(const json& value, const json& schema, const json& root, const std::string& path,
                  std::vector<std::string>& errors) {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"];
        check_schema(value, root.at(json::json_pointer(ref.substr(1))), root, path, errors);
        return;
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        const bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                        (t == "string" && value.is_string()) || (t == "boolean" && value.is_boolean()) ||
                        (t == "number" && value.is_number()) || (t == "integer" && value.is_number_integer());
        if (!ok) {
            errors.push_back(path + ": expected " + t);
            return;
        }
    }
    if (schema.contains("enum") && std::find(schema["enum"].begin(), schema["enum"].end(), value) == schema["enum"].end())
        errors.push_back(path + ": not in enum");
    if (value.is_number()) {
        if (schema.contains("minimum") && value.get<double>() < schema["minimum"].get<double>())
            errors.push_back(path + ": below minimum");
        if (schema.contains("maximum") && value.get<double>() > schema["maximum"].get<double>())
            errors.push_back(path + ": above maximum");
    }
    if (value.is_object()) {
        for (const auto& r : schema.value("required", json::array()))
            if (!value.contains(r.get<std::string>()))
                errors.push_back(path + ": missing " + r.get<std::string>());
        const auto props = schema.value("properties", json::object());
        for (const auto& [k, v] : value.items()) {
            if (props.contains(k))
                check_schema(v, props[k], root, path + "/" + k, errors);
            else if (schema.contains("additionalProperties") && !schema["additionalProperties"].get<bool>())
                errors.push_back(path + ": unexpected " + k);
        }
    }
    if (value.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < value.size(); ++i)
            check_schema(value[i], schema["items"], root, path + "/" + std::to_string(i), errors);
}

std::vector<std::string> schema_errors(const std::string& report) {
    std::ifstream in(std::string(STROKELAB_SOURCE_DIR) + "/schemas/report.schema.json");
    const json schema = json::parse(in);
    std::vector<std::string> errors;
    check_schema(json::parse(report), schema, schema, "", errors);
    return errors;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

oracle::SwimScenario training_scenario() {
    std::ifstream in(std::string(STROKELAB_SOURCE_DIR) + "/tests/data/training_scenario.json");
    return oracle::parse_scenario(in);
}

fs::path write_clip(const fs::path& dir, const oracle::Simulation& sim, const std::string& name = "clip.jsonl") {
    const auto p = dir / name;
    std::ofstream out(p);
    write_sequence(sim.sequence, out);
    return p;
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "strokelab");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (out_text)
        *out_text = out.str();
    if (err_text)
        *err_text = err.str();
    return code;
}

} // namespace

TEST_CASE("training clip yields every section and FFT") {
    const auto dir = test::temp_dir("report_training");
    const auto sim = oracle::generate(training_scenario());
    PipelineOptions opt;
    opt.input = write_clip(dir, sim).string();
    opt.reproducible = true;
    const auto res = run_pipeline(opt);
    REQUIRE(res.exit_code == kExitOk);
    const auto& r = *res.report;
    CHECK(r.detection_rate >= 0.9);
    CHECK(r.direction == kRightToLeft);
    CHECK(r.direction_source == "auto");
    CHECK(r.swapped_frames > 0);
    REQUIRE(r.symmetry);
    CHECK(r.symmetry->si_percent > 0.0);
    REQUIRE(r.stroke);
    CHECK(r.stroke->method == StrokeMethod::fft);
    CHECK(std::abs(r.stroke->duration - 1.75) <= 0.3);
    const auto text = report_json(r);
    const auto errors = schema_errors(text);
    for (const auto& e : errors)
        INFO(e);
    CHECK(errors.empty());
    CHECK(json::parse(text)["generated_at"] == "1970-01-01T00:00:00Z");
}

TEST_CASE("a clip without detections exits with code 2") {
    const auto dir = test::temp_dir("report_empty");
    LandmarkSequence seq;
    seq.image_width = 100;
    seq.image_height = 100;
    for (int i = 0; i < 10; ++i) {
        LandmarkFrame f;
        f.frame_index = i;
        f.timestamp = i / 60.0;
        seq.frames.push_back(f);
    }
    const auto path = dir / "empty.jsonl";
    {
        std::ofstream out(path);
        write_sequence(seq, out);
    }
    PipelineOptions opt;
    opt.input = path.string();
    const auto res = run_pipeline(opt);
    CHECK(res.exit_code == kExitNoDetections);
    CHECK(res.error.find("no detected frames") != std::string::npos);
    std::string err;
    CHECK(run_cli({"analyze", "--input", path.string()}, nullptr, &err) == 2);
    CHECK(err.find("no detected frames") != std::string::npos);
}

TEST_CASE("a malformed file exits with code 1") {
    const auto dir = test::temp_dir("report_bad");
    const auto path = dir / "bad.jsonl";
    std::ofstream(path) << "{\"fps\":60,\"width\":10,\"height\":10}\n{\"frame\":0,\n";
    PipelineOptions opt;
    opt.input = path.string();
    const auto res = run_pipeline(opt);
    CHECK(res.exit_code == kExitParseFailure);
    CHECK(res.error.find("line 2") != std::string::npos);
    CHECK(run_cli({"analyze", "--input", (dir / "missing.jsonl").string()}) == kExitParseFailure);
}

TEST_CASE("velocity from a crossings file") {
    const auto dir = test::temp_dir("report_crossings");
    oracle::SwimScenario sc;
    sc.duration = 10.0;
    const auto clip = write_clip(dir, oracle::generate(sc));
    const auto cross = dir / "crossings.jsonl";
    std::ofstream(cross) << "{\"t\":2.0,\"frame\":120,\"distance_m\":10}\n{\"t\":9.0,\"frame\":540,\"distance_m\":20}\n";
    PipelineOptions opt;
    opt.input = clip.string();
    opt.crossings_in = cross.string();
    const auto res = run_pipeline(opt);
    REQUIRE(res.report->velocity);
    CHECK(res.report->velocity->source == "crossings-in");
    REQUIRE(res.report->velocity->result);
    CHECK(res.report->velocity->result->average == doctest::Approx(10.0 / 7.0));
    CHECK(schema_errors(report_json(*res.report)).empty());
}

TEST_CASE("velocity from rendered frames through the CLI") {
    const auto dir = test::temp_dir("report_frames");
    const auto scenario = dir / "scenario.json";
    std::ofstream(scenario) << R"({"cadence":1.38,"velocity":1.43,"duration":16,"fps":30,"direction":"ltr"})";
    REQUIRE(run_cli({"simulate", "--scenario", scenario.string(), "--out", (dir / "clip.jsonl").string(), "--truth",
                     (dir / "truth.json").string(), "--frames-dir", (dir / "frames").string()}) == 0);
    std::string out;
    REQUIRE(run_cli({"analyze", "--input", (dir / "clip.jsonl").string(), "--frames-dir", (dir / "frames").string(),
                     "--crossings-out", (dir / "crossings.jsonl").string(), "--series-out", (dir / "series").string(),
                     "--spectrum-out", (dir / "spectrum.csv").string(), "--report", (dir / "report.json").string(),
                     "--quiet"},
                    &out) == 0);
    CHECK(out.empty());
    const auto report = json::parse(slurp(dir / "report.json"));
    CHECK(report["velocity"]["source"] == "frames");
    CHECK(std::abs(report["velocity"]["average_mps"].get<double>() - 1.43) <= 0.05);
    CHECK(schema_errors(report.dump()).empty());
    std::ifstream crossings(dir / "crossings.jsonl");
    CHECK(parse_crossings(crossings).size() == 2);
    CHECK(slurp(dir / "series" / "left.csv").rfind("t,angle_deg\n", 0) == 0);
    CHECK(slurp(dir / "series" / "right.csv").rfind("t,angle_deg\n", 0) == 0);
    CHECK(slurp(dir / "spectrum.csv").rfind("f_hz,magnitude\n", 0) == 0);
}

TEST_CASE("reproducible reports are byte-identical") {
    const auto dir = test::temp_dir("report_repro");
    const auto clip = write_clip(dir, oracle::generate(training_scenario()));
    std::string a, b;
    REQUIRE(run_cli({"analyze", "--input", clip.string(), "--reproducible", "--quiet"}, &a) == 0);
    REQUIRE(run_cli({"analyze", "--input", clip.string(), "--reproducible", "--quiet"}, &b) == 0);
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("batch mode writes one report per input") {
    const auto dir = test::temp_dir("report_batch");
    std::vector<std::string> args = {"analyze"};
    for (int i = 0; i < 3; ++i) {
        oracle::SwimScenario sc;
        sc.seed = 100 + i;
        sc.duration = 8.0;
        args.push_back("--input");
        args.push_back(write_clip(dir, oracle::generate(sc), "swim" + std::to_string(i) + ".jsonl").string());
    }
    args.insert(args.end(), {"--report", (dir / "out").string(), "--jobs", "2", "--reproducible", "--quiet"});
    REQUIRE(run_cli(args) == 0);
    for (int i = 0; i < 3; ++i)
        CHECK(fs::exists(dir / "out" / ("swim" + std::to_string(i) + ".report.json")));
}

TEST_CASE("direction override and conflicting options") {
    const auto dir = test::temp_dir("report_options");
    oracle::SwimScenario sc;
    sc.duration = 8.0;
    const auto clip = write_clip(dir, oracle::generate(sc));
    std::string out;
    REQUIRE(run_cli({"analyze", "--input", clip.string(), "--direction", "ltr", "--quiet"}, &out) == 0);
    CHECK(json::parse(out)["direction"]["source"] == "override");
    CHECK(run_cli({"analyze", "--input", clip.string(), "--direction", "sideways"}) != 0);
    CHECK(run_cli({"analyze", "--input", clip.string(), "--frames-dir", dir.string(), "--crossings-in", "x"}) != 0);
}

TEST_CASE("one-sided stroke summary") {
    StrokeEstimate e;
    e.method = StrokeMethod::peaks;
    e.duration = 2.0;
    const auto s = combine_strokes(std::nullopt, e);
    REQUIRE(s);
    CHECK(s->method == StrokeMethod::peaks);
    CHECK(s->duration == 2.0);
    CHECK_FALSE(combine_strokes(std::nullopt, std::nullopt));
    StrokeEstimate f;
    f.duration = 3.0;
    const auto both = combine_strokes(f, e);
    CHECK(both->duration == 2.5);
    CHECK(both->method == StrokeMethod::peaks);
}
