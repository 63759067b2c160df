#include "strokelab/cli.hpp"

#include "strokelab/error.hpp"
#include "strokelab/oracle.hpp"
#include "strokelab/report.hpp"
#include "strokelab/simd/kernels.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace strokelab::cli {
namespace {

namespace fs = std::filesystem;

Rgb parse_color(const std::string& text) {
    std::istringstream in(text);
    int c[3];
    char sep1 = 0, sep2 = 0;
    if (!(in >> c[0] >> sep1 >> c[1] >> sep2 >> c[2]) || sep1 != ',' || sep2 != ',' || !in.eof())
        throw InvalidArgument("marker color must be R,G,B");
    for (int v : c)
        if (v < 0 || v > 255)
            throw InvalidArgument("marker color channels must be in 0..255");
    return {static_cast<std::uint8_t>(c[0]), static_cast<std::uint8_t>(c[1]), static_cast<std::uint8_t>(c[2])};
}

struct AnalyzeArgs {
    std::vector<std::string> inputs;
    std::string report;
    std::string direction = "auto";
    std::string marker_color;
    double fps_override = 0.0;
    bool quiet = false;
    int jobs = 1;
    PipelineOptions options;
};

struct SimulateArgs {
    std::string scenario;
    std::string out;
    std::string truth;
    std::string frames_dir;
    std::string marker_color;
    PoolCalibration calibration;
};

void print_summary(const MetricsReport& r, std::ostream& out) {
    out << std::fixed << std::setprecision(4);
    out << r.input << ": detection rate " << r.detection_rate << " (" << r.frames.detected << "/"
        << r.frames.total << "), direction " << to_string(r.direction) << "\n";
    if (r.symmetry)
        out << "  SI " << r.symmetry->si_percent << " % (" << (r.symmetry->symmetric ? "symmetric" : "asymmetric")
            << ")\n";
    if (r.stroke)
        out << "  stroke duration " << r.stroke->duration << " s/cycle via " << to_string(r.stroke->method) << "\n";
    if (r.velocity && r.velocity->result)
        out << "  average velocity " << r.velocity->result->average << " m/s over "
            << r.velocity->result->segments.size() << " segment(s)\n";
    out.unsetf(std::ios::fixed);
}

int write_report(const PipelineResult& res, const std::string& path, std::ostream& out) {
    const std::string json = report_json(*res.report);
    if (path.empty() || path == "-") {
        out << json;
        return kExitOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw InvalidArgument("cannot write report " + path);
    f << json;
    return kExitOk;
}

int analyze(AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    auto& opt = a.options;
    if (a.direction != "auto")
        opt.direction = parse_direction(a.direction);
    if (!a.marker_color.empty())
        opt.calibration.marker_color = parse_color(a.marker_color);
    if (a.fps_override != 0.0)
        opt.fps_override = a.fps_override;
    opt.calibration.validate();

    const bool batch = a.inputs.size() > 1;
    if (batch && (opt.frames_dir || opt.crossings_in || opt.crossings_out || opt.series_out || opt.spectrum_out))
        throw InvalidArgument("per-file outputs/inputs (--frames-dir, --crossings-*, --series-out, "
                              "--spectrum-out) need a single --input");
    if (batch && a.report.empty())
        throw InvalidArgument("batch mode needs --report DIR");

    std::vector<PipelineResult> results(a.inputs.size());
    std::vector<std::string> failures(a.inputs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < a.inputs.size();) {
            PipelineOptions o = opt;
            o.input = a.inputs[i];
            try {
                results[i] = run_pipeline(o);
            } catch (const std::exception& e) {
                failures[i] = o.input + ": " + e.what();
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(a.inputs.size())));
    std::vector<std::jthread> pool;
    for (int t = 1; t < jobs; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();

    int exit_code = kExitOk;
    if (batch)
        fs::create_directories(a.report);
    for (std::size_t i = 0; i < results.size(); ++i) {
        auto& res = results[i];
        if (!failures[i].empty()) {
            err << "error: " << failures[i] << "\n";
            exit_code = std::max(exit_code, kExitParseFailure);
            continue;
        }
        if (res.exit_code != kExitOk) {
            err << "error: " << res.error << "\n";
            exit_code = std::max(exit_code, res.exit_code);
            continue;
        }
        for (const auto& w : res.report->warnings)
            err << "warning: " << a.inputs[i] << ": " << w << "\n";
        std::string path = a.report;
        if (batch)
            path = (fs::path(a.report) / (fs::path(a.inputs[i]).stem().string() + ".report.json")).string();
        write_report(res, path, out);
        if (!a.quiet && !path.empty() && path != "-")
            print_summary(*res.report, out);
    }
    return exit_code;
}

int simulate(const SimulateArgs& a, std::ostream& out) {
    std::ifstream in(a.scenario);
    if (!in)
        throw InvalidArgument("cannot open scenario " + a.scenario);
    PoolCalibration cal = a.calibration;
    if (!a.marker_color.empty())
        cal.marker_color = parse_color(a.marker_color);
    cal.validate();

    const oracle::SwimScenario scenario = oracle::parse_scenario(in);
    const oracle::Simulation sim = oracle::generate(scenario, cal.marker_spacing);
    {
        std::ofstream f(a.out, std::ios::binary);
        if (!f)
            throw InvalidArgument("cannot write " + a.out);
        write_sequence(sim.sequence, f);
    }
    {
        std::ofstream f(a.truth, std::ios::binary);
        if (!f)
            throw InvalidArgument("cannot write " + a.truth);
        oracle::write_truth(sim, f);
    }
    if (!a.frames_dir.empty()) {
        fs::create_directories(a.frames_dir);
        oracle::render_frames(sim, cal, [&](std::size_t i, const RgbImage& img) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%06zu.ppm", i);
            write_ppm(img, (fs::path(a.frames_dir) / name).string());
        });
    }
    out << "wrote " << sim.sequence.frames.size() << " frames to " << a.out << "\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Swimming performance metrics from body-landmark time series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", STROKELAB_VERSION);

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute metrics from a landmark JSONL file");
    analyze_cmd->add_option("--input", an.inputs, "Landmark JSONL file(s)")->required();
    auto* frames_opt = analyze_cmd->add_option("--frames-dir", an.options.frames_dir,
                                               "Directory of frame_%06d.ppm / .rgb rasters");
    auto* crossings_opt = analyze_cmd->add_option("--crossings-in", an.options.crossings_in,
                                                  "Marker-crossing events (JSONL)");
    frames_opt->excludes(crossings_opt);
    analyze_cmd->add_option("--crossings-out", an.options.crossings_out,
                            "Write crossings detected from --frames-dir");
    analyze_cmd->add_option("--report", an.report, "Report path (stdout when omitted; a directory in batch mode)");
    analyze_cmd->add_option("--series-out", an.options.series_out, "Directory for left.csv / right.csv angle series");
    analyze_cmd->add_option("--spectrum-out", an.options.spectrum_out, "CSV of the FFT magnitude spectrum");
    analyze_cmd->add_option("--direction", an.direction, "Swim direction")
        ->check(CLI::IsMember({"auto", "ltr", "rtl", "ttb", "btt"}));
    analyze_cmd->add_option("--marker-color", an.marker_color, "Marker colour R,G,B");
    analyze_cmd->add_option("--marker-tolerance", an.options.calibration.color_tolerance,
                            "Per-channel colour tolerance")
        ->check(CLI::Range(0, 255));
    analyze_cmd->add_option("--marker-spacing", an.options.calibration.marker_spacing, "Metres between markers");
    analyze_cmd->add_option("--crop-width", an.options.calibration.crop_width, "Crop length along the swim axis (px)");
    analyze_cmd->add_option("--crop-height", an.options.calibration.crop_height, "Crop size across the swim axis (px)");
    analyze_cmd->add_option("--min-colored-fraction", an.options.calibration.min_colored_fraction,
                            "Fraction of marker-coloured crop pixels for adjacency");
    analyze_cmd->add_option("--refractory", an.options.refractory, "Crossing merge window (s)");
    analyze_cmd->add_option("--fps-override", an.fps_override, "Replace the header frame rate");
    analyze_cmd->add_option("--rate-cutoff", an.options.stroke.rate_cutoff, "Detection rate at or above which FFT is used");
    analyze_cmd->add_option("--f-min", an.options.stroke.f_min, "FFT search band lower edge (Hz)");
    analyze_cmd->add_option("--f-max", an.options.stroke.f_max, "FFT search band upper edge (Hz)");
    analyze_cmd->add_option("--min-separation", an.options.stroke.min_separation, "Minimum peak spacing (s)");
    analyze_cmd->add_option("--prominence", an.options.stroke.min_prominence, "Minimum peak prominence (deg)");
    analyze_cmd->add_option("--si-threshold", an.options.si_threshold, "Symmetry threshold (%)");
    analyze_cmd->add_flag("--reproducible", an.options.reproducible, "Pin the report timestamp");
    analyze_cmd->add_flag("--quiet", an.quiet, "Only the report goes to stdout");
    analyze_cmd->add_option("--jobs", an.jobs, "Files processed concurrently")->check(CLI::PositiveNumber);

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic swimmer with ground truth");
    simulate_cmd->add_option("--scenario", sim.scenario, "Scenario JSON")->required();
    simulate_cmd->add_option("--out", sim.out, "Landmark JSONL output")->required();
    simulate_cmd->add_option("--truth", sim.truth, "Ground-truth JSON output")->required();
    simulate_cmd->add_option("--frames-dir", sim.frames_dir, "Also render frame_%06d.ppm rasters here");
    simulate_cmd->add_option("--marker-color", sim.marker_color, "Marker colour R,G,B");
    simulate_cmd->add_option("--marker-spacing", sim.calibration.marker_spacing, "Metres between markers");

    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*analyze_cmd)
            return analyze(an, out, err);
        return simulate(sim, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseFailure;
    }
}

} // namespace strokelab::cli
