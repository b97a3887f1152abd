// polsar-sd: batch driver over T3 band-file rasters.
//
//   polsar-sd simulate  -i scene.json -o scene_dir [--seed N]
//   polsar-sd decompose -i t3_dir -o power_dir [--method y4o|y4r|sdy4o]
//   polsar-sd oa        -i t3_dir -o angle_dir [--method lee|sd] [--curves r,c]
//   polsar-sd rgb       -i power_dir -o image.png
//   polsar-sd stats     -i power_dir --roi r0,c0,r1,c1 [--roi ...] [--csv F] [--json F]
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 numeric failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polsar/orientation.hpp"
#include "polsar/parallel.hpp"
#include "polsar/pipeline.hpp"
#include "polsar/raster.hpp"
#include "polsar/render.hpp"
#include "polsar/scene.hpp"

namespace fs = std::filesystem;
using namespace polsar;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidParams:
    case ErrorCode::BadRoi:
    case ErrorCode::BadSceneSpec:
    case ErrorCode::OutOfRange:
        return kExitUsage;
    case ErrorCode::Io:
    case ErrorCode::MissingBand:
    case ErrorCode::SizeMismatch:
    case ErrorCode::BadMetadata:
        return kExitIo;
    default:
        return kExitNumeric;
    }
}

struct SearchFlags {
    double grid_step_deg = 0.1;
    std::string distance = "hellinger";
    double l_eval = 4.0;

    void add_to(CLI::App& app) {
        app.add_option("--grid-step-deg", grid_step_deg, "OA search grid step in degrees (0, 1]")
            ->capture_default_str();
        app.add_option("--distance", distance, "Distance family for the OA search")
            ->check(CLI::IsMember({"hellinger", "kl"}, CLI::ignore_case))
            ->capture_default_str();
        app.add_option("--l-eval", l_eval, "Look count used to evaluate the distance curves")->capture_default_str();
    }

    SearchConfig config() const {
        SearchConfig cfg;
        cfg.grid_step = deg_to_rad(grid_step_deg);
        cfg.l_eval = LookCount(l_eval);
        cfg.distance_family =
            CLI::detail::to_lower(distance) == "kl" ? DistanceFamily::KullbackLeibler : DistanceFamily::Hellinger;
        cfg.validate();
        return cfg;
    }
};

std::pair<int, int> parse_pixel(const std::string& text) {
    std::istringstream in(text);
    int r = 0;
    int c = 0;
    char comma = 0;
    if (!(in >> r >> comma >> c) || comma != ',' || !(in >> std::ws).eof()) {
        throw Error(ErrorCode::InvalidParams, "--curves expects r,c, got '" + text + "'");
    }
    return {r, c};
}

void print_negatives(const NegativePowerStats& n) {
    std::printf("negative power pixels: %.4f%% (%zu of %zu; Ps<0: %zu, Pd<0: %zu)\n", n.percent(), n.negative,
                n.pixels, n.negative_ps, n.negative_pd);
}

int run_simulate(const fs::path& input, const fs::path& output, std::optional<std::uint64_t> seed) {
    SceneSpec spec = read_scene_spec(input);
    if (seed) {
        spec.seed = *seed;
    }
    const Scene scene = generate_scene(spec, default_workers());
    T3Raster t3 = to_t3(scene.pixels);
    if (spec.looks) {
        t3.looks = static_cast<double>(*spec.looks);
    }
    t3.description = "simulated from " + input.filename().string() + " seed " + std::to_string(spec.seed);
    write_t3(output, t3);
    write_ground_truth(output, scene.truth);
    std::printf("simulated %dx%d scene, %zu regions, looks %s, seed %llu -> %s\n", spec.rows, spec.cols,
                spec.regions.size(), spec.looks ? std::to_string(*spec.looks).c_str() : "inf",
                static_cast<unsigned long long>(spec.seed), output.string().c_str());
    return 0;
}

int run_decompose(const fs::path& input, const fs::path& output, const std::string& method,
                  const SearchFlags& search, double l_cap) {
    DecomposeOptions opts;
    opts.method = parse_decomposition_method(method);
    opts.search = search.config();
    opts.l_cap = l_cap;
    opts.workers = default_workers();
    const T3Raster t3 = read_t3(input);
    const DecomposeResult res = decompose_raster(t3, opts);
    write_power(output, res.raster);
    const auto& s = res.summary;
    std::printf("%s: %zu pixels, %zu invalid input, %zu failed, %zu flagged\n", res.raster.method.c_str(), s.pixels,
                s.invalid_input, s.failed, s.flagged);
    if (s.negatives.pixels == 0) {
        throw Error(ErrorCode::EmptyRaster, "no pixel produced a finite decomposition");
    }
    print_negatives(s.negatives);
    return 0;
}

int run_oa(const fs::path& input, const fs::path& output, const std::string& method, const SearchFlags& search,
           const std::string& curves) {
    OaOptions opts;
    opts.method = parse_oa_method(method);
    opts.search = search.config();
    opts.workers = default_workers();
    std::optional<std::pair<int, int>> pixel;
    if (!curves.empty()) {
        pixel = parse_pixel(curves);
    }
    const T3Raster t3 = read_t3(input);
    if (pixel && (pixel->first < 0 || pixel->first >= t3.rows || pixel->second < 0 || pixel->second >= t3.cols)) {
        throw Error(ErrorCode::OutOfRange, "--curves pixel " + curves + " is outside the " +
                                               std::to_string(t3.rows) + "x" + std::to_string(t3.cols) + " raster");
    }
    const OaRasterResult res = oa_raster(t3, opts);
    write_angles(output, res.raster);
    if (pixel) {
        const std::size_t i = static_cast<std::size_t>(pixel->first) * static_cast<std::size_t>(t3.cols) +
                              static_cast<std::size_t>(pixel->second);
        if (!t3.valid(i)) {
            throw Error(ErrorCode::InvalidParams, "--curves pixel " + curves + " holds invalid data");
        }
        std::ofstream csv(output / "curves.csv");
        if (!csv) {
            throw Error(ErrorCode::Io, "cannot write " + (output / "curves.csv").string());
        }
        write_curves_csv(csv, oa_curves(t3.matrix(i), opts.search));
    }
    const auto& s = res.summary;
    std::printf("oa %s: %zu pixels, %zu invalid input, %zu failed, %zu flagged\n", res.raster.method.c_str(),
                s.pixels, s.invalid_input, s.failed, s.flagged);
    return 0;
}

int run_rgb(const fs::path& input, const fs::path& output) {
    const PowerRaster p = read_power(input);
    write_png(output, render_composite(p));
    std::printf("wrote %dx%d composite (R=Pd, G=Pv, B=Ps) -> %s\n", p.cols, p.rows, output.string().c_str());
    return 0;
}

int run_stats(const fs::path& input, const std::vector<std::string>& rois, const std::string& csv_path,
              const std::string& json_path) {
    std::vector<Roi> parsed;
    for (const auto& text : rois) {
        parsed.push_back(Roi::parse(text));
    }
    const PowerRaster p = read_power(input);
    if (parsed.empty()) {
        parsed.push_back({0, 0, p.rows, p.cols});
    }
    std::vector<RoiStats> rows;
    for (const auto& roi : parsed) {
        rows.push_back(roi_stats(p, roi));
    }
    const auto open = [](const std::string& path) {
        std::ofstream out(path);
        if (!out) {
            throw Error(ErrorCode::Io, "cannot write " + path);
        }
        return out;
    };
    if (!csv_path.empty()) {
        auto out = open(csv_path);
        write_stats_csv(out, rows);
    }
    if (!json_path.empty()) {
        auto out = open(json_path);
        write_stats_json(out, rows);
    }
    if (csv_path.empty() && json_path.empty()) {
        write_stats_csv(std::cout, rows);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orientation-compensated PolSAR decomposition over T3 band-file rasters"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "polsar-sd 0.1.0");

    fs::path input;
    fs::path output;
    SearchFlags search;
    std::string decompose_method;
    std::string oa_method;
    double l_cap = kDefaultLookCap;
    std::string curves;
    std::vector<std::string> rois;
    std::string csv_path;
    std::string json_path;
    std::optional<std::uint64_t> seed;

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic T3 scene with ground truth");
    simulate->add_option("-i,--input", input, "Scene JSON")->required()->check(CLI::ExistingFile);
    simulate->add_option("-o,--output", output, "Output directory")->required();
    simulate->add_option("--seed", seed, "Override the scene seed");

    auto* decompose = app.add_subcommand("decompose", "Four-component decomposition of a T3 raster");
    decompose->add_option("-i,--input", input, "T3 raster directory")->required();
    decompose->add_option("-o,--output", output, "Power raster directory")->required();
    decompose->add_option("--method", decompose_method, "y4o, y4r or sdy4o")->default_val("sdy4o");
    decompose->add_option("--l-cap", l_cap, "Upper bound on the look count in the delta maximisation")
        ->capture_default_str();
    search.add_to(*decompose);

    auto* oa = app.add_subcommand("oa", "Orientation angle raster in degrees");
    oa->add_option("-i,--input", input, "T3 raster directory")->required();
    oa->add_option("-o,--output", output, "Angle raster directory")->required();
    oa->add_option("--method", oa_method, "lee or sd")->default_val("sd");
    oa->add_option("--curves", curves, "Also write curves.csv for pixel r,c");
    search.add_to(*oa);

    auto* rgb = app.add_subcommand("rgb", "False-colour composite of a power raster");
    rgb->add_option("-i,--input", input, "Power raster directory")->required();
    rgb->add_option("-o,--output", output, "PNG file")->required();

    auto* stats = app.add_subcommand("stats", "Per-ROI mean powers and fractions");
    stats->add_option("-i,--input", input, "Power raster directory")->required();
    stats->add_option("--roi", rois, "r0,c0,r1,c1 half-open rectangle (repeatable; default whole raster)");
    stats->add_option("--csv", csv_path, "Write CSV here instead of stdout");
    stats->add_option("--json", json_path, "Write JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*simulate) {
            return run_simulate(input, output, seed);
        }
        if (*decompose) {
            return run_decompose(input, output, decompose_method, search, l_cap);
        }
        if (*oa) {
            return run_oa(input, output, oa_method, search, curves);
        }
        if (*rgb) {
            return run_rgb(input, output);
        }
        return run_stats(input, rois, csv_path, json_path);
    } catch (const Error& e) {
        std::fprintf(stderr, "polsar-sd: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "polsar-sd: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "polsar-sd: %s\n", e.what());
        return kExitNumeric;
    }
}
