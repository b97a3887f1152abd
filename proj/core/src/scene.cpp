#include "polsar/scene.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polsar/orientation.hpp"
#include "polsar/parallel.hpp"
#include "polsar/wishart.hpp"

namespace polsar {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

[[noreturn]] void bad_scene(const std::string& what) {
    throw Error(ErrorCode::BadSceneSpec, what);
}

cdouble complex_field(const json& j, const char* key) {
    if (!j.contains(key)) {
        return {};
    }
    const json& v = j.at(key);
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    bad_scene(std::string("matrix entry '") + key + "' must be a number or [re, im]");
}

CoherencyMatrix matrix_from_json(const json& j) {
    if (j.is_string()) {
        return archetype(j.get<std::string>());
    }
    if (!j.is_object()) {
        bad_scene("matrix must be an archetype name or an object");
    }
    CoherencyMatrix m;
    m.t11 = j.value("t11", 0.0);
    m.t22 = j.value("t22", 0.0);
    m.t33 = j.value("t33", 0.0);
    m.t12 = complex_field(j, "t12");
    m.t13 = complex_field(j, "t13");
    m.t23 = complex_field(j, "t23");
    return m;
}

std::vector<Archetype> make_catalog() {
    const CoherencyMatrix urban = urban_example_matrix();
    return {
        {"urban", urban, "oriented urban block (example matrix, OA about 14 deg)"},
        {"urban_aligned", rotate_coherency(urban, lee_oa(urban)),
         "urban example compensated to zero orientation"},
        {"surface", CoherencyMatrix::diagonal(1.0, 0.05, 0.02), "surface dominant"},
        {"volume", CoherencyMatrix::diagonal(0.5, 0.25, 0.25), "balanced random-dipole volume"},
        {"dihedral", CoherencyMatrix::diagonal(0.1, 1.0, 0.05), "double-bounce dominant"},
    };
}

}  // namespace

CoherencyMatrix urban_example_matrix() {
    return {4.56, 6.06, 3.50, {2.28, 0.72}, {0.02, 0.67}, {1.90, 0.27}};
}

const std::vector<Archetype>& builtin_archetypes() {
    static const std::vector<Archetype> catalog = make_catalog();
    return catalog;
}

CoherencyMatrix archetype(std::string_view name) {
    for (const auto& a : builtin_archetypes()) {
        if (a.name == name) {
            return a.matrix;
        }
    }
    bad_scene("unknown archetype '" + std::string(name) + "'");
}

void SceneSpec::validate() const {
    if (rows <= 0 || cols <= 0) {
        bad_scene("rows and cols must be positive");
    }
    if (looks && *looks < 1) {
        bad_scene("looks must be >= 1");
    }
    if (!background.is_pd()) {
        bad_scene("background covariance is not positive definite");
    }
    for (const auto& r : regions) {
        if (r.r0 < 0 || r.c0 < 0 || r.r1 > rows || r.c1 > cols || r.r0 >= r.r1 || r.c0 >= r.c1) {
            bad_scene("region '" + r.name + "' has an empty or out-of-bounds rectangle");
        }
        if (!r.sigma.is_pd()) {
            bad_scene("region '" + r.name + "' covariance is not positive definite");
        }
        if (!std::isfinite(r.theta_true_deg)) {
            bad_scene("region '" + r.name + "' orientation is not finite");
        }
    }
}

std::uint64_t pixel_seed(std::uint64_t seed, int row, int col) {
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(row)) << 32) |
                              static_cast<std::uint32_t>(col);
    return splitmix64(seed ^ splitmix64(key));
}

Scene generate_scene(const SceneSpec& spec, int workers) {
    spec.validate();

    std::vector<CoherencyMatrix> oriented;
    oriented.reserve(spec.regions.size());
    for (const auto& r : spec.regions) {
        oriented.push_back(rotate_coherency(r.sigma, RotationAngle::from_degrees(-r.theta_true_deg)));
    }

    Scene scene;
    scene.pixels = Grid<CoherencyMatrix>(spec.rows, spec.cols);
    scene.truth.theta_true_deg = Grid<float>(spec.rows, spec.cols, 0.0F);
    scene.truth.class_label = Grid<std::int32_t>(spec.rows, spec.cols, 0);
    scene.truth.class_names.emplace_back("background");
    for (std::size_t i = 0; i < spec.regions.size(); ++i) {
        const auto& name = spec.regions[i].name;
        scene.truth.class_names.push_back(name.empty() ? "region" + std::to_string(i) : name);
    }

    for (std::size_t i = 0; i < spec.regions.size(); ++i) {
        const auto& r = spec.regions[i];
        for (int row = r.r0; row < r.r1; ++row) {
            for (int col = r.c0; col < r.c1; ++col) {
                scene.truth.class_label.at(row, col) = static_cast<std::int32_t>(i + 1);
                scene.truth.theta_true_deg.at(row, col) = static_cast<float>(r.theta_true_deg);
            }
        }
    }

    parallel_for_rows(spec.rows, workers, [&](int row) {
        for (int col = 0; col < spec.cols; ++col) {
            const std::int32_t label = scene.truth.class_label.at(row, col);
            const CoherencyMatrix& sigma =
                label == 0 ? spec.background : oriented[static_cast<std::size_t>(label - 1)];
            scene.pixels.at(row, col) =
                spec.looks ? wishart_sample(sigma, *spec.looks, pixel_seed(spec.seed, row, col)) : sigma;
        }
    });
    return scene;
}

SceneSpec scene_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad_scene(std::string("invalid JSON: ") + e.what());
    }
    try {
        SceneSpec spec;
        spec.rows = j.at("rows").get<int>();
        spec.cols = j.at("cols").get<int>();
        spec.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("looks")) {
            const json& l = j.at("looks");
            if (l.is_string() && (l.get<std::string>() == "inf" || l.get<std::string>() == "infinity")) {
                spec.looks.reset();
            } else if (l.is_number_integer()) {
                spec.looks = l.get<int>();
            } else {
                bad_scene("looks must be a positive integer or \"inf\"");
            }
        }
        if (j.contains("background")) {
            spec.background = matrix_from_json(j.at("background"));
        }
        if (j.contains("regions")) {
            for (const json& r : j.at("regions")) {
                SceneRegion region;
                region.name = r.value("name", std::string{});
                const json& rect = r.at("rect");
                if (!rect.is_array() || rect.size() != 4) {
                    bad_scene("rect must be [r0, c0, r1, c1]");
                }
                region.r0 = rect[0].get<int>();
                region.c0 = rect[1].get<int>();
                region.r1 = rect[2].get<int>();
                region.c1 = rect[3].get<int>();
                if (r.contains("archetype")) {
                    region.sigma = archetype(r.at("archetype").get<std::string>());
                } else if (r.contains("matrix")) {
                    region.sigma = matrix_from_json(r.at("matrix"));
                } else {
                    bad_scene("region needs an 'archetype' or a 'matrix'");
                }
                region.theta_true_deg = r.value("theta_true_deg", 0.0);
                spec.regions.push_back(std::move(region));
            }
        }
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        bad_scene(std::string("malformed scene document: ") + e.what());
    }
}

SceneSpec read_scene_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open scene file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return scene_from_json(buf.str());
}

}  // namespace polsar
