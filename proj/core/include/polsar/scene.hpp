#pragma once

// Synthetic PolSAR scenes with known orientation fields. Each region's
// covariance is rotated by -theta_true so that a correct estimator reports
// theta_true, then speckled with an L-look complex Wishart draw.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polsar/coherency.hpp"
#include "polsar/grid.hpp"

namespace polsar {

struct Archetype {
    std::string name;
    CoherencyMatrix matrix;
    std::string description;
};

/// The urban-area example coherency matrix (trace 14.12), whose own
/// orientation angle is about 14 degrees.
CoherencyMatrix urban_example_matrix();

/// Catalog: "urban", "urban_aligned" (urban deoriented to zero OA),
/// "surface", "volume", "dihedral".
const std::vector<Archetype>& builtin_archetypes();

/// Throws BadSceneSpec for unknown names.
CoherencyMatrix archetype(std::string_view name);

struct SceneRegion {
    std::string name;
    int r0 = 0;  ///< first row (inclusive)
    int c0 = 0;  ///< first col (inclusive)
    int r1 = 0;  ///< last row (exclusive)
    int c1 = 0;  ///< last col (exclusive)
    CoherencyMatrix sigma;
    double theta_true_deg = 0.0;
};

struct SceneSpec {
    int rows = 0;
    int cols = 0;
    CoherencyMatrix background = CoherencyMatrix::diagonal(0.5, 0.25, 0.25);
    /// Later regions win where rectangles overlap.
    std::vector<SceneRegion> regions;
    /// Number of looks; nullopt is the noise-free mode that emits the rotated
    /// covariance itself.
    std::optional<int> looks = 9;
    std::uint64_t seed = 0;

    /// Throws BadSceneSpec.
    void validate() const;
};

struct GroundTruth {
    Grid<float> theta_true_deg;
    Grid<std::int32_t> class_label;      ///< 0 = background, i + 1 = regions[i]
    std::vector<std::string> class_names;
};

struct Scene {
    Grid<CoherencyMatrix> pixels;
    GroundTruth truth;
};

/// Counter-based per-pixel seed: splitmix64(seed ^ splitmix64(row << 32 | col)).
/// Makes every pixel's draw independent of the generation order.
std::uint64_t pixel_seed(std::uint64_t seed, int row, int col);

Scene generate_scene(const SceneSpec& spec, int workers = 1);

/// Parses the JSON scene document (see docs/scene_format.md).
SceneSpec scene_from_json(std::string_view text);
SceneSpec read_scene_spec(const std::filesystem::path& path);

}  // namespace polsar
