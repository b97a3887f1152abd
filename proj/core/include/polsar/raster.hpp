#pragma once

// Band-file rasters. Each raster is a directory of headerless, row-major,
// little-endian float32 planes plus a metadata.json sidecar. NaN marks an
// invalid pixel.
//
//   T3 raster:    T11.bin T22.bin T33.bin T12_real.bin T12_imag.bin
//                 T13_real.bin T13_imag.bin T23_real.bin T23_imag.bin
//                 metadata.json {"rows", "cols", "looks", "description"}
//   power raster: Ps.bin Pd.bin Pv.bin Pc.bin [theta0_deg.bin delta_h_max.bin]
//                 metadata.json {"rows", "cols", "method", "planes"}
//   angle raster: theta_deg.bin, metadata.json {"rows", "cols", "method"}
//   ground truth: theta_true_deg.bin (float32), class_label.bin (int32),
//                 truth.json {"rows", "cols", "classes"}

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polsar/coherency.hpp"
#include "polsar/grid.hpp"
#include "polsar/powers.hpp"
#include "polsar/scene.hpp"

namespace polsar {

enum class T3Band { T11, T22, T33, T12Re, T12Im, T13Re, T13Im, T23Re, T23Im };

inline constexpr std::array<std::string_view, 9> kT3BandFiles = {
    "T11.bin",      "T22.bin",      "T33.bin",      "T12_real.bin", "T12_imag.bin",
    "T13_real.bin", "T13_imag.bin", "T23_real.bin", "T23_imag.bin"};

struct T3Raster {
    int rows = 0;
    int cols = 0;
    std::optional<double> looks;  ///< nullopt for noise-free / unknown
    std::string description;
    std::array<std::vector<float>, 9> bands;

    T3Raster() = default;
    T3Raster(int r, int c);

    std::size_t pixels() const noexcept {
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }
    std::vector<float>& band(T3Band b) { return bands[static_cast<std::size_t>(b)]; }
    const std::vector<float>& band(T3Band b) const { return bands[static_cast<std::size_t>(b)]; }

    /// False when any band holds NaN or infinity at this pixel.
    bool valid(std::size_t i) const;
    CoherencyMatrix matrix(std::size_t i) const;
    void set_matrix(std::size_t i, const CoherencyMatrix& m);
};

/// Converts (rounding to float32).
T3Raster to_t3(const Grid<CoherencyMatrix>& grid);

void write_t3(const std::filesystem::path& dir, const T3Raster& raster);
/// Throws MissingBand, SizeMismatch (naming the band) or BadMetadata.
T3Raster read_t3(const std::filesystem::path& dir);

struct PowerRaster {
    int rows = 0;
    int cols = 0;
    std::string method;
    std::vector<float> ps;
    std::vector<float> pd;
    std::vector<float> pv;
    std::vector<float> pc;
    std::optional<std::vector<float>> theta0_deg;
    std::optional<std::vector<float>> delta_h_max;

    PowerRaster() = default;
    PowerRaster(int r, int c, std::string method_name);

    std::size_t pixels() const noexcept {
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }
    /// False when any of the four power planes holds a non-finite value.
    bool valid(std::size_t i) const;
    PowerComponents at(std::size_t i) const;
    void set(std::size_t i, const PowerComponents& p);
    void set_invalid(std::size_t i);
};

void write_power(const std::filesystem::path& dir, const PowerRaster& raster);
PowerRaster read_power(const std::filesystem::path& dir);

struct AngleRaster {
    int rows = 0;
    int cols = 0;
    std::string method;
    std::vector<float> theta_deg;
};

void write_angles(const std::filesystem::path& dir, const AngleRaster& raster);
AngleRaster read_angles(const std::filesystem::path& dir);

void write_ground_truth(const std::filesystem::path& dir, const GroundTruth& truth);
GroundTruth read_ground_truth(const std::filesystem::path& dir);

/// Raw plane I/O (little-endian on disk regardless of host order).
void write_plane(const std::filesystem::path& file, const std::vector<float>& plane);
std::vector<float> read_plane(const std::filesystem::path& file, std::size_t expected);

}  // namespace polsar
