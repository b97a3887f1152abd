#pragma once

// False-colour composites of power rasters: R = Pd, G = Pv, B = Ps.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "polsar/raster.hpp"

namespace polsar {

struct RgbaImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgba;  ///< row-major, 4 bytes per pixel

    const std::uint8_t* pixel(int row, int col) const {
        return rgba.data() + 4 * (static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                                  static_cast<std::size_t>(col));
    }
};

/// Per channel: negatives clamp to 0, then the 1st and 99th percentiles
/// (nearest rank over valid pixels) bound a linear stretch, followed by a
/// square root. A degenerate range maps positive values to 255 and zero to 0.
/// Pixels with any non-finite power are fully transparent.
RgbaImage render_composite(const PowerRaster& raster);

void write_png(const std::filesystem::path& file, const RgbaImage& image);
RgbaImage read_png(const std::filesystem::path& file);

}  // namespace polsar
