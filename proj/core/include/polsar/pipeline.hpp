#pragma once

// Raster drivers: per-pixel decomposition and OA estimation over row-parallel
// workers, plus region-of-interest statistics.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polsar/orientation.hpp"
#include "polsar/powers.hpp"
#include "polsar/raster.hpp"

namespace polsar {

enum class DecompositionMethod { Y4O, Y4R, SdY4O };

/// "y4o", "y4r" or "sdy4o" (case-insensitive). Throws InvalidParams.
DecompositionMethod parse_decomposition_method(std::string_view name);
std::string_view to_string(DecompositionMethod m);

struct DecomposeOptions {
    DecompositionMethod method = DecompositionMethod::SdY4O;
    SearchConfig search{};
    double l_cap = kDefaultLookCap;
    int workers = 1;
};

struct DecomposeSummary {
    std::size_t pixels = 0;
    std::size_t invalid_input = 0;  ///< non-finite input pixels
    std::size_t failed = 0;         ///< pixels whose decomposition threw
    std::size_t flagged = 0;        ///< sd_oa found no T33-decreasing peak and returned 0
    NegativePowerStats negatives;   ///< over pixels with a finite result
};

struct DecomposeResult {
    PowerRaster raster;
    DecomposeSummary summary;
};

/// Invalid or failing pixels become NaN in every output plane. SD-Y4O also
/// fills the theta0 (degrees) and delta_h_max planes.
DecomposeResult decompose_raster(const T3Raster& input, const DecomposeOptions& opts);

enum class OaMethod { Lee, Sd };

/// "lee" or "sd". Throws InvalidParams.
OaMethod parse_oa_method(std::string_view name);
std::string_view to_string(OaMethod m);

struct OaOptions {
    OaMethod method = OaMethod::Sd;
    SearchConfig search{};
    int workers = 1;
};

struct OaSummary {
    std::size_t pixels = 0;
    std::size_t invalid_input = 0;
    std::size_t failed = 0;
    std::size_t flagged = 0;
};

struct OaRasterResult {
    AngleRaster raster;
    OaSummary summary;
};

/// Wrapped orientation in degrees, within [-22.5, 22.5].
OaRasterResult oa_raster(const T3Raster& input, const OaOptions& opts);

/// Counts over the pixels with all four powers finite. Throws EmptyRaster
/// when there are none.
NegativePowerStats negative_power_stats(const PowerRaster& raster);

/// Half-open rectangle [r0, r1) x [c0, c1).
struct Roi {
    int r0 = 0;
    int c0 = 0;
    int r1 = 0;
    int c1 = 0;

    /// Parses "r0,c0,r1,c1". Throws BadRoi.
    static Roi parse(std::string_view text);
    std::string to_string() const;
};

struct RoiStats {
    Roi roi;
    std::string method;
    std::size_t pixels = 0;  ///< valid pixels averaged
    double mean_ps = 0.0;
    double mean_pd = 0.0;
    double mean_pv = 0.0;
    double mean_pc = 0.0;
    double mean_total = 0.0;
    double frac_ps = 0.0;
    double frac_pd = 0.0;
    double frac_pv = 0.0;
    double frac_pc = 0.0;
    double negative_pct = 0.0;
};

/// Throws BadRoi for empty or out-of-bounds rectangles and EmptyRaster when
/// the rectangle holds no valid pixel.
RoiStats roi_stats(const PowerRaster& raster, const Roi& roi);

void write_stats_csv(std::ostream& os, const std::vector<RoiStats>& rows);
void write_stats_json(std::ostream& os, const std::vector<RoiStats>& rows);

}  // namespace polsar
