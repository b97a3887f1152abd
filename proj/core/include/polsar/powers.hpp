#pragma once

// Yamaguchi four-component scattering power decomposition without (Y4O) and
// with (Y4R) orientation compensation, and the stochastic-distance power
// modification (SD-Y4O) driven by the maximum relative Hellinger distance.

#include <cstddef>
#include <span>

#include "polsar/coherency.hpp"
#include "polsar/orientation.hpp"

namespace polsar {

/// Surface, double-bounce, volume and helix powers. Ps and Pd are never
/// clipped and may be negative.
struct PowerComponents {
    double ps = 0.0;
    double pd = 0.0;
    double pv = 0.0;
    double pc = 0.0;
    double total = 0.0;

    double sum() const noexcept { return ps + pd + pv + pc; }
    bool has_negative() const noexcept { return ps < 0.0 || pd < 0.0; }
};

enum class VolumeModel {
    Balanced,          ///< diag(1/2, 1/4, 1/4)
    AsymmetricHH,      ///< (1/30)[15 5 0; 5 7 0; 0 0 8], HH dominant
    AsymmetricVV,      ///< (1/30)[15 -5 0; -5 7 0; 0 0 8], VV dominant
};

/// Branch selection on 10 log10(<|S_HH|^2> / <|S_VV|^2>): |ratio| <= 2 dB is
/// balanced; the boundary itself belongs to the balanced branch.
VolumeModel volume_model_for_ratio(double ratio_db);

/// Volume power implied by a model for a helix-corrected T33 budget.
double volume_power(VolumeModel model, double t33, double pc);

/// Y4O. Throws DegenerateInput when trace(T) <= 0.
PowerComponents y4o_decompose(const CoherencyMatrix& t);

/// Y4O applied to rotate_coherency(T, lee_oa(T)).
PowerComponents y4r_decompose(const CoherencyMatrix& t);

struct DeltaHMax {
    double value = 0.0;  ///< delta_H^m in [0, 1]
    double looks = 1.0;  ///< L_m
};

inline constexpr double kDefaultLookCap = 1e4;

/// Maximizes r2^L - r3^L over L in (0, l_cap] given the log Bhattacharyya
/// coefficients of the T22 (r2) and T33 (r3) channels. The stationary point is
///   L* = ln(ln r3 / ln r2) / ln(r2 / r3)   for 0 < r3 < r2 < 1.
/// When r3 >= r2 the supremum is 0, reported with L_m = 1.
DeltaHMax delta_h_max_from_coefficients(double r2, double r3, double l_cap = kDefaultLookCap);

/// Evaluates the coefficients for T at the unwrapped angle phi and maximizes.
DeltaHMax delta_h_max(const CoherencyMatrix& t, double phi, double l_cap = kDefaultLookCap);

struct AlphaBeta {
    double alpha = 0.5;
    double beta = 0.5;
};

/// alpha = 0.5 + 0.5 |phi| / (pi/4), beta = 1 - alpha. OutOfRange for
/// |phi| > pi/4.
AlphaBeta alpha_beta_map(double phi);

struct ModulationParams {
    double alpha = 0.5;
    double beta = 0.5;
    double delta_h_max = 0.0;
    double looks_at_max = 1.0;

    /// Throws InvalidParams on alpha + beta != 1, alpha outside [0.5, 1] or
    /// delta_h_max outside [0, 1].
    void validate() const;
};

ModulationParams make_modulation(AlphaBeta ab, DeltaHMax dm);

/// Pv' = Pv (1 - d), Pd' = Pd + alpha Pv d, Ps' = Ps + beta Pv d, Pc' = Pc.
PowerComponents sdy4o_modify(const PowerComponents& p, const ModulationParams& m);

struct SdY4oResult {
    PowerComponents powers;
    OaEstimate oa;
    ModulationParams params;
};

/// sd_oa -> delta_h_max -> alpha_beta_map -> Y4O on the un-rotated T ->
/// sdy4o_modify.
SdY4oResult sdy4o_decompose(const CoherencyMatrix& t, const OaSearch& search,
                            double l_cap = kDefaultLookCap);
SdY4oResult sdy4o_decompose(const CoherencyMatrix& t, const SearchConfig& cfg = {},
                            double l_cap = kDefaultLookCap);

struct NegativePowerStats {
    std::size_t pixels = 0;
    std::size_t negative = 0;  ///< pixels with Ps < 0 or Pd < 0
    std::size_t negative_ps = 0;
    std::size_t negative_pd = 0;

    double percent() const noexcept {
        return pixels == 0 ? 0.0 : 100.0 * static_cast<double>(negative) / static_cast<double>(pixels);
    }
};

/// Throws EmptyRaster on an empty input.
NegativePowerStats negative_power_stats(std::span<const PowerComponents> powers);

}  // namespace polsar
