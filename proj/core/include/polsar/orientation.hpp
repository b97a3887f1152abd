#pragma once

// Polarization orientation angle (OA) estimation.
//
// Two estimators are provided:
//  * lee_oa: closed-form minimizer of T33(theta).
//  * sd_oa:  grid search maximizing the stochastic distance between the
//            un-rotated and rotated T33 and T22 channel powers, picking the
//            peak where the T33 distance dominates, then wrapping the angle
//            into [-pi/8, pi/8].

#include <iosfwd>
#include <numbers>
#include <vector>

#include "polsar/coherency.hpp"
#include "polsar/divergence.hpp"

namespace polsar {

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
inline constexpr double kEighthPi = std::numbers::pi / 8.0;

struct SearchConfig {
    double grid_step = std::numbers::pi / 1800.0;  // 0.1 degree
    LookCount l_eval{4.0};
    DistanceFamily distance_family = DistanceFamily::Hellinger;

    /// Throws InvalidParams unless 0 < grid_step <= 1 degree.
    void validate() const;
};

enum class OaChannel { T33, T22 };

struct OaEstimate {
    double phi = 0.0;     ///< unwrapped angle in [-pi/4, pi/4]
    double theta0 = 0.0;  ///< wrap_oa(phi), in [-pi/8, pi/8]
    DistanceValue d3_at_phi{};
    DistanceValue d2_at_phi{};
    double delta_h = 0.0;  ///< d3_at_phi - d2_at_phi
    OaChannel chosen_channel = OaChannel::T33;
    /// Set when no candidate peak satisfied d3 >= d2. That only happens when
    /// the T33-minimising lobe around theta = 0 is narrower than the grid, so
    /// the estimate falls back to phi = 0 (and chosen_channel = T22).
    bool flagged = false;
    /// Unwrapped angles of the (at most two) candidate peaks, strongest first.
    std::vector<double> candidates;
};

/// Minimizer of T33(theta) = U3 T U3^-1 restricted to (-pi/4, pi/4]:
///   theta = atan2(2 Re T23, T22 - T33) / 4.
/// The minimizer is unique modulo pi/2, so this is the T33-minimizing
/// compensation angle; apply wrap_oa to report it in [-pi/8, pi/8].
/// Returns 0 when T22 == T33 and Re T23 == 0.
RotationAngle lee_oa(const CoherencyMatrix& t);

/// phi + pi/4 if phi < -pi/8; phi - pi/4 if phi > pi/8; else phi.
/// Throws OutOfRange for |phi| > pi/4.
RotationAngle wrap_oa(double phi);

struct CurvePoint {
    double theta = 0.0;  ///< radians
    double d3 = 0.0;
    double d2 = 0.0;
};

/// Precomputes the rotation grid once so a searcher can be reused across many
/// pixels. The grid is theta_i = -pi/4 + i * step, i = 0..N with
/// N = round((pi/2) / grid_step); theta_0 and theta_N describe the same
/// rotated diagonal.
class OaSearch {
public:
    explicit OaSearch(SearchConfig cfg);

    const SearchConfig& config() const noexcept { return cfg_; }
    double step() const noexcept { return step_; }
    int intervals() const noexcept { return intervals_; }
    /// (i - N/2) * step, so theta = 0 is hit exactly for even N.
    double grid_angle(int i) const noexcept { return (i - 0.5 * intervals_) * step_; }

    /// Throws InvalidVariance unless t22 > 0 and t33 > 0.
    OaEstimate estimate(const CoherencyMatrix& t) const;

    /// Full grid (N + 1 points, both endpoints included).
    std::vector<CurvePoint> curves(const CoherencyMatrix& t) const;

private:
    struct Trig {
        double cc;
        double ss;
        double cs;
    };

    double distance(double a, double b) const;
    void fill_curves(const CoherencyMatrix& t, std::vector<double>& d3, std::vector<double>& d2,
                     int count) const;

    SearchConfig cfg_;
    int intervals_;
    double step_;
    std::vector<Trig> trig_;
};

OaEstimate sd_oa(const CoherencyMatrix& t, const SearchConfig& cfg = {});

std::vector<CurvePoint> oa_curves(const CoherencyMatrix& t, const SearchConfig& cfg = {});

/// CSV with header `theta_deg,d3,d2`.
void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& curves);

/// Indices of local maxima of a circular sequence. Strict maxima count; a
/// plateau of equal values bounded by lower neighbours contributes its
/// midpoint (lower middle for even lengths). Ascending order; empty for a
/// constant sequence.
std::vector<int> circular_peaks(const std::vector<double>& values);

}  // namespace polsar
