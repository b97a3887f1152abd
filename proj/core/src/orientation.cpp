#include "polsar/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace polsar {
namespace {

constexpr double kFlatThreshold = 1e-12;
constexpr double kWrapSlack = 1e-12;

}  // namespace

void SearchConfig::validate() const {
    if (!(grid_step > 0.0) || grid_step > std::numbers::pi / 180.0 + 1e-15) {
        throw Error(ErrorCode::InvalidParams, "grid step must lie in (0, 1 degree]");
    }
}

RotationAngle lee_oa(const CoherencyMatrix& t) {
    const double num = 2.0 * t.t23.real();
    const double den = t.t22 - t.t33;
    if (num == 0.0 && den == 0.0) {
        return {0.0};
    }
    double theta = 0.25 * std::atan2(num, den);
    // atan2(-0, negative) = -pi; keep the half-open range (-pi/4, pi/4].
    if (theta <= -kQuarterPi) {
        theta = kQuarterPi;
    }
    return {theta};
}

RotationAngle wrap_oa(double phi) {
    if (!(std::abs(phi) <= kQuarterPi + kWrapSlack)) {
        throw Error(ErrorCode::OutOfRange, "orientation angle outside [-pi/4, pi/4]");
    }
    if (phi < -kEighthPi) {
        return {phi + kQuarterPi};
    }
    if (phi > kEighthPi) {
        return {phi - kQuarterPi};
    }
    return {phi};
}

std::vector<int> circular_peaks(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    std::vector<int> peaks;
    if (n < 2) {
        return peaks;
    }
    const auto at = [&](int i) { return values[static_cast<std::size_t>(((i % n) + n) % n)]; };

    // Start at the beginning of a run of the global minimum so no plateau
    // straddles the scan origin.
    const double lowest = *std::min_element(values.begin(), values.end());
    int start = -1;
    for (int i = 0; i < n; ++i) {
        if (values[static_cast<std::size_t>(i)] == lowest && at(i - 1) != lowest) {
            start = i;
            break;
        }
    }
    if (start < 0) {
        return peaks;  // constant
    }

    int offset = 0;
    while (offset < n) {
        const int first = start + offset;
        const double v = at(first);
        int len = 1;
        while (offset + len < n && at(first + len) == v) {
            ++len;
        }
        if (at(first - 1) < v && at(first + len) < v) {
            peaks.push_back((first + (len - 1) / 2) % n);
        }
        offset += len;
    }
    std::sort(peaks.begin(), peaks.end());
    return peaks;
}

OaSearch::OaSearch(SearchConfig cfg) : cfg_(cfg) {
    cfg_.validate();
    intervals_ = static_cast<int>(std::lround((std::numbers::pi / 2.0) / cfg_.grid_step));
    step_ = (std::numbers::pi / 2.0) / intervals_;
    trig_.reserve(static_cast<std::size_t>(intervals_) + 1);
    for (int i = 0; i <= intervals_; ++i) {
        const double theta = grid_angle(i);
        const double c = std::cos(2.0 * theta);
        const double s = std::sin(2.0 * theta);
        trig_.push_back({c * c, s * s, c * s});
    }
}

double OaSearch::distance(double a, double b) const {
    return gamma_distance(cfg_.distance_family, a, b, cfg_.l_eval).value;
}

void OaSearch::fill_curves(const CoherencyMatrix& t, std::vector<double>& d3, std::vector<double>& d2,
                           int count) const {
    if (!(t.t22 > 0.0) || !(t.t33 > 0.0) || !std::isfinite(t.t22) || !std::isfinite(t.t33)) {
        throw Error(ErrorCode::InvalidVariance, "sd_oa needs T22 > 0 and T33 > 0");
    }
    constexpr double tiny = std::numeric_limits<double>::min();
    const double re23 = t.t23.real();
    d3.resize(static_cast<std::size_t>(count));
    d2.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const Trig& g = trig_[static_cast<std::size_t>(i)];
        const double t22 = std::max(g.cc * t.t22 + 2.0 * g.cs * re23 + g.ss * t.t33, tiny);
        const double t33 = std::max(g.ss * t.t22 - 2.0 * g.cs * re23 + g.cc * t.t33, tiny);
        d3[static_cast<std::size_t>(i)] = distance(t.t33, t33);
        d2[static_cast<std::size_t>(i)] = distance(t.t22, t22);
    }
}

OaEstimate OaSearch::estimate(const CoherencyMatrix& t) const {
    std::vector<double> d3;
    std::vector<double> d2;
    // The last grid point duplicates the first, so the search runs on the
    // circular sequence of N points.
    fill_curves(t, d3, d2, intervals_);

    const DistanceFamily family = cfg_.distance_family;
    OaEstimate out;
    out.d3_at_phi = {0.0, family, cfg_.l_eval};
    out.d2_at_phi = {0.0, family, cfg_.l_eval};

    const double top = *std::max_element(d3.begin(), d3.end());
    std::vector<int> peaks = top < kFlatThreshold ? std::vector<int>{} : circular_peaks(d3);
    if (peaks.empty()) {
        return out;
    }

    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
        const double da = d3[static_cast<std::size_t>(a)];
        const double db = d3[static_cast<std::size_t>(b)];
        return da != db ? da > db : a < b;
    });
    if (peaks.size() > 2) {
        peaks.resize(2);
    }

    const auto phi_of = [&](int idx) { return grid_angle(idx); };
    int chosen = -1;
    for (int idx : peaks) {
        out.candidates.push_back(phi_of(idx));
        const auto k = static_cast<std::size_t>(idx);
        if (d3[k] < d2[k]) {
            continue;
        }
        if (chosen < 0) {
            chosen = idx;
            continue;
        }
        const double cur = std::abs(wrap_oa(phi_of(chosen)).radians);
        const double cand = std::abs(wrap_oa(phi_of(idx)).radians);
        if (cand < cur) {
            chosen = idx;
        }
    }
    if (chosen < 0) {
        // Only the T33 maximum was resolved; rotating onto it would swap T22
        // and T33. The true minimum sits within a step of zero.
        out.chosen_channel = OaChannel::T22;
        out.flagged = true;
        return out;
    }

    const auto k = static_cast<std::size_t>(chosen);
    out.phi = phi_of(chosen);
    out.theta0 = wrap_oa(out.phi).radians;
    out.d3_at_phi.value = d3[k];
    out.d2_at_phi.value = d2[k];
    out.delta_h = d3[k] - d2[k];
    return out;
}

std::vector<CurvePoint> OaSearch::curves(const CoherencyMatrix& t) const {
    std::vector<double> d3;
    std::vector<double> d2;
    fill_curves(t, d3, d2, intervals_ + 1);
    std::vector<CurvePoint> out;
    out.reserve(d3.size());
    for (int i = 0; i <= intervals_; ++i) {
        const double theta = grid_angle(i);
        out.push_back({theta, d3[static_cast<std::size_t>(i)], d2[static_cast<std::size_t>(i)]});
    }
    return out;
}

OaEstimate sd_oa(const CoherencyMatrix& t, const SearchConfig& cfg) {
    return OaSearch(cfg).estimate(t);
}

std::vector<CurvePoint> oa_curves(const CoherencyMatrix& t, const SearchConfig& cfg) {
    return OaSearch(cfg).curves(t);
}

void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& curves) {
    os << "theta_deg,d3,d2\n";
    const auto old_flags = os.flags();
    const auto old_precision = os.precision();
    for (const auto& p : curves) {
        os << std::fixed << std::setprecision(4) << rad_to_deg(p.theta) << ',';
        os << std::defaultfloat << std::setprecision(12) << p.d3 << ',' << p.d2 << '\n';
    }
    os.flags(old_flags);
    os.precision(old_precision);
}

}  // namespace polsar
