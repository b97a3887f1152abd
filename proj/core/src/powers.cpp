#include "polsar/powers.hpp"

#include <algorithm>
#include <cmath>

#include "polsar/divergence.hpp"

namespace polsar {
namespace {

constexpr double kEps = 1e-12;
constexpr double kRatioBoundaryDb = 2.0;

struct VolumeCoefficients {
    double v11;
    double v22;
    double v12;
    double v33;
};

VolumeCoefficients coefficients(VolumeModel model) {
    switch (model) {
    case VolumeModel::Balanced: return {0.5, 0.25, 0.0, 0.25};
    case VolumeModel::AsymmetricHH: return {15.0 / 30.0, 7.0 / 30.0, 5.0 / 30.0, 8.0 / 30.0};
    case VolumeModel::AsymmetricVV: return {15.0 / 30.0, 7.0 / 30.0, -5.0 / 30.0, 8.0 / 30.0};
    }
    return {0.5, 0.25, 0.0, 0.25};
}

// Smallest T33 reachable by a real rotation of the (2,3) block. Roll
// invariant.
double min_rotated_t33(const CoherencyMatrix& t) {
    const double mean = 0.5 * (t.t22 + t.t33);
    const double half_diff = 0.5 * (t.t33 - t.t22);
    return mean - std::hypot(half_diff, t.t23.real());
}

DeltaHMax maximize_from_logs(double log_r2, double log_r3, double l_cap) {
    if (!std::isfinite(log_r2) || !std::isfinite(log_r3) || log_r2 > 0.0 || log_r3 > 0.0) {
        throw Error(ErrorCode::InternalInvariantViolation, "Bhattacharyya coefficient outside (0, 1]");
    }
    if (!(l_cap > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "look cap must be > 0");
    }
    if (log_r3 >= log_r2) {
        return {0.0, 1.0};
    }
    double looks = l_cap;
    if (log_r2 < 0.0) {
        looks = std::min(std::log(log_r3 / log_r2) / (log_r2 - log_r3), l_cap);
    }
    const double value = std::expm1(looks * log_r2) - std::expm1(looks * log_r3);
    return {std::clamp(value, 0.0, 1.0), looks};
}

}  // namespace

VolumeModel volume_model_for_ratio(double ratio_db) {
    if (ratio_db > kRatioBoundaryDb) {
        return VolumeModel::AsymmetricHH;
    }
    if (ratio_db < -kRatioBoundaryDb) {
        return VolumeModel::AsymmetricVV;
    }
    return VolumeModel::Balanced;
}

double volume_power(VolumeModel model, double t33, double pc) {
    return (t33 - 0.5 * pc) / coefficients(model).v33;
}

PowerComponents y4o_decompose(const CoherencyMatrix& t) {
    const double total = t.trace();
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw Error(ErrorCode::DegenerateInput, "Y4O needs trace(T) > 0");
    }

    // Helix; clamped against the rotation-reachable T33 floor so the volume
    // budget stays nonnegative both before and after deorientation.
    const double pc = std::clamp(2.0 * std::abs(t.t23.imag()), 0.0, 2.0 * std::max(min_rotated_t33(t), 0.0));

    const double floor = kEps * total;
    const double c11 = std::max(0.5 * (t.t11 + t.t22 + 2.0 * t.t12.real()), floor);
    const double c33 = std::max(0.5 * (t.t11 + t.t22 - 2.0 * t.t12.real()), floor);
    const VolumeModel model = volume_model_for_ratio(10.0 * std::log10(c11 / c33));
    const VolumeCoefficients v = coefficients(model);
    const double pv = volume_power(model, t.t33, pc);

    const double s = t.t11 - pv * v.v11;
    const double d = t.t22 - pv * v.v22 - 0.5 * pc;
    const double c2 = std::norm(t.t12 - pv * v.v12);

    PowerComponents out;
    out.pv = pv;
    out.pc = pc;
    out.total = total;
    if (2.0 * t.t11 + pc - total > 0.0) {
        if (s < floor) {
            out.ps = s + d;
            out.pd = 0.0;
        } else {
            out.ps = s + c2 / s;
            out.pd = d - c2 / s;
        }
    } else {
        if (d < floor) {
            out.pd = s + d;
            out.ps = 0.0;
        } else {
            out.pd = d + c2 / d;
            out.ps = s - c2 / d;
        }
    }
    return out;
}

PowerComponents y4r_decompose(const CoherencyMatrix& t) {
    return y4o_decompose(rotate_coherency(t, lee_oa(t)));
}

DeltaHMax delta_h_max_from_coefficients(double r2, double r3, double l_cap) {
    if (!(r2 > 0.0 && r2 <= 1.0) || !(r3 > 0.0 && r3 <= 1.0)) {
        throw Error(ErrorCode::InternalInvariantViolation, "Bhattacharyya coefficient outside (0, 1]");
    }
    return maximize_from_logs(std::log(r2), std::log(r3), l_cap);
}

DeltaHMax delta_h_max(const CoherencyMatrix& t, double phi, double l_cap) {
    if (!(t.t22 > 0.0) || !(t.t33 > 0.0)) {
        throw Error(ErrorCode::InvalidVariance, "delta_h_max needs T22 > 0 and T33 > 0");
    }
    const CoherencyMatrix rotated = rotate_coherency(t, {phi});
    if (!(rotated.t22 > 0.0) || !(rotated.t33 > 0.0)) {
        throw Error(ErrorCode::InternalInvariantViolation, "rotated channel power is not positive");
    }
    return maximize_from_logs(log_bhattacharyya_gamma(t.t22, rotated.t22),
                              log_bhattacharyya_gamma(t.t33, rotated.t33), l_cap);
}

AlphaBeta alpha_beta_map(double phi) {
    if (!(std::abs(phi) <= kQuarterPi + 1e-12)) {
        throw Error(ErrorCode::OutOfRange, "alpha mapping needs |phi| <= pi/4");
    }
    const double alpha = 0.5 + 0.5 * std::min(std::abs(phi) / kQuarterPi, 1.0);
    return {alpha, 1.0 - alpha};
}

void ModulationParams::validate() const {
    if (std::abs(alpha + beta - 1.0) > 1e-12 || !(alpha >= 0.5 && alpha <= 1.0) ||
        !(delta_h_max >= 0.0 && delta_h_max <= 1.0)) {
        throw Error(ErrorCode::InvalidParams,
                    "modulation needs alpha in [0.5, 1], alpha + beta = 1 and delta in [0, 1]");
    }
}

ModulationParams make_modulation(AlphaBeta ab, DeltaHMax dm) {
    return {ab.alpha, ab.beta, dm.value, dm.looks};
}

PowerComponents sdy4o_modify(const PowerComponents& p, const ModulationParams& m) {
    m.validate();
    const double moved = p.pv * m.delta_h_max;
    PowerComponents out = p;
    out.pv = p.pv * (1.0 - m.delta_h_max);
    out.pd = p.pd + m.alpha * moved;
    out.ps = p.ps + m.beta * moved;
    return out;
}

SdY4oResult sdy4o_decompose(const CoherencyMatrix& t, const OaSearch& search, double l_cap) {
    SdY4oResult out;
    out.oa = search.estimate(t);
    out.params = make_modulation(alpha_beta_map(out.oa.phi), delta_h_max(t, out.oa.phi, l_cap));
    out.powers = sdy4o_modify(y4o_decompose(t), out.params);
    return out;
}

SdY4oResult sdy4o_decompose(const CoherencyMatrix& t, const SearchConfig& cfg, double l_cap) {
    return sdy4o_decompose(t, OaSearch(cfg), l_cap);
}

NegativePowerStats negative_power_stats(std::span<const PowerComponents> powers) {
    if (powers.empty()) {
        throw Error(ErrorCode::EmptyRaster, "negative_power_stats needs at least one pixel");
    }
    NegativePowerStats stats;
    for (const auto& p : powers) {
        ++stats.pixels;
        stats.negative_ps += p.ps < 0.0 ? 1 : 0;
        stats.negative_pd += p.pd < 0.0 ? 1 : 0;
        stats.negative += p.has_negative() ? 1 : 0;
    }
    return stats;
}

}  // namespace polsar
