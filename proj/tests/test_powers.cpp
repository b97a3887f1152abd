#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "polsar/powers.hpp"
#include "polsar/scene.hpp"
#include "support.hpp"

using namespace polsar;
using polsar::testing::random_psd;

namespace {

void expect_powers(const PowerComponents& p, double ps, double pd, double pv, double pc) {
    EXPECT_NEAR(p.ps, ps, 1e-12);
    EXPECT_NEAR(p.pd, pd, 1e-12);
    EXPECT_NEAR(p.pv, pv, 1e-12);
    EXPECT_NEAR(p.pc, pc, 1e-12);
}

// Matrix whose C11/C33 ratio is exactly the given dB value.
CoherencyMatrix with_ratio_db(double db) {
    const double r = std::pow(10.0, db / 10.0);
    CoherencyMatrix t = CoherencyMatrix::diagonal(1.2, 0.8, 0.3);
    t.t12 = {(r - 1.0) / (r + 1.0), 0.0};
    return t;
}

double delta_at(double log_r2, double log_r3, double l) {
    return std::exp(l * log_r2) - std::exp(l * log_r3);
}

}  // namespace

TEST(Y4o, PureSurface) {
    expect_powers(y4o_decompose(CoherencyMatrix::diagonal(1.0, 0.0, 0.0)), 1.0, 0.0, 0.0, 0.0);
}

TEST(Y4o, PureDoubleBounce) {
    expect_powers(y4o_decompose(CoherencyMatrix::diagonal(0.0, 1.0, 0.0)), 0.0, 1.0, 0.0, 0.0);
}

TEST(Y4o, PureVolume) {
    expect_powers(y4o_decompose(CoherencyMatrix::diagonal(0.5, 0.25, 0.25)), 0.0, 0.0, 1.0, 0.0);
}

TEST(Y4o, DegenerateInput) {
    try {
        y4o_decompose(CoherencyMatrix{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
    }
}

TEST(Y4o, HelixPower) {
    CoherencyMatrix t = CoherencyMatrix::diagonal(2.0, 1.0, 1.0);
    t.t23 = {0.0, 0.2};
    const auto p = y4o_decompose(t);
    EXPECT_NEAR(p.pc, 0.4, 1e-15);
    EXPECT_NEAR(p.pv, 4.0 * 1.0 - 2.0 * 0.4, 1e-12);
}

TEST(Y4o, HelixClampKeepsVolumeNonnegative) {
    std::mt19937_64 rng(201);
    for (int k = 0; k < 2000; ++k) {
        const auto t = random_psd(rng, 0.0);
        const auto p = y4o_decompose(t);
        EXPECT_GE(p.pv, -1e-12 * t.trace());
        EXPECT_GE(p.pc, 0.0);
        EXPECT_LE(p.pc, 2.0 * std::abs(t.t23.imag()) + 1e-15);
        EXPECT_LE(p.pc, 2.0 * t.t33 + 1e-12 * t.trace());
    }
}

TEST(Y4o, VolumeBranchBoundary) {
    EXPECT_EQ(volume_model_for_ratio(2.0), VolumeModel::Balanced);
    EXPECT_EQ(volume_model_for_ratio(-2.0), VolumeModel::Balanced);
    EXPECT_EQ(volume_model_for_ratio(std::nextafter(2.0, 3.0)), VolumeModel::AsymmetricHH);
    EXPECT_EQ(volume_model_for_ratio(std::nextafter(-2.0, -3.0)), VolumeModel::AsymmetricVV);
    EXPECT_EQ(volume_model_for_ratio(0.0), VolumeModel::Balanced);
}

TEST(Y4o, VolumeJumpAtBoundaryIsRecorded) {
    for (double side : {2.0, -2.0}) {
        const double eps = 1e-6;
        const auto inner = y4o_decompose(with_ratio_db(side * (1.0 - eps)));
        const auto outer = y4o_decompose(with_ratio_db(side * (1.0 + eps)));
        const double jump = inner.pv - outer.pv;
        RecordProperty(side > 0 ? "pv_jump_at_plus_2db" : "pv_jump_at_minus_2db", std::to_string(jump));
        // 0.3 * 4 versus 0.3 * 30 / 8.
        EXPECT_NEAR(jump, 1.2 - 1.125, 1e-12);
        EXPECT_NEAR(inner.sum(), outer.sum(), 1e-12);
    }
}

TEST(Y4o, AsymmetricBranchSigns) {
    const auto hh = y4o_decompose(with_ratio_db(5.0));
    const auto vv = y4o_decompose(with_ratio_db(-5.0));
    EXPECT_NEAR(hh.pv, 0.3 * 30.0 / 8.0, 1e-12);
    EXPECT_NEAR(vv.pv, 0.3 * 30.0 / 8.0, 1e-12);
    EXPECT_NEAR(hh.sum(), with_ratio_db(5.0).trace(), 1e-12);
}

TEST(Y4o, SurfaceArchetypeFraction) {
    const auto p = y4o_decompose(archetype("surface"));
    EXPECT_NEAR(p.ps / p.total, 0.96 / 1.07, 1e-12);
    EXPECT_GT(p.ps / p.total, 0.85);
}

TEST(Y4r, ReflectionSymmetricMatchesY4o) {
    CoherencyMatrix t = CoherencyMatrix::diagonal(2.0, 1.0, 0.4);
    t.t12 = {0.3, -0.2};
    t.t23 = {0.0, 0.1};
    const auto a = y4o_decompose(t);
    const auto b = y4r_decompose(t);
    expect_powers(b, a.ps, a.pd, a.pv, a.pc);
}

TEST(Y4r, UrbanExample) {
    const auto t = urban_example_matrix();
    const auto o = y4o_decompose(t);
    const auto r = y4r_decompose(t);
    EXPECT_LE(r.pv, o.pv);
    EXPECT_NEAR(r.total, t.trace(), 1e-9);
    EXPECT_NEAR(r.pc, o.pc, 1e-12);
}

TEST(Conservation, RandomMatricesAllMethods) {
    std::mt19937_64 rng(203);
    const OaSearch search(SearchConfig{});
    for (int k = 0; k < 1000; ++k) {
        const auto t = random_psd(rng);
        const double tp = t.trace();
        const auto o = y4o_decompose(t);
        const auto r = y4r_decompose(t);
        const auto s = sdy4o_decompose(t, search);
        EXPECT_NEAR(o.sum(), tp, 1e-9 * tp);
        EXPECT_NEAR(r.sum(), tp, 1e-9 * tp);
        EXPECT_NEAR(s.powers.sum(), tp, 1e-9 * tp);
        EXPECT_NEAR(r.pc, o.pc, 1e-12 * std::max(1.0, o.pc));
        EXPECT_EQ(s.powers.pc, o.pc);
        EXPECT_LE(s.powers.pv, o.pv);
        if (s.params.delta_h_max > 0.0 && o.pv > 0.0) {
            EXPECT_LT(s.powers.pv, o.pv);
        } else {
            EXPECT_EQ(s.powers.pv, o.pv);
        }
        EXPECT_GE(s.params.delta_h_max, 0.0);
        EXPECT_LE(s.params.delta_h_max, 1.0);
    }
}

TEST(DeltaHMax, EqualCoefficients) {
    const auto d = delta_h_max_from_coefficients(0.95, 0.95);
    EXPECT_EQ(d.value, 0.0);
    EXPECT_EQ(d.looks, 1.0);
    const auto z = delta_h_max(urban_example_matrix(), 0.0);
    EXPECT_EQ(z.value, 0.0);
}

TEST(DeltaHMax, ClosedFormExample) {
    const auto d = delta_h_max_from_coefficients(0.99, 0.9);
    EXPECT_NEAR(d.looks, 24.654, 0.01);
    EXPECT_NEAR(d.value, 0.706, 5e-4);
    // Dense grid over L in [0.1, 200] step 0.01.
    double best = -1.0;
    double best_l = 0.0;
    for (int i = 0; i <= 19990; ++i) {
        const double l = 0.1 + 0.01 * i;
        const double v = delta_at(std::log(0.99), std::log(0.9), l);
        if (v > best) {
            best = v;
            best_l = l;
        }
    }
    EXPECT_NEAR(d.looks, best_l, 0.02);
    EXPECT_NEAR(d.value, best, 1e-6);
}

TEST(DeltaHMax, MatchesDenseGridOnRandomPairs) {
    std::mt19937_64 rng(207);
    std::uniform_real_distribution<double> u2(0.5, 0.999);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    for (int k = 0; k < 500; ++k) {
        const double r2 = u2(rng);
        const double r3 = r2 * frac(rng);
        const auto d = delta_h_max_from_coefficients(r2, r3);
        const double lr2 = std::log(r2);
        const double lr3 = std::log(r3);
        const double hi = std::max(200.0, 2.0 * d.looks);
        double best = -1.0;
        double best_l = 0.0;
        for (double l = 0.1; l <= hi; l += 0.01) {
            const double v = delta_at(lr2, lr3, l);
            if (v > best) {
                best = v;
                best_l = l;
            }
        }
        EXPECT_GE(d.value, best - 1e-12) << r2 << " " << r3;
        // Refine around the coarse winner.
        for (double l = std::max(1e-6, best_l - 0.01); l <= best_l + 0.01; l += 1e-5) {
            const double v = delta_at(lr2, lr3, l);
            if (v > best) {
                best = v;
                best_l = l;
            }
        }
        EXPECT_NEAR(d.looks, best_l, 1e-4) << r2 << " " << r3;
        EXPECT_NEAR(d.value, best, 1e-9) << r2 << " " << r3;
    }
}

TEST(DeltaHMax, CapAndDegenerateCases) {
    const auto capped = delta_h_max_from_coefficients(1.0, 0.5, 50.0);
    EXPECT_EQ(capped.looks, 50.0);
    EXPECT_NEAR(capped.value, 1.0 - std::pow(0.5, 50.0), 1e-15);
    EXPECT_EQ(delta_h_max_from_coefficients(0.5, 0.9).value, 0.0);
    try {
        delta_h_max_from_coefficients(1.2, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InternalInvariantViolation);
    }
    EXPECT_THROW(delta_h_max_from_coefficients(0.0, 0.5), Error);
}

TEST(DeltaHMax, UrbanCurveRisesThenDecays) {
    const auto t = urban_example_matrix();
    const double phi = deg_to_rad(14.0);
    const auto r = rotate_coherency(t, {phi});
    const double lr2 = log_bhattacharyya_gamma(t.t22, r.t22);
    const double lr3 = log_bhattacharyya_gamma(t.t33, r.t33);
    const auto d = delta_h_max(t, phi);
    EXPECT_GT(d.looks, 1.0);
    EXPECT_LT(d.looks, kDefaultLookCap);
    EXPECT_LT(delta_at(lr2, lr3, 0.5 * d.looks), d.value);
    EXPECT_LT(delta_at(lr2, lr3, 2.0 * d.looks), d.value);
    EXPECT_LT(delta_at(lr2, lr3, 1e5 * d.looks), 1e-3);
    EXPECT_NEAR(delta_at(lr2, lr3, d.looks), d.value, 1e-12);
}

TEST(DeltaHMax, InvalidVariance) {
    EXPECT_THROW(delta_h_max(CoherencyMatrix::diagonal(1.0, 0.0, 1.0), 0.1), Error);
}

TEST(AlphaBeta, Mapping) {
    auto ab = alpha_beta_map(0.0);
    EXPECT_EQ(ab.alpha, 0.5);
    EXPECT_EQ(ab.beta, 0.5);
    ab = alpha_beta_map(kQuarterPi);
    EXPECT_EQ(ab.alpha, 1.0);
    EXPECT_EQ(ab.beta, 0.0);
    ab = alpha_beta_map(kEighthPi);
    EXPECT_NEAR(ab.alpha, 0.75, 1e-15);
    EXPECT_NEAR(ab.beta, 0.25, 1e-15);
    EXPECT_EQ(alpha_beta_map(-0.3).alpha, alpha_beta_map(0.3).alpha);
    try {
        alpha_beta_map(1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
}

TEST(Modify, ZeroDeltaIsIdentity) {
    const PowerComponents p{1.0, 2.0, 3.0, 0.5, 6.5};
    const auto q = sdy4o_modify(p, {0.7, 0.3, 0.0, 1.0});
    expect_powers(q, 1.0, 2.0, 3.0, 0.5);
}

TEST(Modify, WorkedExample) {
    const PowerComponents p{1.0, 1.0, 1.0, 0.5, 3.5};
    const auto q = sdy4o_modify(p, {0.75, 0.25, 0.4, 10.0});
    expect_powers(q, 1.1, 1.3, 0.6, 0.5);
    EXPECT_NEAR(q.ps + q.pd + q.pv, 3.0, 1e-15);
}

TEST(Modify, InvalidParams) {
    const PowerComponents p{1.0, 1.0, 1.0, 0.0, 3.0};
    for (ModulationParams m : {ModulationParams{0.7, 0.7, 0.1, 1.0}, ModulationParams{0.4, 0.6, 0.1, 1.0},
                               ModulationParams{0.5, 0.5, 1.5, 1.0}, ModulationParams{0.5, 0.5, -0.1, 1.0}}) {
        try {
            sdy4o_modify(p, m);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
        }
    }
}

TEST(SdY4o, ReflectionSymmetricMatchesY4o) {
    CoherencyMatrix t = CoherencyMatrix::diagonal(2.0, 1.0, 0.4);
    t.t12 = {0.3, -0.2};
    const auto s = sdy4o_decompose(t);
    EXPECT_EQ(s.params.delta_h_max, 0.0);
    const auto o = y4o_decompose(t);
    expect_powers(s.powers, o.ps, o.pd, o.pv, o.pc);
}

TEST(SdY4o, UrbanExample) {
    const auto t = urban_example_matrix();
    const auto s = sdy4o_decompose(t);
    const auto o = y4o_decompose(t);
    EXPECT_GT(s.params.delta_h_max, 0.0);
    EXPECT_GT(s.powers.pd, o.pd);
    EXPECT_GT(s.powers.ps, o.ps);
    EXPECT_LT(s.powers.pv, o.pv);
    EXPECT_NEAR(s.params.alpha, 0.5 + 0.5 * 14.0 / 45.0, 1e-3);
    EXPECT_NEAR(s.powers.sum(), t.trace(), 1e-9 * t.trace());
}

TEST(NegativeStats, PureTargetsHaveNone) {
    const std::vector<PowerComponents> p = {y4o_decompose(CoherencyMatrix::diagonal(1.0, 0.0, 0.0)),
                                            y4o_decompose(CoherencyMatrix::diagonal(0.0, 1.0, 0.0)),
                                            y4o_decompose(CoherencyMatrix::diagonal(0.5, 0.25, 0.25))};
    EXPECT_EQ(negative_power_stats(p).percent(), 0.0);
}

TEST(NegativeStats, OneInFour) {
    std::vector<PowerComponents> p(4, PowerComponents{1.0, 1.0, 1.0, 0.0, 3.0});
    p[2].pd = -0.1;
    const auto s = negative_power_stats(p);
    EXPECT_EQ(s.percent(), 25.0);
    EXPECT_EQ(s.negative_pd, 1U);
    EXPECT_EQ(s.negative_ps, 0U);
}

TEST(NegativeStats, EmptyRaster) {
    try {
        negative_power_stats(std::vector<PowerComponents>{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyRaster);
    }
}
