#include "polsar/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace polsar {
namespace {

void require_positive(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::InvalidVariance, "channel variances must be finite and > 0");
    }
}

// log|A| via Cholesky; NaN when A is not positive definite.
double log_det_pd(const Eigen::MatrixXcd& a) {
    Eigen::LLT<Eigen::MatrixXcd> llt(a);
    if (llt.info() != Eigen::Success) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double acc = 0.0;
    const Eigen::MatrixXcd& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double d = l(i, i).real();
        if (!(d > 0.0)) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        acc += 2.0 * std::log(d);
    }
    return acc;
}

// Depth bounds the narrowest subinterval at 2^-14 of the support.
constexpr unsigned kMaxDepth = 14;
constexpr double kRelTolerance = 1e-9;
constexpr double kAbsFloor = 1e-14;

template <class F>
double integrate_adaptive(const F& f, double lo, double hi) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    double l1 = 0.0;
    const double value = gauss_kronrod<double, 15>::integrate(f, lo, hi, kMaxDepth, kRelTolerance, &error, &l1);
    if (!std::isfinite(value) || error > std::max(kRelTolerance * l1, kAbsFloor)) {
        throw Error(ErrorCode::QuadratureFailed,
                    "adaptive quadrature did not converge within the subdivision budget");
    }
    return value;
}

constexpr double kExpUnderflow = -745.0;
// Caps log(f_i / f_j) low enough that phi(ratio) stays finite for
// super-linear phi such as x log x.
constexpr double kLogRatioCap = 600.0;

}  // namespace

double log_bhattacharyya_gamma(double var_i, double var_j) {
    require_positive(var_i, var_j);
    const double si = std::sqrt(var_i);
    const double sj = std::sqrt(var_j);
    const double diff = si - sj;
    return -std::log1p(diff * diff / (2.0 * si * sj));
}

DistanceValue hellinger_gamma(double var_i, double var_j, LookCount looks) {
    const double log_r = log_bhattacharyya_gamma(var_i, var_j);
    const double value = -std::expm1(looks.value() * log_r);
    return {std::clamp(value, 0.0, 1.0), DistanceFamily::Hellinger, looks};
}

DistanceValue kl_gamma(double var_i, double var_j, LookCount looks) {
    require_positive(var_i, var_j);
    const double diff = var_i - var_j;
    return {0.5 * looks.value() * diff * diff / (var_i * var_j), DistanceFamily::KullbackLeibler, looks};
}

DistanceValue gamma_distance(DistanceFamily family, double var_i, double var_j, LookCount looks) {
    return family == DistanceFamily::Hellinger ? hellinger_gamma(var_i, var_j, looks)
                                               : kl_gamma(var_i, var_j, looks);
}

DistanceValue hellinger_wishart(const Eigen::MatrixXcd& sigma_i, const Eigen::MatrixXcd& sigma_j,
                                LookCount looks) {
    if (sigma_i.rows() != sigma_i.cols() || sigma_j.rows() != sigma_j.cols() ||
        sigma_i.rows() != sigma_j.rows() || sigma_i.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "Wishart parameters must be square with equal dimension");
    }
    if (sigma_i == sigma_j) {
        if (std::isnan(log_det_pd(sigma_i))) {
            throw Error(ErrorCode::NotPositiveDefinite, "Wishart parameter is not positive definite");
        }
        return {0.0, DistanceFamily::Hellinger, looks};
    }
    const auto p = static_cast<double>(sigma_i.rows());
    const double ld_i = log_det_pd(sigma_i);
    const double ld_j = log_det_pd(sigma_j);
    if (std::isnan(ld_i) || std::isnan(ld_j)) {
        throw Error(ErrorCode::NotPositiveDefinite, "Wishart parameter is not positive definite");
    }
    const double ld_inv_sum = -log_det_pd(sigma_i.inverse() + sigma_j.inverse());
    const double log_coefficient = p * std::log(2.0) + ld_inv_sum - 0.5 * (ld_i + ld_j);
    const double value = -std::expm1(looks.value() * std::min(log_coefficient, 0.0));
    return {std::clamp(value, 0.0, 1.0), DistanceFamily::Hellinger, looks};
}

DistanceValue hellinger_wishart(const CoherencyMatrix& sigma_i, const CoherencyMatrix& sigma_j,
                                LookCount looks) {
    return hellinger_wishart(Eigen::MatrixXcd(sigma_i.to_eigen()), Eigen::MatrixXcd(sigma_j.to_eigen()),
                             looks);
}

HPhiSpec hellinger_hphi() {
    return {[](double x) { return 0.5 * x; },
            [](double x) {
                const double d = std::sqrt(x) - 1.0;
                return d * d;
            },
            "Hellinger: h(x) = x/2, phi(x) = (sqrt(x) - 1)^2",
            [](double d) {
                const double u = -std::expm1(-0.5 * d);
                return u * u;
            }};
}

HPhiSpec kullback_leibler_hphi() {
    return {[](double x) { return x; },
            [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; },
            "Kullback-Leibler: h(x) = x, phi(x) = x log x",
            [](double d) { return d; }};
}

Support gamma_support(double mean_i, double mean_j) {
    require_positive(mean_i, mean_j);
    return {0.0, 50.0 * std::max(mean_i, mean_j)};
}

double hphi_divergence_numeric(const HPhiSpec& spec, const LogDensity& log_density_i,
                               const LogDensity& log_density_j, Support support) {
    if (!(support.hi > support.lo)) {
        throw Error(ErrorCode::InvalidParams, "empty integration support");
    }
    // phi(f_i/f_j) f_j, rewritten as (phi(x)/x) f_i where the ratio exceeds 1
    // so neither factor overflows.
    const auto integrand = [&](double x) {
        const double li = log_density_i(x);
        const double lj = log_density_j(x);
        if (li < kExpUnderflow && lj < kExpUnderflow) {
            return 0.0;
        }
        if (lj >= li) {
            return spec.phi(std::exp(li - lj)) * std::exp(lj);
        }
        const double exp_li = std::exp(li);
        if (spec.phi_over_ratio) {
            return spec.phi_over_ratio(li - lj) * exp_li;
        }
        const double ratio = std::exp(std::min(li - lj, kLogRatioCap));
        return spec.phi(ratio) / ratio * exp_li;
    };
    return spec.h(integrate_adaptive(integrand, support.lo, support.hi));
}

double hphi_distance_numeric(const HPhiSpec& spec, const LogDensity& log_density_i,
                             const LogDensity& log_density_j, Support support) {
    return 0.5 * (hphi_divergence_numeric(spec, log_density_i, log_density_j, support) +
                  hphi_divergence_numeric(spec, log_density_j, log_density_i, support));
}

}  // namespace polsar
