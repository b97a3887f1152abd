#pragma once

// Stochastic distances between Gamma (single channel, multilook intensity)
// and scaled complex Wishart laws sharing the same number of looks, plus a
// quadrature evaluator for generic (h, phi) divergences between 1-D densities.

#include <functional>
#include <string>

#include <Eigen/Core>

#include "polsar/coherency.hpp"

namespace polsar {

enum class DistanceFamily { Hellinger, KullbackLeibler };

struct DistanceValue {
    double value = 0.0;
    DistanceFamily family = DistanceFamily::Hellinger;
    LookCount looks{1.0};
};

/// Natural log of the Bhattacharyya coefficient 2 sqrt(a b) / (a + b) between
/// two Gamma laws with equal shape; computed as -log1p((sqrt a - sqrt b)^2 /
/// (2 sqrt(ab))) so it is exactly 0 at a == b and exactly symmetric.
double log_bhattacharyya_gamma(double var_i, double var_j);

/// 1 - [2 sqrt(a b) / (a + b)]^L. Throws InvalidVariance for a, b <= 0.
DistanceValue hellinger_gamma(double var_i, double var_j, LookCount looks);

/// Symmetrized Kullback-Leibler divergence between Gamma laws with shape L:
/// (L / 2) (a/b + b/a - 2).
DistanceValue kl_gamma(double var_i, double var_j, LookCount looks);

/// Dispatches on the family.
DistanceValue gamma_distance(DistanceFamily family, double var_i, double var_j, LookCount looks);

/// 1 - [2^p |(Si^-1 + Sj^-1)^-1| / sqrt(|Si| |Sj|)]^L for p x p Hermitian
/// positive definite parameters. Equals 0 iff Si == Sj.
DistanceValue hellinger_wishart(const Eigen::MatrixXcd& sigma_i, const Eigen::MatrixXcd& sigma_j,
                                LookCount looks);
DistanceValue hellinger_wishart(const CoherencyMatrix& sigma_i, const CoherencyMatrix& sigma_j,
                                LookCount looks);

/// Generic (h, phi) divergence D = h( integral phi(f_i / f_j) f_j ).
struct HPhiSpec {
    std::function<double(double)> h;
    std::function<double(double)> phi;
    std::string description;
    /// Optional phi(e^d) / e^d as a function of d = log(f_i / f_j). Used where
    /// f_i > f_j; without it the ratio is capped before calling phi.
    std::function<double(double)> phi_over_ratio{};
};

HPhiSpec hellinger_hphi();         // h(x) = x / 2, phi(x) = (sqrt x - 1)^2
HPhiSpec kullback_leibler_hphi();  // h(x) = x,     phi(x) = x log x

/// Densities are passed as log-pdfs so that ratios stay finite in the tails.
using LogDensity = std::function<double(double)>;

struct Support {
    double lo = 0.0;
    double hi = 0.0;
};

/// [0, 50 * max(mean_i, mean_j)]: Gamma tails are negligible beyond that.
Support gamma_support(double mean_i, double mean_j);

/// Adaptive Gauss-Kronrod (15 point) evaluation of D(f_i || f_j) with relative
/// tolerance 1e-9 and bisection depth at most 14. Throws QuadratureFailed.
double hphi_divergence_numeric(const HPhiSpec& spec, const LogDensity& log_density_i,
                               const LogDensity& log_density_j, Support support);

/// (D(i || j) + D(j || i)) / 2.
double hphi_distance_numeric(const HPhiSpec& spec, const LogDensity& log_density_i,
                             const LogDensity& log_density_j, Support support);

}  // namespace polsar
