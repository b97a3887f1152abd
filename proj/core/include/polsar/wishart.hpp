#pragma once

// Circular complex Gaussian scattering-vector draws and the scaled complex
// Wishart law of L-look coherency matrices.

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "polsar/coherency.hpp"

namespace polsar {

/// Draws zero-mean circular complex Gaussian vectors z with E[z z^H] = Sigma,
/// as L * w where L is the Cholesky factor of Sigma and w has i.i.d. unit
/// variance complex entries.
class ComplexGaussianSource {
public:
    ComplexGaussianSource(const CoherencyMatrix& sigma, std::uint64_t seed);

    ScatteringVector draw();

private:
    Eigen::Matrix3cd chol_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, std::sqrt(0.5)};
};

/// Average of `looks` independent outer products drawn with covariance Sigma.
/// Deterministic given the seed. Throws NotPositiveDefinite / InvalidParams.
CoherencyMatrix wishart_sample(const CoherencyMatrix& sigma, int looks, std::uint64_t seed);

/// log Gamma_p(L) = p(p-1)/2 log(pi) + sum_{v=1..p} log Gamma(L - v + 1).
double log_multivariate_gamma(int p, double looks);

/// Log density of the scaled complex Wishart law (p = 3):
///   L^{pL} |Z|^{L-p} exp(-L tr(Sigma^-1 Z)) / (Gamma_p(L) |Sigma|^L).
/// Requires Z, Sigma positive definite and L > p - 1.
double wishart_log_density(const CoherencyMatrix& z, const CoherencyMatrix& sigma, LookCount looks);

/// The p = 1 case: Gamma law with shape L and mean `mean`.
double gamma_log_density(double z, double mean, LookCount looks);

}  // namespace polsar
