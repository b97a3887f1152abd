#include "polsar/wishart.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace polsar {

ComplexGaussianSource::ComplexGaussianSource(const CoherencyMatrix& sigma, std::uint64_t seed)
    : rng_(seed) {
    require_pd(sigma, "Gaussian covariance");
    Eigen::LLT<Eigen::Matrix3cd> llt(sigma.to_eigen());
    chol_ = llt.matrixL();
}

ScatteringVector ComplexGaussianSource::draw() {
    Eigen::Vector3cd w;
    for (int i = 0; i < 3; ++i) {
        const double re = normal_(rng_);
        const double im = normal_(rng_);
        w(i) = cdouble(re, im);
    }
    const Eigen::Vector3cd z = chol_ * w;
    return {{z(0), z(1), z(2)}, Basis::Pauli};
}

CoherencyMatrix wishart_sample(const CoherencyMatrix& sigma, int looks, std::uint64_t seed) {
    if (looks < 1) {
        throw Error(ErrorCode::InvalidParams, "wishart_sample needs looks >= 1");
    }
    ComplexGaussianSource source(sigma, seed);
    CoherencyMatrix acc;
    for (int l = 0; l < looks; ++l) {
        acc = acc + outer_product(source.draw());
    }
    return acc * (1.0 / looks);
}

double log_multivariate_gamma(int p, double looks) {
    double acc = 0.5 * p * (p - 1) * std::log(std::numbers::pi);
    for (int v = 1; v <= p; ++v) {
        acc += std::lgamma(looks - v + 1.0);
    }
    return acc;
}

double wishart_log_density(const CoherencyMatrix& z, const CoherencyMatrix& sigma, LookCount looks) {
    constexpr int p = 3;
    const double l = looks.value();
    if (!(l > p - 1)) {
        throw Error(ErrorCode::InvalidParams, "Wishart density needs L > p - 1");
    }
    require_pd(z, "Z");
    require_pd(sigma, "Sigma");

    const Eigen::Matrix3cd s = sigma.to_eigen();
    const Eigen::Matrix3cd zm = z.to_eigen();
    const double log_det_z = std::log(z.determinant());
    const double log_det_s = std::log(sigma.determinant());
    const double tr = (s.inverse() * zm).trace().real();

    return p * l * std::log(l) + (l - p) * log_det_z - l * tr - log_multivariate_gamma(p, l) -
           l * log_det_s;
}

double gamma_log_density(double z, double mean, LookCount looks) {
    if (!(mean > 0.0)) {
        throw Error(ErrorCode::InvalidVariance, "Gamma mean must be > 0");
    }
    if (!(z > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    const double l = looks.value();
    return l * std::log(l) + (l - 1.0) * std::log(z) - l * z / mean - std::lgamma(l) - l * std::log(mean);
}

}  // namespace polsar
