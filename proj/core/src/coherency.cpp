#include "polsar/coherency.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace polsar {

CoherencyMatrix CoherencyMatrix::from_eigen(const Eigen::Matrix3cd& m) {
    return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(0, 1), m(0, 2), m(1, 2)};
}

Eigen::Matrix3cd CoherencyMatrix::to_eigen() const {
    Eigen::Matrix3cd m;
    m << cdouble(t11), t12, t13,
         std::conj(t12), cdouble(t22), t23,
         std::conj(t13), std::conj(t23), cdouble(t33);
    return m;
}

Eigen::Vector3d CoherencyMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(to_eigen(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

bool CoherencyMatrix::is_psd(double tol) const {
    const double floor = -tol * std::abs(trace());
    if (!(t11 >= floor && t22 >= floor && t33 >= floor)) {
        return false;
    }
    return eigenvalues()(0) >= floor;
}

bool CoherencyMatrix::is_pd() const {
    Eigen::LLT<Eigen::Matrix3cd> llt(to_eigen());
    if (llt.info() != Eigen::Success) {
        return false;
    }
    return eigenvalues()(0) > 0.0;
}

double CoherencyMatrix::determinant() const {
    return to_eigen().determinant().real();
}

CoherencyMatrix CoherencyMatrix::operator+(const CoherencyMatrix& o) const {
    return {t11 + o.t11, t22 + o.t22, t33 + o.t33, t12 + o.t12, t13 + o.t13, t23 + o.t23};
}

CoherencyMatrix CoherencyMatrix::operator*(double k) const {
    return {t11 * k, t22 * k, t33 * k, t12 * k, t13 * k, t23 * k};
}

double frobenius_distance(const CoherencyMatrix& a, const CoherencyMatrix& b) {
    return (a.to_eigen() - b.to_eigen()).norm();
}

void require_pd(const CoherencyMatrix& m, const char* what) {
    if (!m.is_pd()) {
        throw Error(ErrorCode::NotPositiveDefinite, std::string(what) + " is not positive definite");
    }
}

ScatteringVector pauli_from_lexicographic(const ScatteringVector& v) {
    if (v.basis != Basis::Lexicographic) {
        throw Error(ErrorCode::InvalidParams, "pauli_from_lexicographic expects a lexicographic vector");
    }
    constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    // s[1] already carries sqrt(2) S_HV, so 2 S_HV / sqrt(2) == s[1].
    return {{(v.s[0] + v.s[2]) * inv_sqrt2, (v.s[0] - v.s[2]) * inv_sqrt2, v.s[1]}, Basis::Pauli};
}

CoherencyMatrix outer_product(const ScatteringVector& z) {
    return {std::norm(z.s[0]), std::norm(z.s[1]), std::norm(z.s[2]),
            z.s[0] * std::conj(z.s[1]), z.s[0] * std::conj(z.s[2]), z.s[1] * std::conj(z.s[2])};
}

Multilooked multilook(std::span<const ScatteringVector> samples) {
    if (samples.empty()) {
        throw Error(ErrorCode::EmptySampleSet, "multilook needs at least one sample");
    }
    const Basis basis = samples.front().basis;
    CoherencyMatrix acc;
    for (const auto& z : samples) {
        if (z.basis != basis) {
            throw Error(ErrorCode::InvalidParams, "multilook samples must share one basis");
        }
        acc = acc + outer_product(z);
    }
    const auto n = static_cast<double>(samples.size());
    return {acc * (1.0 / n), LookCount(n)};
}

CoherencyMatrix rotate_coherency(const CoherencyMatrix& t, RotationAngle theta) {
    const double c = std::cos(2.0 * theta.radians);
    const double s = std::sin(2.0 * theta.radians);
    const double cc = c * c;
    const double ss = s * s;
    const double cs = c * s;
    const double re23 = t.t23.real();

    CoherencyMatrix r;
    r.t11 = t.t11;
    r.t22 = cc * t.t22 + 2.0 * cs * re23 + ss * t.t33;
    r.t33 = ss * t.t22 - 2.0 * cs * re23 + cc * t.t33;
    r.t12 = c * t.t12 + s * t.t13;
    r.t13 = -s * t.t12 + c * t.t13;
    r.t23 = cs * (t.t33 - t.t22) + cc * t.t23 - ss * std::conj(t.t23);
    return r;
}

}  // namespace polsar
