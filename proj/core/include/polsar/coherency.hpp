#pragma once

// Complex-matrix domain types for quad-pol second-order statistics:
// scattering vectors, 3x3 Hermitian coherency/covariance matrices, basis
// conversion, boxcar multilooking and the unitary orientation rotation.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>

#include <Eigen/Core>

#include "polsar/error.hpp"

namespace polsar {

using cdouble = std::complex<double>;

/// Relative tolerance used when validating positive semi-definiteness:
/// eigenvalues must be >= -kPsdTolerance * trace.
inline constexpr double kPsdTolerance = 1e-9;

/// Number of looks. Integer when produced by averaging, real when used as a
/// distance parameter; always strictly positive.
class LookCount {
public:
    explicit LookCount(double looks) : value_(looks) {
        if (!(looks > 0.0) || !std::isfinite(looks)) {
            throw Error(ErrorCode::InvalidParams, "look count must be finite and > 0");
        }
    }
    double value() const noexcept { return value_; }
    friend bool operator==(LookCount, LookCount) = default;

private:
    double value_;
};

struct RotationAngle {
    double radians = 0.0;

    static RotationAngle from_degrees(double deg) { return {deg * std::numbers::pi / 180.0}; }
    double degrees() const noexcept { return radians * 180.0 / std::numbers::pi; }
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

enum class Basis { Lexicographic, Pauli };

/// Lexicographic: (S_HH, sqrt(2) S_HV, S_VV).
/// Pauli:         (S_HH + S_VV, S_HH - S_VV, 2 S_HV) / sqrt(2).
struct ScatteringVector {
    std::array<cdouble, 3> s{};
    Basis basis = Basis::Pauli;

    /// Total power; the sqrt(2) weighting of the lexicographic cross-pol term
    /// makes this identical in both bases.
    double span() const noexcept {
        return std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]);
    }
};

/// 3x3 Hermitian matrix stored as its upper triangle. Used for the coherency
/// matrix T as well as for covariance parameters of the Wishart law.
struct CoherencyMatrix {
    double t11 = 0.0;
    double t22 = 0.0;
    double t33 = 0.0;
    cdouble t12{};
    cdouble t13{};
    cdouble t23{};

    static CoherencyMatrix diagonal(double a, double b, double c) { return {a, b, c, {}, {}, {}}; }
    static CoherencyMatrix identity() { return diagonal(1.0, 1.0, 1.0); }

    /// Builds from a full matrix, keeping the upper triangle and the real part
    /// of the diagonal.
    static CoherencyMatrix from_eigen(const Eigen::Matrix3cd& m);

    double trace() const noexcept { return t11 + t22 + t33; }
    Eigen::Matrix3cd to_eigen() const;

    /// Ascending eigenvalues.
    Eigen::Vector3d eigenvalues() const;

    /// Eigenvalues >= -tol*trace and nonnegative diagonal.
    bool is_psd(double tol = kPsdTolerance) const;

    /// Strictly positive definite (Cholesky succeeds and all eigenvalues > 0).
    bool is_pd() const;

    double determinant() const;

    CoherencyMatrix operator+(const CoherencyMatrix& o) const;
    CoherencyMatrix operator*(double k) const;

    friend bool operator==(const CoherencyMatrix&, const CoherencyMatrix&) = default;
};

double frobenius_distance(const CoherencyMatrix& a, const CoherencyMatrix& b);

/// Throws NotPositiveDefinite unless `m.is_pd()`.
void require_pd(const CoherencyMatrix& m, const char* what);

ScatteringVector pauli_from_lexicographic(const ScatteringVector& v);

/// z z^{*T}.
CoherencyMatrix outer_product(const ScatteringVector& z);

struct Multilooked {
    CoherencyMatrix matrix;
    LookCount looks;
};

/// Boxcar average of single-look outer products. Throws EmptySampleSet on an
/// empty span and InvalidParams on mixed bases.
Multilooked multilook(std::span<const ScatteringVector> samples);

/// U3(theta) T U3(theta)^-1 with
///   U3 = [1 0 0; 0 cos2t sin2t; 0 -sin2t cos2t].
/// T11 and the trace are preserved; Im(T23) is roll invariant.
CoherencyMatrix rotate_coherency(const CoherencyMatrix& t, RotationAngle theta);

}  // namespace polsar
