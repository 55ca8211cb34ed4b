#pragma once

#include "dfie/specfun.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dfie {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

/// Plain bilinear cross product (Eigen's complex cross conjugates its result).
inline CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(), a.x() * b.y() - a.y() * b.x()};
}

/// Bilinear dot product, no conjugation.
inline Complex dot(const CVec3& a, const CVec3& b) { return a.x() * b.x() + a.y() * b.y() + a.z() * b.z(); }

/// Linear index of (n, m), |m| <= n, in a degree-major table.
inline int harmonic_index(int n, int m) { return n * n + n + m; }
inline int harmonic_count(int n_max) { return (n_max + 1) * (n_max + 1); }

inline Real harmonic_lambda(int n) { return std::sqrt(static_cast<Real>(n) * (n + 1)); }

/// Orthonormal scalar/vector spherical harmonics at one direction:
///   Y_nm,  V_nm = grad_S Y_nm / sqrt(n(n+1)),  W_nm = rhat x V_nm,  X_nm = rhat Y_nm.
/// Y carries the Condon-Shortley phase and Y_{n,-m} = (-1)^m conj(Y_nm).
struct HarmonicValues {
    int n_max = 0;
    Vec3 rhat;
    std::vector<Complex> Y;
    std::vector<CVec3> V, W;

    Complex y(int n, int m) const { return Y[harmonic_index(n, m)]; }
    const CVec3& v(int n, int m) const { return V[harmonic_index(n, m)]; }
    const CVec3& w(int n, int m) const { return W[harmonic_index(n, m)]; }
    CVec3 x(int n, int m) const { return rhat.cast<Complex>() * y(n, m); }
};

/// `direction` need not be normalized but must be non-zero.
HarmonicValues harmonics_at(int n_max, const Vec3& direction);

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<Real> nodes, weights;
};
QuadratureRule gauss_legendre(int points);

/// Tensor rule on the unit sphere: Gauss-Legendre in cos(theta), trapezoid in phi.
struct SphereRule {
    std::vector<Vec3> points;
    std::vector<Real> weights;
};
SphereRule sphere_rule(int n_theta, int n_phi);

}  // namespace dfie
