#pragma once

#include <complex>
#include <vector>

namespace dfie {

using Real = double;
using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr Real kPi = 3.14159265358979323846;

/// z^p for integer p >= 0 with 0^0 = 1.
Complex ipow(Complex z, int p);

/// Spherical Bessel j_n and Hankel h_n^(1) with their natural small-argument
/// growth divided out, so that products j_n(a) h_n(b) stay representable for
/// any n as a, b -> 0:
///
///   j_n(x)   = x^n / (2n+1)!!      * j[n]       x j_n'(x) = x^n / (2n+1)!!      * xdj[n]
///   h_n(x)   = (2n-1)!! / x^{n+1}  * h[n]       x h_n'(x) = (2n-1)!! / x^{n+1}  * xdh[n]
///
/// At x = 0 the limits are j = 1, xdj = n, h = -i, xdh = i(n+1).
struct ScaledBessel {
    Complex x;
    std::vector<Complex> j, xdj, h, xdh;

    int n_max() const { return static_cast<int>(j.size()) - 1; }
    /// Unscaling factors.
    Complex j_scale(int n) const;
    Complex h_scale(int n) const;
};

/// Scaled table for degrees 0..n_max. Requires Im x >= 0 and finite x; x = 0 allowed.
ScaledBessel scaled_bessel(int n_max, Complex x);

/// Unscaled spherical Bessel/Hankel table with derivatives.
struct BesselTable {
    int n_max = 0;
    Complex z;
    std::vector<Complex> j, h1, dj, dh1;
};

/// Throws DomainError for non-finite z or Im z < 0, SingularArgumentError for z = 0.
BesselTable bessel_table(int n_max, Complex z);

/// k -> 0 limits of the unit-sphere symbols of degree n.
struct StaticLimits {
    Real single_layer;     ///< lim i k j_n(k) h_n(k) = 1/(2n+1)
    Real double_layer_pv;  ///< principal-value double layer, -1/(2(2n+1))
};
StaticLimits small_z_static_limit(int n);

/// Eigenvalue of the scalar single layer S_k on Y_nm of the unit sphere,
/// i k j_n(k) h_n(k); exact 1/(2n+1) at k = 0.
Complex single_layer_eigenvalue(int n, Complex k);

/// (c_n(omega*s0) - c_n(omega*s)) / omega, with c_n the single-layer eigenvalue.
/// Evaluated by a power series when both wavenumbers are small, so the
/// difference carries full relative accuracy down to omega = 0.
Complex single_layer_difference_quotient(int n, Complex s0, Complex s, Real omega);

}  // namespace dfie
