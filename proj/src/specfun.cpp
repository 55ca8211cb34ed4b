#include "dfie/specfun.hpp"

#include "dfie/errors.hpp"

#include <cmath>
#include <string>

namespace dfie {

namespace {

void check_argument(Complex x) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw DomainError("Bessel argument is not finite");
    }
    if (x.imag() < 0.0) {
        throw DomainError("Bessel argument must satisfy Im z >= 0");
    }
}

// Power series of j_n(x) (2n+1)!! / x^n; terms decrease monotonically for |x| < 1.
Complex scaled_j_series(int n, Complex x) {
    const Complex t = -0.5 * x * x;
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int i = 1; i < 200; ++i) {
        term *= t / (static_cast<Real>(i) * (2.0 * n + 2.0 * i + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Miller's downward recurrence normalized against j_0 or j_1.
std::vector<Complex> miller_j(int n_top, Complex x) {
    const int start = n_top + 32 + static_cast<int>(std::ceil(std::abs(x)));
    std::vector<Complex> f(start + 2, Complex{0.0});
    f[start] = 1e-30;
    for (int l = start; l >= 1; --l) {
        f[l - 1] = (2.0 * l + 1.0) / x * f[l] - f[l + 1];
        if (std::abs(f[l - 1]) > 1e200) {
            for (int i = l - 1; i <= start + 1; ++i) f[i] *= 1e-200;
        }
    }
    const Complex j0 = std::sin(x) / x;
    const Complex j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const Complex scale = std::abs(j0) >= std::abs(j1) ? j0 / f[0] : j1 / f[1];
    std::vector<Complex> out(n_top + 1);
    for (int l = 0; l <= n_top; ++l) out[l] = f[l] * scale;
    return out;
}

Real double_factorial_odd(int n) {  // (2n-1)!!, with (-1)!! = 1
    Real r = 1.0;
    for (int i = 1; i <= n; ++i) r *= 2.0 * i - 1.0;
    return r;
}

}  // namespace

Complex ipow(Complex z, int p) {
    Complex r = 1.0;
    Complex b = z;
    while (p > 0) {
        if (p & 1) r *= b;
        b *= b;
        p >>= 1;
    }
    return r;
}

Complex ScaledBessel::j_scale(int n) const {
    Complex s = 1.0;
    for (int l = 1; l <= n; ++l) s *= x / (2.0 * l + 1.0);
    return s;
}

Complex ScaledBessel::h_scale(int n) const {
    Complex s = 1.0 / x;
    for (int l = 1; l <= n; ++l) s *= (2.0 * l - 1.0) / x;
    return s;
}

ScaledBessel scaled_bessel(int n_max, Complex x) {
    check_argument(x);
    if (n_max < 0) throw DomainError("n_max must be non-negative");

    ScaledBessel b;
    b.x = x;
    const int top = n_max + 1;
    std::vector<Complex> js(top + 1);
    if (std::abs(x) < 1.0) {
        for (int l = 0; l <= top; ++l) js[l] = scaled_j_series(l, x);
    } else {
        const std::vector<Complex> jv = miller_j(top, x);
        Complex scale = 1.0;  // x^l / (2l+1)!!
        for (int l = 0; l <= top; ++l) {
            if (l > 0) scale *= x / (2.0 * l + 1.0);
            js[l] = jv[l] / scale;
        }
    }

    const Complex x2 = x * x;
    b.j.assign(js.begin(), js.begin() + n_max + 1);
    b.xdj.resize(n_max + 1);
    for (int l = 0; l <= n_max; ++l) {
        b.xdj[l] = static_cast<Real>(l) * js[l] - x2 * js[l + 1] / (2.0 * l + 3.0);
    }

    std::vector<Complex> hs(top + 1);
    const Complex e = std::exp(kI * x);
    hs[0] = -kI * e;
    hs[1] = -e * (x + kI);
    for (int l = 1; l < top; ++l) {
        hs[l + 1] = hs[l] - x2 * hs[l - 1] / ((2.0 * l + 1.0) * (2.0 * l - 1.0));
    }
    b.h.assign(hs.begin(), hs.begin() + n_max + 1);
    b.xdh.resize(n_max + 1);
    b.xdh[0] = -hs[1];
    for (int l = 1; l <= n_max; ++l) {
        b.xdh[l] = x2 * hs[l - 1] / (2.0 * l - 1.0) - (l + 1.0) * hs[l];
    }
    return b;
}

BesselTable bessel_table(int n_max, Complex z) {
    check_argument(z);
    if (z == Complex{0.0}) throw SingularArgumentError("h_n^(1) is singular at z = 0");
    const ScaledBessel s = scaled_bessel(n_max, z);
    BesselTable t;
    t.n_max = n_max;
    t.z = z;
    t.j.resize(n_max + 1);
    t.h1.resize(n_max + 1);
    t.dj.resize(n_max + 1);
    t.dh1.resize(n_max + 1);
    Complex js = 1.0;
    Complex hs = 1.0 / z;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            js *= z / (2.0 * n + 1.0);
            hs *= (2.0 * n - 1.0) / z;
        }
        t.j[n] = js * s.j[n];
        t.dj[n] = js * s.xdj[n] / z;
        t.h1[n] = hs * s.h[n];
        t.dh1[n] = hs * s.xdh[n] / z;
    }
    return t;
}

StaticLimits small_z_static_limit(int n) {
    const Real d = 2.0 * n + 1.0;
    return {1.0 / d, -0.5 / d};
}

Complex single_layer_eigenvalue(int n, Complex k) {
    const ScaledBessel b = scaled_bessel(n, k);
    return kI * b.j[n] * b.h[n] / (2.0 * n + 1.0);
}

Complex single_layer_difference_quotient(int n, Complex s0, Complex s, Real omega) {
    const Real kmax = omega * std::max(std::abs(s0), std::abs(s));
    if (kmax >= 0.05) {
        return (single_layer_eigenvalue(n, omega * s0) - single_layer_eigenvalue(n, omega * s)) / omega;
    }
    constexpr int kDegree = 40;
    // jS(x) = sum a_i x^{2i},  hS(x) = i yS(x) + x^{2n+1} jS(x) / ((2n-1)!! (2n+1)!!)
    std::vector<Complex> js(kDegree + 1, 0.0), hs(kDegree + 1, 0.0);
    Real a = 1.0, b = 1.0;
    for (int i = 0; 2 * i <= kDegree; ++i) {
        if (i > 0) {
            a *= -0.5 / (i * (2.0 * n + 2.0 * i + 1.0));
            b *= -0.5 / (i * (2.0 * i - 1.0 - 2.0 * n));
        }
        js[2 * i] = a;
        hs[2 * i] += -kI * b;
    }
    if (2 * n + 1 <= kDegree) {
        const Real norm = double_factorial_odd(n) * double_factorial_odd(n + 1);
        for (int d = 0; d + 2 * n + 1 <= kDegree; ++d) hs[d + 2 * n + 1] += js[d] / norm;
    }
    Complex sum = 0.0;
    Complex p0 = 1.0, p = 1.0, om = 1.0;  // s0^d, s^d, omega^{d-1}
    for (int d = 1; d <= kDegree; ++d) {
        Complex coeff = 0.0;
        for (int e = 0; e <= d; ++e) coeff += js[e] * hs[d - e];
        p0 *= s0;
        p *= s;
        if (d > 1) om *= omega;
        sum += coeff * om * (p0 - p);
    }
    return kI * sum / (2.0 * n + 1.0);
}

}  // namespace dfie
