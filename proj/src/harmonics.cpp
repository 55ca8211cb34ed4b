#include "dfie/harmonics.hpp"

#include "dfie/errors.hpp"

#include <cmath>

namespace dfie {

HarmonicValues harmonics_at(int n_max, const Vec3& direction) {
    const Real norm = direction.norm();
    if (!(norm > 0.0)) throw DomainError("harmonics_at: zero direction");
    HarmonicValues out;
    out.n_max = n_max;
    out.rhat = direction / norm;
    const int count = harmonic_count(n_max);
    out.Y.assign(count, Complex{0.0});
    out.V.assign(count, CVec3::Zero());
    out.W.assign(count, CVec3::Zero());

    const Real ct = std::clamp(out.rhat.z(), -1.0, 1.0);
    const Real st = std::hypot(out.rhat.x(), out.rhat.y());
    const Real phi = std::atan2(out.rhat.y(), out.rhat.x());
    const Vec3 theta_hat(ct * std::cos(phi), ct * std::sin(phi), -st);
    const Vec3 phi_hat(-std::sin(phi), std::cos(phi), 0.0);

    // pbar[n] = normalized P_n^m(cos theta); q[n] = pbar[n] / sin(theta) for m >= 1.
    std::vector<Real> pbar(n_max + 1), q(n_max + 1), dpbar(n_max + 1);
    std::vector<Real> p1(n_max + 1, 0.0);  // normalized P_n^1, for m = 0 derivatives
    Real pmm = 1.0 / std::sqrt(4.0 * kPi);
    Real qmm = 0.0;
    for (int m = 0; m <= n_max; ++m) {
        if (m > 0) {
            const Real c = -std::sqrt((2.0 * m + 1.0) / (2.0 * m));
            qmm = (m == 1) ? c * pmm : c * st * qmm;
            pmm = c * st * pmm;
        }
        std::fill(pbar.begin(), pbar.end(), 0.0);
        std::fill(q.begin(), q.end(), 0.0);
        pbar[m] = pmm;
        q[m] = qmm;
        if (m + 1 <= n_max) {
            pbar[m + 1] = std::sqrt(2.0 * m + 3.0) * ct * pmm;
            q[m + 1] = std::sqrt(2.0 * m + 3.0) * ct * qmm;
        }
        for (int n = m + 2; n <= n_max; ++n) {
            const Real a = std::sqrt((4.0 * n * n - 1.0) / (static_cast<Real>(n) * n - static_cast<Real>(m) * m));
            const Real b = std::sqrt(((n - 1.0) * (n - 1.0) - static_cast<Real>(m) * m) /
                                     (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
            pbar[n] = a * (ct * pbar[n - 1] - b * pbar[n - 2]);
            q[n] = a * (ct * q[n - 1] - b * q[n - 2]);
        }
        if (m == 1) {
            for (int n = 1; n <= n_max; ++n) p1[n] = pbar[n];
        }
        for (int n = m; n <= n_max; ++n) {
            if (m == 0) {
                dpbar[n] = 0.0;  // filled after the m = 1 pass
            } else {
                const Real prev = (n - 1 >= m) ? q[n - 1] : 0.0;
                dpbar[n] = n * ct * q[n] -
                           std::sqrt((2.0 * n + 1.0) / (2.0 * n - 1.0) * (n - m) * static_cast<Real>(n + m)) * prev;
            }
        }
        for (int n = m; n <= n_max; ++n) {
            const Complex e = std::polar(1.0, m * phi);
            const int idx = harmonic_index(n, m);
            out.Y[idx] = pbar[n] * e;
            if (n == 0) continue;
            if (m > 0) {
                const CVec3 grad = theta_hat.cast<Complex>() * (dpbar[n] * e) +
                                   phi_hat.cast<Complex>() * (kI * static_cast<Real>(m) * q[n] * e);
                out.V[idx] = grad / harmonic_lambda(n);
            }
        }
    }
    // m = 0 tangential parts: d/dtheta pbar_n^0 = sqrt(n(n+1)) pbar_n^1
    for (int n = 1; n <= n_max; ++n) {
        out.V[harmonic_index(n, 0)] = theta_hat.cast<Complex>() * Complex(p1[n]);
    }
    const Eigen::Vector3cd rc = out.rhat.cast<Complex>();
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; m <= n; ++m) {
            const int idx = harmonic_index(n, m);
            out.W[idx] = cross(rc, out.V[idx]);
            if (m > 0) {
                const Real sign = (m % 2 == 0) ? 1.0 : -1.0;
                const int neg = harmonic_index(n, -m);
                out.Y[neg] = sign * std::conj(out.Y[idx]);
                out.V[neg] = sign * out.V[idx].conjugate();
                out.W[neg] = sign * out.W[idx].conjugate();
            }
        }
    }
    return out;
}

QuadratureRule gauss_legendre(int points) {
    QuadratureRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    for (int i = 0; i < (points + 1) / 2; ++i) {
        Real x = std::cos(kPi * (i + 0.75) / (points + 0.5));
        Real dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = 1.0, p1 = x;
            for (int k = 2; k <= points; ++k) {
                const Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = points * (x * p1 - p0) / (x * x - 1.0);
            const Real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[points - 1 - i] = x;
        const Real w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[points - 1 - i] = w;
    }
    return rule;
}

SphereRule sphere_rule(int n_theta, int n_phi) {
    const QuadratureRule gl = gauss_legendre(n_theta);
    SphereRule rule;
    rule.points.reserve(static_cast<size_t>(n_theta) * n_phi);
    rule.weights.reserve(static_cast<size_t>(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        const Real ct = gl.nodes[i];
        const Real st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < n_phi; ++j) {
            const Real phi = 2.0 * kPi * j / n_phi;
            rule.points.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
            rule.weights.push_back(gl.weights[i] * 2.0 * kPi / n_phi);
        }
    }
    return rule;
}

}  // namespace dfie
