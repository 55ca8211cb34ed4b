#include "dfie/scatter.hpp"

#include "dfie/errors.hpp"

#include <cmath>

namespace dfie {

namespace {

// x^n / (2n+1)!!
Complex j_scale(int n, Complex x) {
    Complex s = 1.0;
    for (int l = 1; l <= n; ++l) s *= x / (2.0 * l + 1.0);
    return s;
}

// x^{n-1} / (2n+1)!!, n >= 1
Complex j_over_x_scale(int n, Complex x) {
    Complex s = 1.0 / 3.0;
    for (int l = 2; l <= n; ++l) s *= x / (2.0 * l + 1.0);
    return s;
}

// x^{2n+1} / ((2n+1)!! (2n-1)!!): ratio of the j and h scales.
Complex jh_ratio(int n, Complex x) {
    Complex s = x;
    for (int l = 1; l <= n; ++l) s *= x * x / ((2.0 * l + 1.0) * (2.0 * l - 1.0));
    return s;
}

// Scaled unknowns of the TE and TM systems for unit incident coefficients:
// (a_hat, c_hat) and (b_hat, d_hat).
struct ScaledMie {
    Complex a, c, b, d;
};

ScaledMie scaled_mie(const ProblemSetup& s, int n, const ScaledBessel& b0, const ScaledBessel& bk) {
    const Complex mu0 = s.exterior.mu, mu = s.interior.mu;
    const Complex s0 = refractive_factor(s.exterior), sk = refractive_factor(s.interior);
    const Complex h = b0.h[n], hp = b0.h[n] + b0.xdh[n];
    const Complex j0 = b0.j[n], j0p = b0.j[n] + b0.xdj[n];
    const Complex jk = bk.j[n], jkp = bk.j[n] + bk.xdj[n];
    Eigen::Matrix2cd te, tm;
    Eigen::Vector2cd rte, rtm;
    te << h, -jk, hp / mu0, -jkp / mu;
    rte << -j0, -j0p / mu0;
    tm << hp, -(s0 / sk) * jkp, h / mu0, -(sk / s0) * jk / mu;
    rtm << -j0p, -j0 / mu0;
    const Eigen::Vector2cd x = te.fullPivLu().solve(rte);
    const Eigen::Vector2cd y = tm.fullPivLu().solve(rtm);
    return {x(0), x(1), y(0), y(1)};
}

}  // namespace

MieTCoefficients mie_t_coefficients(const ProblemSetup& setup_in, int n) {
    const ProblemSetup s = validate_setup(setup_in);
    if (n < 1) throw DomainError("Mie coefficients need degree n >= 1");
    const ScaledBessel b0 = scaled_bessel(n, s.k0()), bk = scaled_bessel(n, s.k());
    const ScaledMie sm = scaled_mie(s, n, b0, bk);
    const Complex ratio = jh_ratio(n, s.k0());
    return {sm.a * ratio, sm.b * ratio};
}

std::vector<FieldSample> mie_reference(const PlaneWave& pw, const ProblemSetup& setup_in,
                                       const std::vector<Vec3>& points) {
    const ProblemSetup s = validate_setup(setup_in);
    const int N = s.n_max() + 8;
    const WaveExpansion ex = plane_wave_expansion(pw, N);
    const Complex k0 = s.k0(), k = s.k();
    const Complex s0 = refractive_factor(s.exterior), sk = refractive_factor(s.interior);
    const ScaledBessel b0 = scaled_bessel(N, k0), bk = scaled_bessel(N, k);
    std::vector<ScaledMie> coef(N + 1);
    for (int n = 1; n <= N; ++n) coef[n] = scaled_mie(s, n, b0, bk);

    std::vector<FieldSample> out;
    out.reserve(points.size());
    for (const Vec3& x : points) {
        const Region region = region_of(x);
        const bool ext = region == Region::Exterior;
        const Real r = x.norm();
        const ScaledBessel br = scaled_bessel(N, (ext ? k0 : k) * r);
        const HarmonicValues hv = harmonics_at(N, x);
        const Complex hfac = ext ? s0 / (kI * s.exterior.mu) : sk / (kI * s.interior.mu);
        FieldSample fs{x, region, CVec3::Zero(), CVec3::Zero()};
        for (int n = 1; n <= N; ++n) {
            const Real lam = harmonic_lambda(n);
            const Complex sj = j_scale(n, k0), sjx = j_over_x_scale(n, k0);
            // Radial profiles of the M (rad_m) and N (rad_n, rad_nx) waves, with
            // the incident scale folded in.
            Complex rad_m, rad_n, rad_nx, te, tm;
            if (ext) {
                const Real pm = std::pow(r, -(n + 1)), pn = std::pow(r, -(n + 2));
                rad_m = sj * pm * br.h[n];
                rad_nx = sjx * pn * br.h[n];
                rad_n = sjx * pn * (br.h[n] + br.xdh[n]);
                te = coef[n].a;
                tm = coef[n].b;
            } else {
                const Real pm = std::pow(r, n), pn = std::pow(r, n - 1);
                rad_m = sj * pm * br.j[n];
                rad_nx = sjx * (s0 / sk) * pn * br.j[n];
                rad_n = sjx * (s0 / sk) * pn * (br.j[n] + br.xdj[n]);
                te = coef[n].c;
                tm = coef[n].d;
            }
            for (int m = -n; m <= n; ++m) {
                const int i = harmonic_index(n, m);
                const Complex a = ex.A[i] * te, b = ex.B[i] * tm;
                // E = a M + b N, H = hfac (a N + b M)
                const ModeVector E{-lam * b * rad_nx, -b * rad_n, a * rad_m};
                const ModeVector H{-lam * a * rad_nx * hfac, -a * rad_n * hfac, b * rad_m * hfac};
                fs.E += hv.x(n, m) * E.f + hv.v(n, m) * E.g + hv.w(n, m) * E.h;
                fs.H += hv.x(n, m) * H.f + hv.v(n, m) * H.g + hv.w(n, m) * H.h;
            }
        }
        out.push_back(fs);
    }
    return out;
}

}  // namespace dfie
