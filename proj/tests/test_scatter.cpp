#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dfie/errors.hpp"
#include "dfie/scatter.hpp"

using namespace dfie;

namespace {

const PlaneWave kWave{Vec3(0.0, 0.0, 1.0), Vec3(1.0, 0.0, 0.0), 1.0};

ProblemSetup make_setup(Real omega, Complex eps, Complex mu, std::optional<int> n_max = std::nullopt) {
    ProblemSetup s;
    s.omega = omega;
    s.interior = {eps, mu};
    s.n_max_override = n_max;
    return s;
}

std::vector<Vec3> shell(Real r, int count) {
    std::vector<Vec3> pts;
    const Real golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const Real z = 1.0 - (2.0 * i + 1.0) / count;
        const Real rho = std::sqrt(1.0 - z * z);
        pts.emplace_back(r * rho * std::cos(golden * i), r * rho * std::sin(golden * i), r * z);
    }
    return pts;
}

// Relative l2 distance over a point set, E and H separately.
Real set_error(const std::vector<FieldSample>& a, const std::vector<FieldSample>& b) {
    Real de = 0, dh = 0, ne = 0, nh = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        de += (a[i].E - b[i].E).squaredNorm();
        dh += (a[i].H - b[i].H).squaredNorm();
        ne += b[i].E.squaredNorm();
        nh += b[i].H.squaredNorm();
    }
    return std::max(std::sqrt(de / ne), std::sqrt(dh / nh));
}

std::vector<Vec3> sample_points() {
    std::vector<Vec3> p = shell(2.0, 16), q = shell(0.5, 16);
    p.insert(p.end(), q.begin(), q.end());
    return p;
}

}  // namespace

TEST_CASE("plane wave validation") {
    CHECK_THROWS_AS(check_plane_wave(PlaneWave{Vec3(0, 0, 2), Vec3(1, 0, 0), 1.0}), DomainError);
    CHECK_THROWS_AS(check_plane_wave(PlaneWave{Vec3(0, 0, 1), Vec3(0, 0.6, 0.8), 1.0}), DomainError);
    CHECK_NOTHROW(check_plane_wave(kWave));
}

TEST_CASE("expansion coefficients rebuild the incident field") {
    const Real k0 = 1.7;
    const int N = 30;
    const PlaneWave pw{Vec3(0.6, 0.0, 0.8), Vec3(0.0, 1.0, 0.0), Complex(0.5, 0.2)};
    const WaveExpansion ex = plane_wave_expansion(pw, N);
    const Vec3 x(0.3, -0.4, 0.2);
    const HarmonicValues hv = harmonics_at(N, x);
    const Real r = x.norm();
    const BesselTable t = bessel_table(N, k0 * r);
    CVec3 E = CVec3::Zero();
    for (int n = 1; n <= N; ++n) {
        const Complex kr = k0 * r;
        for (int m = -n; m <= n; ++m) {
            const int i = harmonic_index(n, m);
            E += ex.A[i] * t.j[n] * hv.W[i];
            E += ex.B[i] * (-harmonic_lambda(n) * t.j[n] / kr * hv.x(n, m) - (t.j[n] / kr + t.dj[n]) * hv.V[i]);
        }
    }
    ProblemSetup s = make_setup(k0, 1.0, 1.0);
    CHECK((E - incident_E(pw, s, x)).norm() < 1e-12);
}

TEST_CASE("closed-form wave traces match surface projection") {
    for (Real w : {0.0, 0.5, 3.0}) {
        const ProblemSetup s = make_setup(w, 1.0, 1.0);
        const WaveTraces a = plane_wave_traces(kWave, s, 8), b = project_wave_traces(kWave, s, 8, 40, 80);
        Real err = 0.0;
        for (std::size_t i = 0; i < a.eV.size(); ++i) {
            for (auto pm : {&WaveTraces::eV, &WaveTraces::eW, &WaveTraces::en, &WaveTraces::hV, &WaveTraces::hW,
                            &WaveTraces::hn}) {
                err = std::max(err, std::abs((a.*pm)[i] - (b.*pm)[i]));
            }
        }
        CHECK(err < 1e-10);
    }
}

TEST_CASE("Mie coefficients obey the optical theorem for lossless media") {
    for (Real w : {0.3, 1.0, 4.0}) {
        const ProblemSetup s = make_setup(w, 1.3, 2.0);
        for (int n = 1; n <= 12; ++n) {
            const MieTCoefficients t = mie_t_coefficients(s, n);
            CHECK(std::abs(t.te.real() + std::norm(t.te)) < 1e-13);
            CHECK(std::abs(t.tm.real() + std::norm(t.tm)) < 1e-13);
        }
    }
    const ProblemSetup lossy = make_setup(1.0, Complex(1.3, 0.5), 1.0);
    for (int n = 1; n <= 5; ++n) CHECK(mie_t_coefficients(lossy, n).tm.real() + std::norm(mie_t_coefficients(lossy, n).tm) < 0.0);
    CHECK_THROWS_AS(mie_t_coefficients(lossy, 0), DomainError);
}

TEST_CASE("dfie matches Mie") {
    const std::vector<Vec3> pts = sample_points();
    for (Real w : {1e-6, 0.1, 1.0, 4.0}) {
        CAPTURE(w);
        const ProblemSetup s = make_setup(w, 1.3, 1.0, 30);
        const auto mie = mie_reference(kWave, s, pts);
        for (const char* name : {"dfie", "dfie-scaled"}) {
            if (w < 1e-3 && std::string(name) == "dfie-scaled") continue;
            const SolveResult r = solve(parse_formulation(name), kWave, s);
            CHECK(set_error(evaluate_field(r, pts), mie) < 1e-8);
            for (Real res : r.residuals) CHECK(res < 1e-13);
        }
    }
}

TEST_CASE("all formulations agree outside the sphere") {
    const std::vector<Vec3> pts = shell(2.0, 20);
    const ProblemSetup s = make_setup(1.0, 1.3, 1.0);
    const auto ref = evaluate_field(solve(parse_formulation("dfie"), kWave, s), pts);
    for (const Formulation& f : {parse_formulation("muller"), parse_formulation("cc", kI), parse_formulation("cc"),
                                 parse_formulation("decoupled-cc"), parse_formulation("dfie-h")}) {
        CAPTURE(f.label());
        CHECK(set_error(evaluate_field(solve(f, kWave, s), pts), ref) < 1e-10);
    }
}

TEST_CASE("metamaterial sphere: dfie matches Mie and satisfies Maxwell") {
    const ProblemSetup s = make_setup(1.0, Complex(-2.0, 1.0), Complex(-1.0, 1.0));
    const std::vector<Vec3> pts = sample_points();
    const SolveResult r = solve(parse_formulation("dfie"), kWave, s);
    CHECK(set_error(evaluate_field(r, pts), mie_reference(kWave, s, pts)) < 1e-8);
    const MaxwellReport m = maxwell_consistency(r, {Vec3(0.3, 1.1, 1.2), Vec3(0.1, -0.2, 0.4), Vec3(-2.0, 0.5, 0.1)});
    CHECK(m.curl_defect < 1e-6);
    CHECK(m.divergence_defect < 1e-6);
}

TEST_CASE("zero contrast scatters nothing") {
    const ProblemSetup s = make_setup(1.2, 1.0, 1.0);
    const std::vector<Vec3> out = shell(2.0, 10), in = shell(0.5, 10);
    for (const Formulation& f : {parse_formulation("dfie"), parse_formulation("dfie-scaled"), parse_formulation("muller"),
                                 parse_formulation("cc"), parse_formulation("cc", kI), parse_formulation("decoupled-cc")}) {
        CAPTURE(f.label());
        const SolveResult r = solve(f, kWave, s);
        for (const FieldSample& fs : evaluate_field(r, out)) {
            CHECK(fs.E.norm() < 1e-10);
            CHECK(fs.H.norm() < 1e-10);
        }
        for (const FieldSample& fs : evaluate_field(r, in)) {
            CHECK((fs.E - incident_E(kWave, s, fs.point)).norm() < 1e-10);
            CHECK((fs.H - incident_H(kWave, s, fs.point)).norm() < 1e-10);
        }
    }
}

TEST_CASE("scattered field radiates") {
    const SolveResult r = solve(parse_formulation("dfie"), kWave, make_setup(1.0, 1.3, 1.0));
    const Real r10 = silver_muller_residual(r, 10.0), r100 = silver_muller_residual(r, 100.0);
    CHECK(r100 < 0.02 * r10);
    CHECK(r100 < 1e-3);
}

TEST_CASE("field evaluation limits") {
    const ProblemSetup s = make_setup(1e-6, 1.3, 1.0);
    const SolveResult r = solve(parse_formulation("dfie"), kWave, s);
    CHECK_THROWS_AS(evaluate_field(r, {Vec3(0.0, 0.0, 1.0005)}), DomainError);
    CHECK_NOTHROW(evaluate_field(r, {Vec3(0.0, 0.0, 1.002)}));
    const SolveResult m = solve(parse_formulation("muller"), kWave, s);
    CHECK_THROWS_AS(evaluate_field(m, {Vec3(0.0, 0.0, 2.0)}), UnsupportedError);
    CHECK_THROWS_AS(solve(parse_formulation("muller"), kWave, make_setup(0.0, 1.3, 1.0)), UnsupportedError);
    const SolveResult z = solve(parse_formulation("dfie"), kWave, make_setup(0.0, 1.3, 1.0));
    CHECK(set_error(evaluate_field(z, sample_points()), mie_reference(kWave, make_setup(0.0, 1.3, 1.0), sample_points())) < 1e-10);
}

TEST_CASE("double-negative sphere: Mie series is finite and dfie agrees") {
    const ProblemSetup s = make_setup(2.0, Complex(-3.0, 1.0), Complex(-2.0, 0.5));
    for (int n = 1; n <= 20; ++n) {
        const MieTCoefficients t = mie_t_coefficients(s, n);
        CHECK(std::isfinite(std::abs(t.te)));
        CHECK(std::isfinite(std::abs(t.tm)));
    }
    const std::vector<Vec3> pts = sample_points();
    CHECK(set_error(evaluate_field(solve(parse_formulation("dfie"), kWave, s), pts), mie_reference(kWave, s, pts)) <
          1e-8);
}
