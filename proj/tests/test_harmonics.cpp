#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dfie/harmonics.hpp"

using namespace dfie;

TEST_CASE("Y_00 and Y_10") {
    const HarmonicValues h = harmonics_at(1, Vec3(0.3, -0.2, 0.5));
    const Vec3 d = Vec3(0.3, -0.2, 0.5).normalized();
    CHECK(std::abs(h.y(0, 0) - 1.0 / std::sqrt(4.0 * kPi)) < 1e-15);
    CHECK(std::abs(h.y(1, 0) - std::sqrt(3.0 / (4.0 * kPi)) * d.z()) < 1e-15);
    // Condon-Shortley: Y_11 = -sqrt(3/8pi) (x + i y)
    CHECK(std::abs(h.y(1, 1) + std::sqrt(3.0 / (8.0 * kPi)) * Complex(d.x(), d.y())) < 1e-15);
    CHECK(std::abs(h.y(1, -1) + std::conj(h.y(1, 1))) < 1e-15);
}

TEST_CASE("orthonormality of Y, V, W on a product rule") {
    const int N = 7;
    const SphereRule rule = sphere_rule(N + 2, 2 * N + 4);
    const int count = harmonic_count(N);
    Eigen::MatrixXcd gy = Eigen::MatrixXcd::Zero(count, count), gv = gy, gw = gy, gvw = gy;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const HarmonicValues h = harmonics_at(N, rule.points[q]);
        const Real w = rule.weights[q];
        for (int a = 0; a < count; ++a) {
            for (int b = 0; b < count; ++b) {
                gy(a, b) += w * std::conj(h.Y[a]) * h.Y[b];
                gv(a, b) += w * h.V[a].dot(h.V[b]);
                gw(a, b) += w * h.W[a].dot(h.W[b]);
                gvw(a, b) += w * h.V[a].dot(h.W[b]);
            }
        }
    }
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(count, count);
    id(0, 0) = 0.0;  // no tangential fields at n = 0
    CHECK((gy - Eigen::MatrixXcd::Identity(count, count)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((gv - id).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((gw - id).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(gvw.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("tangential fields are tangential and W = rhat x V") {
    const Vec3 d(-0.4, 0.7, 0.1);
    const HarmonicValues h = harmonics_at(6, d);
    const CVec3 r = d.normalized().cast<Complex>();
    for (int i = 1; i < harmonic_count(6); ++i) {
        CHECK(std::abs(dot(r, h.V[i])) < 1e-14);
        CHECK(std::abs(dot(r, h.W[i])) < 1e-14);
        CHECK((cross(r, h.V[i]) - h.W[i]).norm() < 1e-14);
    }
}

TEST_CASE("poles are regular") {
    for (Real z : {1.0, -1.0}) {
        const HarmonicValues h = harmonics_at(5, Vec3(0.0, 0.0, z));
        for (int i = 0; i < harmonic_count(5); ++i) {
            CHECK(std::isfinite(std::abs(h.Y[i])));
            CHECK(h.V[i].allFinite());
        }
    }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const QuadratureRule g = gauss_legendre(6);
    Real s = 0.0, s10 = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        s += g.weights[i];
        s10 += g.weights[i] * std::pow(g.nodes[i], 10);
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-14));
}
