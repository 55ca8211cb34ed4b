#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dfie/errors.hpp"
#include "dfie/media.hpp"

using namespace dfie;

TEST_CASE("wavenumber branch") {
    CHECK(std::abs(wavenumber(2.0, Medium{}) - 2.0) == 0.0);
    const Complex k = wavenumber(1.0, Medium{Complex(-2.0, 1.0), Complex(-1.0, 1.0)});
    CHECK(k.real() == doctest::Approx(-1.4426).epsilon(1e-4));
    CHECK(k.imag() == doctest::Approx(1.0398).epsilon(1e-4));
    CHECK(std::abs(k * k - Complex(1.0, -3.0)) < 1e-14);
    CHECK(std::abs(wavenumber(0.0, Medium{Complex(-2.0, 1.0), Complex(-1.0, 1.0)})) == 0.0);
    CHECK(wavenumber(3.0, Medium{Complex(0.5, 0.3), Complex(2.0, 0.1)}).imag() >= 0.0);
}

TEST_CASE("passivity") {
    CHECK(is_passive(1.3));
    CHECK(is_passive(Complex(-2.0, 1.0)));
    CHECK_FALSE(is_passive(-1.0));
    CHECK_FALSE(is_passive(0.0));
    CHECK_FALSE(is_passive(Complex(-2.0, -1.0)));
    CHECK_FALSE(is_passive(Complex(NAN, 1.0)));
    CHECK_THROWS_AS(wavenumber(1.0, Medium{Complex(-2.0, -1.0), 1.0}), InvalidMaterialError);
}

TEST_CASE("setup validation") {
    ProblemSetup s;
    s.omega = 1.0;
    s.interior = {1.3, 1.0};
    CHECK_NOTHROW(validate_setup(s));
    s.interior = {Complex(-0.3249, 0.6898), Complex(1.589, 0.842)};
    CHECK_NOTHROW(validate_setup(s));
    s.interior = {Complex(-2.0, -1.0), 1.0};
    CHECK_THROWS_AS(validate_setup(s), InvalidMaterialError);
    try {
        validate_setup(s);
    } catch (const InvalidMaterialError& e) {
        CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
    }
    s.interior = {1.3, 1.0};
    s.omega = -1.0;
    CHECK_THROWS_AS(validate_setup(s), InvalidMaterialError);
    s.omega = 1.0;
    s.n_max_override = 0;
    CHECK_THROWS_AS(validate_setup(s), InvalidMaterialError);
}

TEST_CASE("default truncation") {
    CHECK(default_n_max(0.0, Medium{}, Medium{}) == 12);
    CHECK(default_n_max(10.0, Medium{}, Medium{1.3, 1.0}) == 12 + static_cast<int>(std::ceil(10.0 * std::sqrt(1.3))));
    ProblemSetup s;
    s.n_max_override = 30;
    CHECK(validate_setup(s).n_max() == 30);
}

TEST_CASE("dual setup swaps epsilon and mu") {
    ProblemSetup s;
    s.omega = 0.4;
    s.exterior = {2.0, 3.0};
    s.interior = {Complex(1.0, 0.5), Complex(4.0, 0.0)};
    const ProblemSetup d = dual_setup(s);
    CHECK(d.omega == s.omega);
    CHECK(d.exterior.epsilon == s.exterior.mu);
    CHECK(d.interior.mu == s.interior.epsilon);
    CHECK(std::abs(d.k() - s.k()) < 1e-15);
}
