#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dfie/errors.hpp"
#include "dfie/formulations.hpp"
#include "dfie/oracle.hpp"

#include <map>

using namespace dfie;

namespace {

// Symbols and jump constants recovered by off-surface quadrature.
class OracleTraces : public TraceProvider {
public:
    SymbolBlock pv(TraceOp op, int n, Complex k) const override { return lookup(n, k).at(op).average(); }
    Real jump(TraceOp op) const override {
        const SymbolBlock j = lookup(1, 1.0).at(op).jump();
        return std::round(2.0 * j(0, 0).real()) / 2.0;
    }

private:
    const std::map<TraceOp, OracleSymbol>& lookup(int n, Complex k) const {
        const auto key = std::make_tuple(n, k.real(), k.imag());
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, oracle_all(n, std::min(n, 1), k)).first;
        return it->second;
    }
    mutable std::map<std::tuple<int, Real, Real>, std::map<TraceOp, OracleSymbol>> cache_;
};

ProblemSetup make_setup(Real omega, Complex eps, Complex mu) {
    ProblemSetup s;
    s.omega = omega;
    s.interior = {eps, mu};
    return s;
}

Real offdiag(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd d = m;
    d.diagonal().setZero();
    return d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

TEST_CASE("formulation names") {
    CHECK(parse_formulation("dfie").kind == FormulationKind::Dfie);
    CHECK(parse_formulation("decoupled-cc").name() == "decoupled-cc");
    CHECK(parse_formulation("cc", Complex(0.0, 1.0)).label() == "cc(eta=0+1i)");
    CHECK(parse_formulation("muller", Complex(0.0, 1.0)).eta == Complex(0.0));
    CHECK_THROWS_AS(parse_formulation("pmchwt"), Error);
    CHECK(parse_formulation("dfie").defined_at_zero_frequency());
    CHECK_FALSE(parse_formulation("dfie-scaled").defined_at_zero_frequency());
    CHECK_FALSE(parse_formulation("cc").defined_at_zero_frequency());
}

TEST_CASE("block shapes") {
    const ProblemSetup s = make_setup(1.0, 1.3, 1.0);
    CHECK(assemble_dfie_E(0, s).matrix.rows() == 2);
    CHECK(assemble_dfie_E(3, s).matrix.rows() == 6);
    CHECK(assemble_dfie_E(3, s).unknowns.size() == 6);
    CHECK(assemble_muller(0, s).matrix.size() == 0);
    CHECK(assemble_muller(2, s).matrix.rows() == 4);
    CHECK(assemble_charge_current(0, s, 0.0).matrix.rows() == 2);
    CHECK(assemble_charge_current(2, s, 0.0).matrix.rows() == 6);
    CHECK(assemble_blocks(parse_formulation("decoupled-cc"), 2, s).size() == 3);
    CHECK(assemble_blocks(parse_formulation("decoupled-cc"), 0, s).size() == 2);
}

TEST_CASE("assembly from oracle symbols reproduces the closed-form blocks") {
    const OracleTraces oracle;
    for (const ProblemSetup& s : {make_setup(1.0, 1.3, 1.0), make_setup(0.8, Complex(-2.0, 1.0), Complex(-1.0, 1.0))}) {
        for (int n = 0; n <= 2; ++n) {
            CAPTURE(n);
            CHECK((assemble_dfie_E(n, s, oracle).matrix - assemble_dfie_E(n, s).matrix).cwiseAbs().maxCoeff() < 1e-6);
            CHECK((assemble_charge_current(n, s, kI, oracle).matrix - assemble_charge_current(n, s, kI).matrix)
                      .cwiseAbs()
                      .maxCoeff() < 1e-6);
            if (n > 0) {
                CHECK((assemble_muller(n, s, oracle).matrix - assemble_muller(n, s).matrix).cwiseAbs().maxCoeff() <
                      1e-6);
            }
            const ScalarSystems a = assemble_decoupled_cc_scalars(n, s, oracle), b = assemble_decoupled_cc_scalars(n, s);
            CHECK((a.phi.matrix - b.phi.matrix).cwiseAbs().maxCoeff() < 1e-6);
            CHECK((a.psi.matrix - b.psi.matrix).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
    for (TraceOp op : kAllTraceOps) CHECK(oracle.jump(op) == jump_constant(op));
}

TEST_CASE("zero contrast gives diagonal blocks") {
    const ProblemSetup s = make_setup(0.7, 1.0, 1.0);
    for (const char* name : {"dfie", "dfie-h", "dfie-scaled", "muller", "cc", "decoupled-cc"}) {
        for (int n = 0; n <= 6; ++n) {
            for (const ModeBlock& b : assemble_blocks(parse_formulation(name), n, s)) {
                CAPTURE(name);
                CAPTURE(n);
                CHECK(offdiag(b.matrix) < 1e-14);
            }
        }
    }
}

TEST_CASE("dfie-h is the E assembly of the dual media") {
    const ProblemSetup s = make_setup(1.3, Complex(2.0, 0.4), Complex(1.5, 0.2));
    for (int n = 0; n <= 3; ++n) {
        CHECK((assemble_dfie_H(n, s).matrix - assemble_dfie_E(n, dual_setup(s)).matrix).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("scaled block is a diagonal similarity of the unscaled one") {
    const ProblemSetup s = make_setup(8.0, 1.5, 1.0);
    for (int n = 0; n <= 10; ++n) {
        const ModeBlock sc = assemble_dfie_scaled(n, s);
        const Eigen::MatrixXcd expect =
            sc.row_scale.asDiagonal() * assemble_dfie_E(n, s).matrix * sc.col_scale.asDiagonal();
        CHECK((sc.matrix - expect).cwiseAbs().maxCoeff() <= 1e-13 * expect.cwiseAbs().maxCoeff());
    }
    CHECK_THROWS_AS(assemble_dfie_scaled(1, make_setup(0.0, 1.5, 1.0)), DomainError);
}

TEST_CASE("current formulations are unsupported at zero frequency") {
    const ProblemSetup s = make_setup(0.0, 1.3, 1.0);
    CHECK_THROWS_AS(assemble_muller(1, s), UnsupportedError);
    CHECK_THROWS_AS(assemble_charge_current(1, s, 0.0), UnsupportedError);
    CHECK_NOTHROW(assemble_dfie_E(1, s));
    CHECK(condition_number(parse_formulation("dfie"), s).condition < 10.0);
}

TEST_CASE("dfie blocks approach the limit block like 1/n") {
    const ProblemSetup s = make_setup(1.0, 1.3, 1.0);
    auto dev = [&](int n) { return (assemble_dfie_E(n, s).matrix - dfie_limit_block(n, s)).cwiseAbs().maxCoeff(); };
    for (int n : {10, 20, 40, 80}) CHECK(dev(n) * n < 0.2);
    CHECK(dev(80) / dev(40) == doctest::Approx(0.5).epsilon(0.05));
    // Monotone beyond the turning point n >= 2 max(|k0|, |k|) + 4.
    const int start = static_cast<int>(std::ceil(2.0 * std::abs(s.k()))) + 4;
    for (int n = start; n < 60; ++n) CHECK(dev(n + 1) < dev(n));
}

TEST_CASE("dfie condition is flat at low frequency") {
    Real lo = 1e300, hi = 0.0;
    for (Real w : {1e-2, 1e-4, 1e-6, 1e-8}) {
        ProblemSetup s = make_setup(w, 1.3, 1.0);
        s.n_max_override = 30;
        const Real c = condition_number(parse_formulation("dfie"), s).condition;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    CHECK(hi / lo < 2.0);
}

TEST_CASE("condition report of a staged formulation is the worst stage") {
    const ProblemSetup s = make_setup(2.0, Complex(-0.3249, 0.6898), Complex(1.589, 0.842));
    const ConditionReport all = condition_number(parse_formulation("decoupled-cc"), s);
    const ConditionReport mu = condition_number(parse_formulation("muller"), s);
    CHECK(all.condition >= mu.condition);
    CHECK(all.n_max == s.n_max());
    CHECK(all.worst_n >= 0);
    CHECK(all.worst_n <= all.n_max);
}

TEST_CASE("dfie stays invertible for passive materials") {
    const Complex materials[][2] = {{1.3, 1.0},
                                    {Complex(-2.0, 1.0), Complex(-1.0, 1.0)},
                                    {Complex(-0.3249, 0.6898), Complex(1.589, 0.842)},
                                    {Complex(-1.0, 1.0), 1.0},
                                    {Complex(1.0, 1.0), 1.0},
                                    {Complex(-3.0, 1.0), Complex(-2.0, 0.5)},
                                    {4.0, 2.0}};
    for (const auto& m : materials) {
        for (int i = 0; i <= 40; ++i) {
            const ProblemSetup s = make_setup(0.25 * i, m[0], m[1]);
            CHECK(condition_number(parse_formulation("dfie"), s).sigma_min > 1e-8);
        }
    }
}
