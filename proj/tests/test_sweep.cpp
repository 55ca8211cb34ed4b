#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dfie/errors.hpp"
#include "dfie/sweep.hpp"

#include <sstream>

using namespace dfie;

namespace {

Config config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string sweep_csv(const SweepSpec& spec) {
    std::ostringstream out;
    write_sweep_csv(out, spec, run_sweep(spec));
    return out.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("config parsing") {
    const Config c = config("# comment\nformulation = dfie, muller  # trailing\n\n omega_count=5\n");
    CHECK(c.at("formulation") == "dfie, muller");
    CHECK(c.at("omega_count") == "5");
    CHECK_THROWS_AS(config("a = 1\nnot a pair\n"), ParseError);
    try {
        config("a = 1\nnot a pair\n");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(config("a = 1\na = 2\n"), ParseError);
}

TEST_CASE("point files") {
    std::istringstream good("# header\n1 2 3\n\n  -0.5\t0 2e-1 \n");
    const auto pts = parse_points(good);
    REQUIRE(pts.size() == 2);
    CHECK(pts[1](2) == doctest::Approx(0.2));
    for (const char* bad : {"1 2 3\n4 5\n", "1 2 3\n1 2 3 4\n", "1 2 3\nx y z\n"}) {
        std::istringstream in(bad);
        try {
            parse_points(in);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
        }
    }
}

TEST_CASE("sweep settings from config") {
    const SweepSpec s = sweep_spec_from_config(
        config("formulation = dfie, cc\neta_re = 0\neta_im = 1\neps_re = -2\neps_im = 1\nomega_count = 4\nnmax = 6\n"));
    REQUIRE(s.formulations.size() == 2);
    CHECK(s.formulations[1].eta == Complex(0.0, 1.0));
    CHECK(s.interior.epsilon == Complex(-2.0, 1.0));
    CHECK(s.n_max == 6);
    CHECK_THROWS_AS(sweep_spec_from_config(config("formulation = cc\n")), Error);
    CHECK_THROWS_AS(sweep_spec_from_config(config("eta_im = 1\n")), Error);
    CHECK_THROWS_AS(sweep_spec_from_config(config("omega_count = 1\n")), DomainError);
    CHECK_THROWS_AS(sweep_spec_from_config(config("omega_min = -1\n")), DomainError);
    CHECK_THROWS_AS(sweep_spec_from_config(config("omega_max = ten\n")), Error);
    CHECK_THROWS_AS(sweep_spec_from_config(config("colour = red\n")), Error);
    CHECK_THROWS_AS(sweep_spec_from_config(config("eps_re = -2\n")), InvalidMaterialError);
}

TEST_CASE("omega grid") {
    const auto g = omega_grid(0.05, 10.0, 200);
    CHECK(g.size() == 200);
    CHECK(g.front() == 0.05);
    CHECK(g.back() == 10.0);
    CHECK_THROWS_AS(omega_grid(0.0, 1.0, 1), DomainError);
}

TEST_CASE("sweep marks unsupported cells at omega = 0") {
    SweepSpec s;
    s.formulations = {parse_formulation("dfie"), parse_formulation("muller"), parse_formulation("cc")};
    s.omega_min = 0.0;
    s.omega_max = 2.0;
    s.omega_count = 3;
    s.n_max = 5;
    const auto rows = run_sweep(s);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].supported);
    CHECK_FALSE(rows[3].supported);
    CHECK(rows[3].note == "unsupported");
    CHECK_FALSE(rows[6].supported);
    CHECK(rows[4].supported);
    CHECK(rows[0].report.n_max == 5);
    const auto lines = data_lines(sweep_csv(s));
    CHECK(lines[0] == "formulation,eta_re,eta_im,omega,status,condition,sigma_max,sigma_min,worst_n,n_max");
    CHECK(lines[4] == "muller,0,0,0,unsupported,,,,,");
}

TEST_CASE("sweep output is deterministic and rows are independent") {
    SweepSpec s;
    s.formulations = {parse_formulation("dfie"), parse_formulation("decoupled-cc")};
    s.interior = {Complex(-0.3249, 0.6898), Complex(1.589, 0.842)};
    s.omega_min = 0.5;
    s.omega_max = 2.0;
    s.omega_count = 4;
    const std::string a = sweep_csv(s);
    CHECK(a == sweep_csv(s));
    CHECK(a.find("# eps = -0.32490000000000002+0.68979999999999997i") != std::string::npos);
    SweepSpec sub = s;
    sub.omega_min = 1.0;
    sub.omega_max = 1.5;
    sub.omega_count = 2;
    const auto full = data_lines(a), part = data_lines(sweep_csv(sub));
    CHECK(part[1] == full[2]);
    CHECK(part[2] == full[3]);
    CHECK(part[3] == full[6]);
}

TEST_CASE("numbers carry 17 significant digits") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(1.0) == "1");
    CHECK(std::stod(format_real(kPi)) == kPi);
}

TEST_CASE("resonance cells") {
    ResonanceMapSpec spec;
    spec.formulation = parse_formulation("dfie");
    spec.im_count = 2;
    spec.omega_min = 0.5;
    spec.omega_max = 5.0;
    spec.omega_count = 4;
    spec.refine_rounds = 1;
    spec.refine_count = 3;
    const ResonanceCell c = scan_cell(spec, 1.3, 1.0);
    CHECK_FALSE(c.blow_up);
    CHECK(c.max_condition > 1.0);
    CHECK(c.im_eps > 0.0);
    CHECK(c.im_mu > 0.0);
    CHECK(c.omega >= spec.omega_min);
    CHECK(c.omega <= spec.omega_max);
    spec.re_eps_min = -1.0;
    spec.re_eps_max = 1.0;
    spec.re_eps_count = 2;
    spec.re_mu_count = 1;
    spec.re_mu_min = spec.re_mu_max = 1.0;
    const auto cells = run_resonance_map(spec);
    REQUIRE(cells.size() == 2);
    for (const auto& cell : cells) CHECK_FALSE(cell.blow_up);
    std::ostringstream out;
    write_resonance_csv(out, spec, cells);
    CHECK(out.str().find("re_eps,re_mu,max_condition,im_eps,im_mu,omega,blow_up\n") != std::string::npos);
    spec.im_max = 0.0;
    CHECK_THROWS_AS(check_resonance_spec(spec), DomainError);
}

TEST_CASE("decoupled charge-current blows up for eps=-0.3249+0.6898i, mu=1.589+0.842i") {
    SweepSpec s;
    s.formulations = {parse_formulation("decoupled-cc"), parse_formulation("dfie")};
    s.interior = {Complex(-0.3249, 0.6898), Complex(1.589, 0.842)};
    s.omega_min = 0.05;
    s.omega_max = 10.0;
    s.omega_count = 200;
    const auto rows = run_sweep(s);
    Real worst_dcc = 0.0, worst_dfie = 0.0;
    for (const auto& r : rows) {
        Real& w = r.formulation.kind == FormulationKind::Dfie ? worst_dfie : worst_dcc;
        w = std::max(w, r.report.condition);
    }
    MESSAGE("decoupled-cc max condition " << worst_dcc << ", dfie max condition " << worst_dfie);
    CHECK(worst_dcc > 100.0 * worst_dfie);
}

TEST_CASE("solve report") {
    SolveSpec spec;
    spec.setup.omega = 1.0;
    spec.setup.interior = {1.3, 1.0};
    spec.setup.n_max_override = 30;
    spec.points = {Vec3(0.0, 0.0, 2.0), Vec3(1.0, 1.0, 1.0), Vec3(0.1, 0.2, 0.3)};
    const SolveReport rep = run_solve(spec);
    CHECK(rep.set_error_E < 1e-8);
    CHECK(rep.set_error_H < 1e-8);
    for (const auto& row : rep.rows) CHECK(row.error_E < 1e-8);
    spec.setup.interior = {1.0, 1.0};
    for (const auto& row : run_solve(spec).rows) CHECK(row.scattered < 1e-10);
    std::ostringstream a, b;
    write_solve_csv(a, spec, run_solve(spec));
    write_solve_csv(b, spec, run_solve(spec));
    CHECK(a.str() == b.str());
}

TEST_CASE("resonance map flags decoupled charge-current but not dfie") {
    ResonanceMapSpec spec;
    const ResonanceCell dcc = scan_cell(spec, -0.3249, 1.589);
    MESSAGE("decoupled-cc cell max condition " << dcc.max_condition << " at omega " << dcc.omega);
    CHECK(dcc.blow_up);
    CHECK(dcc.im_eps > 0.0);
    CHECK(dcc.im_mu > 0.0);
    spec.formulation = parse_formulation("dfie");
    const ResonanceCell dfie = scan_cell(spec, -0.3249, 1.589);
    MESSAGE("dfie cell max condition " << dfie.max_condition);
    CHECK_FALSE(dfie.blow_up);
}
