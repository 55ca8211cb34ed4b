#pragma once
// Drivers behind the command-line tool: frequency sweeps of condition numbers,
// resonance-map scans, scattering solves against the Mie series, block and
// oracle dumps. All output is CSV with '#' metadata lines.

#include "dfie/formulations.hpp"
#include "dfie/scatter.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dfie {

inline constexpr const char* kArtifactVersion = "dfie-workbench 1.0.0";

/// Flat "key = value" configuration; '#' starts a comment.
using Config = std::map<std::string, std::string>;
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

/// Whitespace-separated "x y z" per line; blank lines and '#' lines are skipped.
/// Throws ParseError carrying the 1-based line number.
std::vector<Vec3> parse_points(std::istream& in);
std::vector<Vec3> load_points(const std::string& path);

struct SweepSpec {
    std::vector<Formulation> formulations{Formulation{}};
    Real omega_min = 0.0;
    Real omega_max = 10.0;
    int omega_count = 200;
    Medium exterior{};
    Medium interior{Complex(1.3, 0.0), Complex(1.0, 0.0)};
    std::optional<int> n_max;
    std::string out;
};

/// Recognized keys: formulation (comma list), eta_re, eta_im, eps_re, eps_im,
/// mu_re, mu_im, eps0_re, eps0_im, mu0_re, mu0_im, omega_min, omega_max,
/// omega_count, nmax, out. Throws Error on unknown keys or bad values.
SweepSpec sweep_spec_from_config(const Config& c);
void check_sweep_spec(const SweepSpec& spec);
/// Linear grid omega_min + i (omega_max - omega_min) / (count - 1).
std::vector<Real> omega_grid(Real omega_min, Real omega_max, int count);

struct SweepRow {
    Formulation formulation;
    Real omega = 0.0;
    bool supported = true;
    ConditionReport report;
    std::string note;  ///< "unsupported" or "near-singular" when applicable
};
/// Rows ordered by formulation, then omega.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

struct ResonanceMapSpec {
    Formulation formulation{FormulationKind::DecoupledCC};
    Real re_eps_min = -2.0, re_eps_max = 2.0;
    int re_eps_count = 21;
    Real re_mu_min = -2.0, re_mu_max = 2.0;
    int re_mu_count = 21;
    Real im_max = 1.0;  ///< Im eps, Im mu searched in (0, im_max]
    int im_count = 5;
    Real omega_min = 0.05, omega_max = 10.0;
    int omega_count = 20;
    Real threshold = 1e6;
    int refine_rounds = 2;
    int refine_count = 5;  ///< points per axis in each refinement round
    int polish_evals = 600;  ///< Nelder-Mead budget after refinement; 0 disables
    std::optional<int> n_max;
    std::string out;
};

/// Keys are the field names above plus formulation, eta_re, eta_im, nmax.
ResonanceMapSpec resonance_spec_from_config(const Config& c);
void check_resonance_spec(const ResonanceMapSpec& spec);

struct ResonanceCell {
    Real re_eps = 0.0, re_mu = 0.0;
    Real max_condition = 0.0;
    Real im_eps = 0.0, im_mu = 0.0, omega = 0.0;  ///< arg-max
    bool blow_up = false;
};
/// Per (Re eps, Re mu) cell: coarse grid over (Im eps, Im mu, omega), then
/// refine_rounds rounds of local refinement around the running maximum, then a
/// bounded Nelder-Mead ascent of log(condition) from the best point.
/// Near-singular blocks count as infinite condition.
ResonanceCell scan_cell(const ResonanceMapSpec& spec, Real re_eps, Real re_mu);
std::vector<ResonanceCell> run_resonance_map(const ResonanceMapSpec& spec);
void write_resonance_csv(std::ostream& out, const ResonanceMapSpec& spec, const std::vector<ResonanceCell>& cells);

struct SolveSpec {
    Formulation formulation{};
    ProblemSetup setup{};
    PlaneWave wave{Vec3(0.0, 0.0, 1.0), Vec3(1.0, 0.0, 0.0), 1.0};
    std::vector<Vec3> points;
    std::string out;
};
/// Keys: formulation, eta_*, eps_*, mu_*, eps0_*, mu0_*, omega, nmax, points, out.
SolveSpec solve_spec_from_config(const Config& c);

struct SolveRow {
    FieldSample field;
    FieldSample mie;
    Real error_E = 0.0;  ///< ||E - E_mie|| / max over the point set of ||E_mie||
    Real error_H = 0.0;
    Real scattered = 0.0;  ///< ||E - E_in|| inside, ||E|| outside
};
struct SolveReport {
    std::vector<SolveRow> rows;
    Real set_error_E = 0.0;  ///< l2 over the set of the difference / l2 of the Mie field
    Real set_error_H = 0.0;
    ConditionReport condition;
};
SolveReport run_solve(const SolveSpec& spec);
void write_solve_csv(std::ostream& out, const SolveSpec& spec, const SolveReport& report);

/// Matrix entries of every block for degrees 0..n_max.
void write_block_dump(std::ostream& out, const Formulation& f, const ProblemSetup& setup);

/// Closed-form symbols against the quadrature oracle for all trace operators.
void write_oracle_dump(std::ostream& out, int n, int m, Complex k);

/// Fixed 17-significant-digit formatting used in every CSV.
std::string format_real(Real x);

}  // namespace dfie
