#include "dfie/sweep.hpp"

#include "dfie/errors.hpp"
#include "dfie/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace dfie {

namespace {

constexpr Real kNearSingular = 1e-13;

Real parse_real(const Config& c, const std::string& key, Real fallback) {
    const auto it = c.find(key);
    if (it == c.end()) return fallback;
    std::size_t used = 0;
    Real v = 0.0;
    try {
        v = std::stod(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != it->second.size() || !std::isfinite(v)) {
        throw Error("key '" + key + "': expected a finite number, got '" + it->second + "'");
    }
    return v;
}

int parse_int(const Config& c, const std::string& key, int fallback) {
    const Real v = parse_real(c, key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw Error("key '" + key + "': expected an integer");
    return static_cast<int>(v);
}

std::optional<int> parse_nmax(const Config& c) {
    if (!c.count("nmax")) return std::nullopt;
    const int n = parse_int(c, "nmax", 0);
    if (n < 1) throw Error("nmax must be >= 1");
    return n;
}

Complex parse_complex(const Config& c, const std::string& base, Complex fallback) {
    return {parse_real(c, base + "_re", fallback.real()), parse_real(c, base + "_im", fallback.imag())};
}

void check_keys(const Config& c, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : c) {
        if (!allowed.count(key)) throw Error("unknown configuration key '" + key + "'");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

// Formulation list plus the eta rule: eta is given exactly when cc is selected.
std::vector<Formulation> parse_formulations(const Config& c, const std::string& fallback) {
    const bool has_eta = c.count("eta_re") || c.count("eta_im");
    const Complex eta = parse_complex(c, "eta", 0.0);
    const auto it = c.find("formulation");
    std::vector<Formulation> out;
    for (const std::string& name : split_list(it == c.end() ? fallback : it->second)) {
        out.push_back(parse_formulation(name, eta));
    }
    if (out.empty()) throw Error("no formulation selected");
    const bool has_cc = std::any_of(out.begin(), out.end(),
                                    [](const Formulation& f) { return f.kind == FormulationKind::ChargeCurrent; });
    if (has_cc && !has_eta) throw Error("formulation cc needs eta (eta_re / eta_im)");
    if (!has_cc && has_eta) throw Error("eta is only meaningful for formulation cc");
    return out;
}

Medium parse_medium(const Config& c, const std::string& eps, const std::string& mu, Medium fallback) {
    return {parse_complex(c, eps, fallback.epsilon), parse_complex(c, mu, fallback.mu)};
}

const std::set<std::string> kMaterialKeys{"eps_re", "eps_im", "mu_re", "mu_im", "eps0_re", "eps0_im",
                                          "mu0_re", "mu0_im"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<const char*> extra) {
    for (const char* k : extra) base.insert(k);
    return base;
}

std::string complex_text(Complex z) { return format_real(z.real()) + (z.imag() < 0 ? "" : "+") + format_real(z.imag()) + "i"; }

void echo_header(std::ostream& out, const std::string& command) {
    out << "# " << kArtifactVersion << '\n' << "# command = " << command << '\n';
}

void echo_media(std::ostream& out, const Medium& ext, const Medium& in) {
    out << "# eps0 = " << complex_text(ext.epsilon) << "\n# mu0 = " << complex_text(ext.mu)
        << "\n# eps = " << complex_text(in.epsilon) << "\n# mu = " << complex_text(in.mu) << '\n';
}

std::string nmax_text(const std::optional<int>& n) { return n ? std::to_string(*n) : std::string("default"); }

bool near_singular(const ConditionReport& r) { return !(r.sigma_min >= kNearSingular * r.sigma_max); }

}  // namespace

std::vector<Real> omega_grid(Real omega_min, Real omega_max, int count) {
    if (count < 2) throw DomainError("omega grid needs at least two points");
    std::vector<Real> g(count);
    for (int i = 0; i < count; ++i) {
        g[i] = i == count - 1 ? omega_max : omega_min + i * (omega_max - omega_min) / (count - 1);
    }
    return g;
}

SweepSpec sweep_spec_from_config(const Config& c) {
    check_keys(c, with(kMaterialKeys, {"formulation", "eta_re", "eta_im", "omega_min", "omega_max", "omega_count",
                                       "nmax", "out"}));
    SweepSpec s;
    s.formulations = parse_formulations(c, "dfie");
    s.omega_min = parse_real(c, "omega_min", s.omega_min);
    s.omega_max = parse_real(c, "omega_max", s.omega_max);
    s.omega_count = parse_int(c, "omega_count", s.omega_count);
    s.exterior = parse_medium(c, "eps0", "mu0", s.exterior);
    s.interior = parse_medium(c, "eps", "mu", s.interior);
    s.n_max = parse_nmax(c);
    if (c.count("out")) s.out = c.at("out");
    check_sweep_spec(s);
    return s;
}

void check_sweep_spec(const SweepSpec& s) {
    if (s.formulations.empty()) throw DomainError("no formulation selected");
    if (!(s.omega_min >= 0.0)) throw DomainError("omega_min must be >= 0");
    if (!(s.omega_max >= s.omega_min)) throw DomainError("omega_max must be >= omega_min");
    if (s.omega_count < 2) throw DomainError("omega_count must be >= 2");
    check_passive(s.exterior, "exterior ");
    check_passive(s.interior, "interior ");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    check_sweep_spec(spec);
    const std::vector<Real> grid = omega_grid(spec.omega_min, spec.omega_max, spec.omega_count);
    std::vector<SweepRow> rows;
    for (const Formulation& f : spec.formulations) {
        for (Real w : grid) {
            SweepRow row{f, w, true, {}, ""};
            if (w == 0.0 && !f.defined_at_zero_frequency()) {
                row.supported = false;
                row.note = "unsupported";
            } else {
                ProblemSetup setup{w, spec.exterior, spec.interior, spec.n_max};
                row.report = condition_number(f, setup);
                if (near_singular(row.report)) row.note = "near-singular";
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    echo_header(out, "sweep");
    out << "# formulation =";
    for (const Formulation& f : spec.formulations) out << ' ' << f.label();
    out << "\n# omega_min = " << format_real(spec.omega_min) << "\n# omega_max = " << format_real(spec.omega_max)
        << "\n# omega_count = " << spec.omega_count << "\n# nmax = " << nmax_text(spec.n_max) << '\n';
    echo_media(out, spec.exterior, spec.interior);
    out << "formulation,eta_re,eta_im,omega,status,condition,sigma_max,sigma_min,worst_n,n_max\n";
    for (const SweepRow& r : rows) {
        out << r.formulation.name() << ',' << format_real(r.formulation.eta.real()) << ','
            << format_real(r.formulation.eta.imag()) << ',' << format_real(r.omega) << ',';
        if (!r.supported) {
            out << "unsupported,,,,,\n";
            continue;
        }
        out << (r.note.empty() ? "ok" : r.note) << ',' << format_real(r.report.condition) << ','
            << format_real(r.report.sigma_max) << ',' << format_real(r.report.sigma_min) << ',' << r.report.worst_n
            << ',' << r.report.n_max << '\n';
    }
}

ResonanceMapSpec resonance_spec_from_config(const Config& c) {
    check_keys(c, {"formulation", "eta_re", "eta_im", "re_eps_min", "re_eps_max", "re_eps_count", "re_mu_min",
                   "re_mu_max", "re_mu_count", "im_max", "im_count", "omega_min", "omega_max", "omega_count",
                   "threshold", "refine_rounds", "refine_count", "polish_evals", "nmax", "out"});
    ResonanceMapSpec s;
    const std::vector<Formulation> fs = parse_formulations(c, "decoupled-cc");
    if (fs.size() != 1) throw Error("resmap takes exactly one formulation");
    s.formulation = fs.front();
    s.re_eps_min = parse_real(c, "re_eps_min", s.re_eps_min);
    s.re_eps_max = parse_real(c, "re_eps_max", s.re_eps_max);
    s.re_eps_count = parse_int(c, "re_eps_count", s.re_eps_count);
    s.re_mu_min = parse_real(c, "re_mu_min", s.re_mu_min);
    s.re_mu_max = parse_real(c, "re_mu_max", s.re_mu_max);
    s.re_mu_count = parse_int(c, "re_mu_count", s.re_mu_count);
    s.im_max = parse_real(c, "im_max", s.im_max);
    s.im_count = parse_int(c, "im_count", s.im_count);
    s.omega_min = parse_real(c, "omega_min", s.omega_min);
    s.omega_max = parse_real(c, "omega_max", s.omega_max);
    s.omega_count = parse_int(c, "omega_count", s.omega_count);
    s.threshold = parse_real(c, "threshold", s.threshold);
    s.refine_rounds = parse_int(c, "refine_rounds", s.refine_rounds);
    s.refine_count = parse_int(c, "refine_count", s.refine_count);
    s.polish_evals = parse_int(c, "polish_evals", s.polish_evals);
    s.n_max = parse_nmax(c);
    if (c.count("out")) s.out = c.at("out");
    check_resonance_spec(s);
    return s;
}

void check_resonance_spec(const ResonanceMapSpec& s) {
    if (s.re_eps_count < 1 || s.re_mu_count < 1) throw DomainError("real-part grids need at least one point");
    if (s.re_eps_max < s.re_eps_min || s.re_mu_max < s.re_mu_min) throw DomainError("empty real-part range");
    if (!(s.im_max > 0.0)) throw DomainError("im_max must be > 0 (materials stay lossy)");
    if (s.im_count < 1) throw DomainError("im_count must be >= 1");
    if (!(s.omega_min >= 0.0) || s.omega_max < s.omega_min) throw DomainError("invalid omega range");
    if (s.omega_count < 2) throw DomainError("omega_count must be >= 2");
    if (!(s.threshold > 0.0)) throw DomainError("threshold must be > 0");
    if (s.refine_rounds < 0) throw DomainError("refine_rounds must be >= 0");
    if (s.refine_count < 2) throw DomainError("refine_count must be >= 2");
    if (s.polish_evals < 0) throw DomainError("polish_evals must be >= 0");
}

namespace {

using Point3 = std::array<Real, 3>;

// Nelder-Mead maximization of f from x0 with initial steps `step`; stops after
// `budget` evaluations. Infinite values end the search immediately.
void nelder_mead_max(const std::function<Real(const Point3&)>& f, Point3 x0, const Point3& step, int budget) {
    std::array<Point3, 4> x;
    std::array<Real, 4> v;
    int used = 0;
    auto eval = [&](const Point3& p) {
        ++used;
        return -f(p);
    };
    x[0] = x0;
    for (int i = 0; i < 3; ++i) {
        x[i + 1] = x0;
        x[i + 1][i] += step[i];
    }
    for (int i = 0; i < 4; ++i) v[i] = eval(x[i]);
    while (used < budget) {
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
        const auto xs = x;
        const auto vs = v;
        for (int i = 0; i < 4; ++i) {
            x[i] = xs[order[i]];
            v[i] = vs[order[i]];
        }
        if (std::isinf(v[0])) return;
        Point3 c{0.0, 0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            for (int d = 0; d < 3; ++d) c[d] += x[i][d] / 3.0;
        }
        auto along = [&](Real t) {
            Point3 r;
            for (int d = 0; d < 3; ++d) r[d] = c[d] + t * (x[3][d] - c[d]);
            return r;
        };
        const Point3 xr = along(-1.0);
        const Real vr = eval(xr);
        if (vr < v[0]) {
            const Point3 xe = along(-2.0);
            const Real ve = eval(xe);
            x[3] = ve < vr ? xe : xr;
            v[3] = std::min(ve, vr);
        } else if (vr < v[2]) {
            x[3] = xr;
            v[3] = vr;
        } else {
            const Point3 xc = along(0.5);
            const Real vc = eval(xc);
            if (vc < v[3]) {
                x[3] = xc;
                v[3] = vc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int d = 0; d < 3; ++d) x[i][d] = x[0][d] + 0.5 * (x[i][d] - x[0][d]);
                    v[i] = eval(x[i]);
                }
            }
        }
    }
}

}  // namespace

ResonanceCell scan_cell(const ResonanceMapSpec& spec, Real re_eps, Real re_mu) {
    ResonanceCell cell;
    cell.re_eps = re_eps;
    cell.re_mu = re_mu;
    cell.max_condition = -1.0;
    const Real omega_floor =
        spec.formulation.defined_at_zero_frequency() ? spec.omega_min : std::max(spec.omega_min, 1e-3);
    auto visit = [&](Real ie, Real im, Real w) -> Real {
        if (w == 0.0 && !spec.formulation.defined_at_zero_frequency()) return 0.0;
        const ProblemSetup setup{w, Medium{}, Medium{Complex(re_eps, ie), Complex(re_mu, im)}, spec.n_max};
        const ConditionReport r = condition_number(spec.formulation, setup);
        const Real c = near_singular(r) ? std::numeric_limits<Real>::infinity() : r.condition;
        if (c > cell.max_condition) {
            cell.max_condition = c;
            cell.im_eps = ie;
            cell.im_mu = im;
            cell.omega = w;
        }
        return c;
    };
    const std::vector<Real> omegas = omega_grid(spec.omega_min, spec.omega_max, spec.omega_count);
    Real d_im = spec.im_max / spec.im_count;
    Real d_w = (spec.omega_max - spec.omega_min) / (spec.omega_count - 1);
    for (int a = 1; a <= spec.im_count; ++a) {
        for (int b = 1; b <= spec.im_count; ++b) {
            for (Real w : omegas) visit(spec.im_max * a / spec.im_count, spec.im_max * b / spec.im_count, w);
        }
    }
    // Local refinement: a refine_count^3 grid over [best - d, best + d], clipped
    // to the search box, with d shrinking to the new grid spacing each round.
    const Real im_floor = 1e-3 * spec.im_max;
    for (int round = 0; round < spec.refine_rounds && std::isfinite(cell.max_condition); ++round) {
        const Real ie0 = cell.im_eps, im0 = cell.im_mu, w0 = cell.omega;
        const int q = spec.refine_count;
        for (int a = 0; a < q; ++a) {
            const Real ie = std::clamp(ie0 - d_im + 2.0 * d_im * a / (q - 1), im_floor, spec.im_max);
            for (int b = 0; b < q; ++b) {
                const Real im = std::clamp(im0 - d_im + 2.0 * d_im * b / (q - 1), im_floor, spec.im_max);
                for (int c = 0; c < q; ++c) {
                    visit(ie, im, std::clamp(w0 - d_w + 2.0 * d_w * c / (q - 1), omega_floor, spec.omega_max));
                }
            }
        }
        d_im *= 2.0 / (q - 1);
        d_w *= 2.0 / (q - 1);
    }
    if (spec.polish_evals > 0 && cell.max_condition >= 0.0 && std::isfinite(cell.max_condition)) {
        auto objective = [&](const Point3& p) -> Real {
            if (p[0] < im_floor || p[0] > spec.im_max || p[1] < im_floor || p[1] > spec.im_max || p[2] < omega_floor ||
                p[2] > spec.omega_max) {
                return 0.0;
            }
            return std::log(visit(p[0], p[1], p[2]));
        };
        const Point3 start{cell.im_eps, cell.im_mu, cell.omega};
        const Point3 step{cell.im_eps > 0.5 * spec.im_max ? -d_im : d_im, cell.im_mu > 0.5 * spec.im_max ? -d_im : d_im,
                          cell.omega > 0.5 * (spec.omega_min + spec.omega_max) ? -d_w : d_w};
        nelder_mead_max(objective, start, step, spec.polish_evals);
    }
    cell.blow_up = cell.max_condition > spec.threshold;
    return cell;
}

std::vector<ResonanceCell> run_resonance_map(const ResonanceMapSpec& spec) {
    check_resonance_spec(spec);
    auto axis = [](Real lo, Real hi, int n) {
        std::vector<Real> g(n, lo);
        for (int i = 1; i < n; ++i) g[i] = i == n - 1 ? hi : lo + i * (hi - lo) / (n - 1);
        return g;
    };
    std::vector<ResonanceCell> cells;
    for (Real re : axis(spec.re_eps_min, spec.re_eps_max, spec.re_eps_count)) {
        for (Real rm : axis(spec.re_mu_min, spec.re_mu_max, spec.re_mu_count)) cells.push_back(scan_cell(spec, re, rm));
    }
    return cells;
}

void write_resonance_csv(std::ostream& out, const ResonanceMapSpec& s, const std::vector<ResonanceCell>& cells) {
    echo_header(out, "resmap");
    out << "# formulation = " << s.formulation.label() << "\n# re_eps = [" << format_real(s.re_eps_min) << ", "
        << format_real(s.re_eps_max) << "] x " << s.re_eps_count << "\n# re_mu = [" << format_real(s.re_mu_min)
        << ", " << format_real(s.re_mu_max) << "] x " << s.re_mu_count << "\n# im_eps, im_mu in (0, "
        << format_real(s.im_max) << "], coarse grid k * im_max / " << s.im_count << ", k = 1.." << s.im_count
        << "\n# omega = [" << format_real(s.omega_min) << ", " << format_real(s.omega_max) << "] x " << s.omega_count
        << "\n# refinement = " << s.refine_rounds << " rounds of a " << s.refine_count
        << "^3 grid spanning one coarse spacing around the running maximum, spacing shrinking each round"
        << "\n# polish = Nelder-Mead ascent of log(condition) from the best point, " << s.polish_evals
        << " evaluations"
        << "\n# threshold = " << format_real(s.threshold) << "\n# nmax = " << nmax_text(s.n_max) << '\n';
    out << "re_eps,re_mu,max_condition,im_eps,im_mu,omega,blow_up\n";
    for (const ResonanceCell& c : cells) {
        out << format_real(c.re_eps) << ',' << format_real(c.re_mu) << ',' << format_real(c.max_condition) << ','
            << format_real(c.im_eps) << ',' << format_real(c.im_mu) << ',' << format_real(c.omega) << ','
            << (c.blow_up ? 1 : 0) << '\n';
    }
}

SolveSpec solve_spec_from_config(const Config& c) {
    check_keys(c, with(kMaterialKeys, {"formulation", "eta_re", "eta_im", "omega", "nmax", "points", "out"}));
    SolveSpec s;
    const std::vector<Formulation> fs = parse_formulations(c, "dfie");
    if (fs.size() != 1) throw Error("solve takes exactly one formulation");
    s.formulation = fs.front();
    s.setup.omega = parse_real(c, "omega", 1.0);
    s.setup.exterior = parse_medium(c, "eps0", "mu0", Medium{});
    s.setup.interior = parse_medium(c, "eps", "mu", Medium{Complex(1.3, 0.0), Complex(1.0, 0.0)});
    s.setup.n_max_override = parse_nmax(c);
    if (c.count("points")) s.points = load_points(c.at("points"));
    if (c.count("out")) s.out = c.at("out");
    return s;
}

SolveReport run_solve(const SolveSpec& spec) {
    SolveReport rep;
    const SolveResult result = solve(spec.formulation, spec.wave, spec.setup);
    rep.condition = condition_number(spec.formulation, result.setup);
    const std::vector<FieldSample> field = evaluate_field(result, spec.points);
    const std::vector<FieldSample> mie = mie_reference(spec.wave, result.setup, spec.points);
    Real max_e = 0.0, max_h = 0.0, se = 0.0, sh = 0.0, de = 0.0, dh = 0.0;
    for (const FieldSample& m : mie) {
        max_e = std::max(max_e, m.E.norm());
        max_h = std::max(max_h, m.H.norm());
    }
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
        SolveRow row{field[i], mie[i], 0.0, 0.0, 0.0};
        const Real ee = (field[i].E - mie[i].E).norm(), eh = (field[i].H - mie[i].H).norm();
        row.error_E = max_e > 0.0 ? ee / max_e : ee;
        row.error_H = max_h > 0.0 ? eh / max_h : eh;
        row.scattered = field[i].region == Region::Exterior
                            ? field[i].E.norm()
                            : (field[i].E - incident_E(spec.wave, result.setup, field[i].point)).norm();
        se += mie[i].E.squaredNorm();
        sh += mie[i].H.squaredNorm();
        de += ee * ee;
        dh += eh * eh;
        rep.rows.push_back(row);
    }
    rep.set_error_E = se > 0.0 ? std::sqrt(de / se) : std::sqrt(de);
    rep.set_error_H = sh > 0.0 ? std::sqrt(dh / sh) : std::sqrt(dh);
    return rep;
}

void write_solve_csv(std::ostream& out, const SolveSpec& spec, const SolveReport& rep) {
    echo_header(out, "solve");
    const ProblemSetup setup = validate_setup(spec.setup);
    out << "# formulation = " << spec.formulation.label() << "\n# omega = " << format_real(setup.omega)
        << "\n# nmax = " << setup.n_max() << '\n';
    echo_media(out, setup.exterior, setup.interior);
    out << "# incident = plane wave, direction (0, 0, 1), polarization (1, 0, 0), amplitude 1"
        << "\n# exterior fields are scattered fields, interior fields are total fields"
        << "\n# error_E, error_H = pointwise difference / max over the points of the Mie field norm"
        << "\n# set_error_E = " << format_real(rep.set_error_E) << "\n# set_error_H = " << format_real(rep.set_error_H)
        << "\n# condition = " << format_real(rep.condition.condition) << '\n';
    out << "x,y,z,region";
    for (const char* f : {"E", "H", "mie_E", "mie_H"}) {
        for (const char* c : {"x", "y", "z"}) out << ',' << f << c << "_re," << f << c << "_im";
    }
    out << ",error_E,error_H,scattered\n";
    for (const SolveRow& r : rep.rows) {
        for (int a = 0; a < 3; ++a) out << format_real(r.field.point(a)) << ',';
        out << (r.field.region == Region::Exterior ? "exterior" : "interior");
        for (const CVec3* v : {&r.field.E, &r.field.H, &r.mie.E, &r.mie.H}) {
            for (int a = 0; a < 3; ++a) out << ',' << format_real((*v)(a).real()) << ',' << format_real((*v)(a).imag());
        }
        out << ',' << format_real(r.error_E) << ',' << format_real(r.error_H) << ',' << format_real(r.scattered)
            << '\n';
    }
}

void write_block_dump(std::ostream& out, const Formulation& f, const ProblemSetup& setup_in) {
    const ProblemSetup setup = validate_setup(setup_in);
    echo_header(out, "block-dump");
    out << "# formulation = " << f.label() << "\n# omega = " << format_real(setup.omega)
        << "\n# nmax = " << setup.n_max() << '\n';
    echo_media(out, setup.exterior, setup.interior);
    out << "block,n,row,col,row_name,col_name,re,im\n";
    for (int n = 0; n <= setup.n_max(); ++n) {
        for (const ModeBlock& b : assemble_blocks(f, n, setup)) {
            for (int i = 0; i < b.matrix.rows(); ++i) {
                for (int j = 0; j < b.matrix.cols(); ++j) {
                    out << b.formulation << ',' << n << ',' << i << ',' << j << ',' << b.rows[i] << ','
                        << b.unknowns[j] << ',' << format_real(b.matrix(i, j).real()) << ','
                        << format_real(b.matrix(i, j).imag()) << '\n';
                }
            }
        }
    }
}

void write_oracle_dump(std::ostream& out, int n, int m, Complex k) {
    echo_header(out, "oracle");
    out << "# n = " << n << "\n# m = " << m << "\n# k = " << complex_text(k) << "\n# offsets =";
    for (Real h : default_oracle_offsets()) out << ' ' << format_real(h);
    out << "\nop,row,col,closed_re,closed_im,oracle_re,oracle_im,abs_diff,jump_constant,oracle_jump_re,"
           "oracle_jump_im\n";
    const auto oracle = oracle_all(n, m, k);
    for (TraceOp op : kAllTraceOps) {
        const auto it = oracle.find(op);
        if (it == oracle.end()) continue;
        const SymbolBlock closed = trace_symbol(op, n, k).block;
        const SymbolBlock avg = it->second.average(), jump = it->second.jump();
        for (int i = 0; i < closed.rows(); ++i) {
            for (int j = 0; j < closed.cols(); ++j) {
                out << to_string(op) << ',' << i << ',' << j << ',' << format_real(closed(i, j).real()) << ','
                    << format_real(closed(i, j).imag()) << ',' << format_real(avg(i, j).real()) << ','
                    << format_real(avg(i, j).imag()) << ',' << format_real(std::abs(closed(i, j) - avg(i, j)))
                    << ',' << format_real(i == j ? jump_constant(op) : 0.0) << ','
                    << format_real(jump(i, j).real()) << ',' << format_real(jump(i, j).imag()) << '\n';
            }
        }
    }
}

}  // namespace dfie
