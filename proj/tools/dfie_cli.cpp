// Command-line driver: sweep, resmap, solve, oracle, block-dump.

#include "dfie/errors.hpp"
#include "dfie/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

// Values given on the command line, keyed like the configuration file.
struct Overrides {
    std::map<std::string, std::string> values;
    std::string config;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }

    dfie::Config merged() const {
        dfie::Config c = config.empty() ? dfie::Config{} : dfie::load_config(config);
        for (const auto& [k, v] : values) c[k] = v;
        return c;
    }
};

void add_common(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config, "key = value configuration file");
    o.add(app, "--formulation", "formulation",
          "dfie | dfie-scaled | dfie-h | muller | cc | decoupled-cc (sweep: comma list)");
    o.add(app, "--eps-re", "eps_re", "interior permittivity, real part");
    o.add(app, "--eps-im", "eps_im", "interior permittivity, imaginary part");
    o.add(app, "--mu-re", "mu_re", "interior permeability, real part");
    o.add(app, "--mu-im", "mu_im", "interior permeability, imaginary part");
    o.add(app, "--eta-re", "eta_re", "charge-current coupling eta, real part");
    o.add(app, "--eta-im", "eta_im", "charge-current coupling eta, imaginary part");
    o.add(app, "--nmax", "nmax", "highest retained degree");
    o.add(app, "--out", "out", "output CSV path (default stdout)");
}

template <typename Write>
void emit(const std::string& path, Write write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw dfie::Error("cannot open output file '" + path + "'");
    write(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral workbench for dielectric-sphere integral equations"};
    app.require_subcommand(1);

    Overrides sweep_o, resmap_o, solve_o, dump_o;

    CLI::App* sweep = app.add_subcommand("sweep", "condition numbers over a linear omega grid");
    add_common(sweep, sweep_o);
    sweep_o.add(sweep, "--omega-min", "omega_min", "first frequency");
    sweep_o.add(sweep, "--omega-max", "omega_max", "last frequency");
    sweep_o.add(sweep, "--omega-count", "omega_count", "number of frequencies (>= 2)");

    CLI::App* resmap = app.add_subcommand("resmap", "scan (Re eps, Re mu) cells for condition blow-up");
    resmap->add_option("--config", resmap_o.config, "key = value configuration file");
    resmap_o.add(resmap, "--formulation", "formulation", "formulation to scan");
    resmap_o.add(resmap, "--eta-re", "eta_re", "charge-current coupling eta, real part");
    resmap_o.add(resmap, "--eta-im", "eta_im", "charge-current coupling eta, imaginary part");
    resmap_o.add(resmap, "--omega-min", "omega_min", "lowest frequency searched");
    resmap_o.add(resmap, "--omega-max", "omega_max", "highest frequency searched");
    resmap_o.add(resmap, "--omega-count", "omega_count", "coarse frequency grid size");
    resmap_o.add(resmap, "--nmax", "nmax", "highest retained degree");
    resmap_o.add(resmap, "--out", "out", "output CSV path (default stdout)");

    CLI::App* solve = app.add_subcommand("solve", "plane-wave scattering at given points, compared with Mie");
    add_common(solve, solve_o);
    solve_o.add(solve, "--omega", "omega", "frequency");
    solve_o.add(solve, "--omega-min", "omega", "frequency (alias of --omega)");
    solve_o.add(solve, "--points", "points", "point file, one 'x y z' per line");

    int on = 1, om = 0;
    double kre = 1.0, kim = 0.0;
    std::string oracle_out;
    CLI::App* oracle = app.add_subcommand("oracle", "closed-form symbols against the quadrature oracle");
    oracle->add_option("--n", on, "degree")->check(CLI::Range(0, 40));
    oracle->add_option("--m", om, "order, |m| <= n");
    oracle->add_option("--k-re", kre, "wavenumber, real part");
    oracle->add_option("--k-im", kim, "wavenumber, imaginary part");
    oracle->add_option("--out", oracle_out, "output CSV path (default stdout)");

    CLI::App* dump = app.add_subcommand("block-dump", "matrix entries of every per-degree block");
    add_common(dump, dump_o);
    dump_o.add(dump, "--omega", "omega", "frequency");
    dump_o.add(dump, "--omega-min", "omega", "frequency (alias of --omega)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            const dfie::SweepSpec spec = dfie::sweep_spec_from_config(sweep_o.merged());
            const auto rows = dfie::run_sweep(spec);
            emit(spec.out, [&](std::ostream& s) { dfie::write_sweep_csv(s, spec, rows); });
        } else if (*resmap) {
            const dfie::ResonanceMapSpec spec = dfie::resonance_spec_from_config(resmap_o.merged());
            const auto cells = dfie::run_resonance_map(spec);
            emit(spec.out, [&](std::ostream& s) { dfie::write_resonance_csv(s, spec, cells); });
        } else if (*solve) {
            const dfie::SolveSpec spec = dfie::solve_spec_from_config(solve_o.merged());
            if (spec.points.empty()) throw dfie::Error("solve needs a non-empty point file (--points)");
            const auto report = dfie::run_solve(spec);
            emit(spec.out, [&](std::ostream& s) { dfie::write_solve_csv(s, spec, report); });
        } else if (*oracle) {
            if (om < -on || om > on) throw dfie::DomainError("order m must satisfy |m| <= n");
            emit(oracle_out, [&](std::ostream& s) { dfie::write_oracle_dump(s, on, om, dfie::Complex(kre, kim)); });
        } else if (*dump) {
            const dfie::SolveSpec spec = dfie::solve_spec_from_config(dump_o.merged());
            emit(spec.out, [&](std::ostream& s) { dfie::write_block_dump(s, spec.formulation, spec.setup); });
        }
    } catch (const dfie::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
