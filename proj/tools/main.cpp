// Command-line front end. Four subcommands:
//   spectrum      bound levels xi(eta, l, nr) by one of three routes
//   wavefunction  normalized electron distribution D(rho) for one state
//   observables   ground/first-excited gap, transition frequency, <r^2>
//   verify        built-in cross-validation suite
// Exit codes: 0 success, 1 usage error, 2 solver failure, 3 verification
// failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nanoshell/errors.hpp>
#include <nanoshell/exact.hpp>
#include <nanoshell/model.hpp>
#include <nanoshell/oracle.hpp>
#include <nanoshell/report.hpp>
#include <nanoshell/verify.hpp>
#include <nanoshell/wavefunction.hpp>
#include <nanoshell/wkb.hpp>

namespace {

using namespace nanoshell;

// Flag-level mistakes discovered after CLI11 parsing (bad ranges, missing
// --eta, ...). Reported on stderr and mapped to exit code 1.
struct UsageError {
    std::string message;
};

struct Range {
    int lo = 0;
    int hi = 0;
};

struct Config {
    std::vector<double> etas;
    std::vector<double> radii_nm;
    std::string l_text = "0";
    std::string nr_text = "0";
    std::string method = "exact";
    std::string format = "csv";
    std::string out_path;
    int samples = 2000;
    bool si = false;
};

struct VerifyConfig {
    std::string only;
    double xi_perturbation = 0.0;
};

// "a" or "a..b", bounded to [0, max_hi].
Range parse_range(const std::string& text, int max_hi, const char* flag) {
    Range r;
    std::size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw UsageError{std::string(flag) + ": expected an integer or a..b, got '" + text + "'"};
    }
    if (r.lo < 0 || r.hi < r.lo || r.hi > max_hi)
        throw UsageError{std::string(flag) + ": range must satisfy 0 <= a <= b <= " +
                         std::to_string(max_hi)};
    return r;
}

std::vector<double> collect_etas(const Config& c) {
    std::vector<double> etas = c.etas;
    for (double r : c.radii_nm) etas.push_back(eta_from_radius_nm(r));
    if (etas.empty()) throw UsageError{"--eta or --radius-nm is required"};
    for (double eta : etas)
        if (!(eta >= 1e-4 && eta <= 1e4))
            throw UsageError{"eta must lie in [1e-4, 1e4], got " + std::to_string(eta)};
    return etas;
}

void emit(const Table& t, const Config& c) {
    const std::string text = c.format == "json" ? to_json(t) : to_csv(t);
    if (c.out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out) throw UsageError{"cannot open output file: " + c.out_path};
    out << text;
}

void add_common_options(CLI::App* cmd, Config& c, bool with_method) {
    cmd->add_option("--eta", c.etas, "shell radius in Bohr radii (comma separated list)")
        ->delimiter(',');
    cmd->add_option("--radius-nm", c.radii_nm,
                    "shell radius in nm, converted with a0 = 0.053 nm (comma separated list)")
        ->delimiter(',');
    cmd->add_option("--l", c.l_text, "orbital quantum number, single value or range a..b");
    cmd->add_option("--nr", c.nr_text, "radial quantum number, single value or range a..b");
    if (with_method)
        cmd->add_option("--method", c.method, "solution route")
            ->check(CLI::IsMember({"exact", "wkb", "ode", "all"}));
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out_path, "write the table to this file instead of stdout");
    cmd->add_flag("--si", c.si, "add eV / nm columns");
}

// One level per requested method. Levels the scan could not certify for a
// given nr (shallow windows) are skipped rather than padded.
int cmd_spectrum(const Config& c) {
    const std::vector<double> etas = collect_etas(c);
    const Range lr = parse_range(c.l_text, 10, "--l");
    const Range nrr = parse_range(c.nr_text, 20, "--nr");
    const bool wide = c.method == "all";

    Table t;
    t.meta = {{"command", std::string("spectrum")}, {"method", c.method}};
    if (wide)
        t.columns = {"eta", "l",         "nr",      "xi_exact", "xi_wkb",
                     "xi_ode", "energy_ry", "residual_exact", "dev_wkb", "dev_ode"};
    else
        t.columns = {"eta", "l", "nr", "method", "xi", "energy_ry", "residual"};
    if (c.si) {
        t.columns.push_back("radius_nm");
        t.columns.push_back("energy_ev");
    }

    for (double eta : etas) {
        const ShellParams p{eta};
        for (int l = lr.lo; l <= lr.hi; ++l) {
            LevelList exact_list, ode_list;
            if (wide || c.method == "exact") exact_list = find_levels(p, l, nrr.hi);
            if (wide || c.method == "ode") ode_list = oracle_find_levels(p, l, nrr.hi);
            for (int nr = nrr.lo; nr <= nrr.hi; ++nr) {
                double xi = 0.0, residual = 0.0;
                std::vector<Cell> row;
                if (wide) {
                    if (nr >= static_cast<int>(exact_list.levels.size()) ||
                        nr >= static_cast<int>(ode_list.levels.size()))
                        continue;
                    const EigenSolution& ex = exact_list.levels[nr];
                    const WkbLevel wkb = wkb_level(p, QuantumNumbers{l, nr});
                    const EigenSolution& ode = ode_list.levels[nr];
                    xi = ex.xi;
                    row = {eta,
                           static_cast<long long>(l),
                           static_cast<long long>(nr),
                           ex.xi,
                           wkb.xi,
                           ode.xi,
                           energy_ry_from_xi(ex.xi),
                           ex.residual,
                           std::fabs(ex.xi - wkb.xi),
                           std::fabs(ex.xi - ode.xi)};
                } else {
                    if (c.method == "wkb") {
                        const WkbLevel lev = wkb_level(p, QuantumNumbers{l, nr});
                        xi = lev.xi;
                        residual = lev.residual;
                    } else {
                        const LevelList& list = c.method == "exact" ? exact_list : ode_list;
                        if (nr >= static_cast<int>(list.levels.size())) continue;
                        xi = list.levels[nr].xi;
                        residual = list.levels[nr].residual;
                    }
                    row = {eta,
                           static_cast<long long>(l),
                           static_cast<long long>(nr),
                           c.method,
                           xi,
                           energy_ry_from_xi(xi),
                           residual};
                }
                if (c.si) {
                    row.push_back(radius_nm_from_eta(eta));
                    row.push_back(energy_ry_from_xi(xi) * kRydbergEv);
                }
                t.rows.push_back(std::move(row));
            }
        }
    }
    emit(t, c);
    return 0;
}

int cmd_wavefunction(const Config& c) {
    const std::vector<double> etas = collect_etas(c);
    const Range lr = parse_range(c.l_text, 10, "--l");
    const Range nrr = parse_range(c.nr_text, 20, "--nr");
    if (etas.size() != 1 || lr.lo != lr.hi || nrr.lo != nrr.hi)
        throw UsageError{"wavefunction needs a single eta, a single l, and a single nr"};
    if (c.samples < 2 || c.samples > 2000000)
        throw UsageError{"--samples must lie in [2, 2000000]"};
    const int l = lr.lo, nr = nrr.lo;

    const ShellParams p{etas[0]};
    const LevelList list = find_levels(p, l, nr);
    if (nr >= static_cast<int>(list.levels.size()))
        throw BracketError("no level with nr = " + std::to_string(nr) +
                           " found for eta = " + std::to_string(p.eta) +
                           ", l = " + std::to_string(l));
    const RadialWavefunction wf = normalize(list.levels[nr], p);

    const double lo = 1e-3, hi = wf.rho_max();
    std::vector<double> grid(c.samples);
    for (int i = 0; i < c.samples; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / (c.samples - 1);
    const std::vector<std::pair<double, double>> d = distribution(wf, grid);

    Table t;
    t.meta = {{"command", std::string("wavefunction")},
              {"eta", p.eta},
              {"l", static_cast<long long>(l)},
              {"nr", static_cast<long long>(nr)},
              {"xi", wf.solution().xi},
              {"energy_ry", energy_ry_from_xi(wf.solution().xi)},
              {"norm_c", wf.norm_c()},
              {"node_count", static_cast<long long>(wf.count_nodes())}};
    t.columns = {"rho", "D"};
    if (c.si) t.columns.push_back("r_nm");
    for (const auto& [rho, dens] : d) {
        std::vector<Cell> row = {rho, dens};
        if (c.si) row.push_back(radius_nm_from_eta(rho));
        t.rows.push_back(std::move(row));
    }
    emit(t, c);
    return 0;
}

int cmd_observables(const Config& c) {
    const std::vector<double> etas = collect_etas(c);
    Table t;
    t.meta = {{"command", std::string("observables")}};
    t.columns = {"eta", "xi_ground", "xi_excited", "delta_e_ry", "freq_trad_s", "r2_a0sq"};
    if (c.si) {
        t.columns.push_back("radius_nm");
        t.columns.push_back("delta_e_ev");
        t.columns.push_back("r2_nm2");
    }
    for (double eta : etas) {
        const ShellParams p{eta};
        const ExcitationEnergy gap = excitation_energy(p);
        const LevelList ground = find_levels(p, 0, 0);
        if (ground.levels.empty())
            throw BracketError("no ground state found for eta = " + std::to_string(eta));
        const RadialWavefunction wf = normalize(ground.levels[0], p);
        const double r2 = r2_expectation(wf);
        std::vector<Cell> row = {eta,
                                 gap.ground_xi,
                                 gap.excited_xi,
                                 gap.delta_e_ry,
                                 transition_frequency_thz(gap.delta_e_ry),
                                 r2};
        if (c.si) {
            row.push_back(radius_nm_from_eta(eta));
            row.push_back(gap.delta_e_ry * kRydbergEv);
            row.push_back(r2 * kBohrRadiusNm * kBohrRadiusNm);
        }
        t.rows.push_back(std::move(row));
    }
    emit(t, c);
    return 0;
}

int cmd_verify(const VerifyConfig& vc) {
    VerifyOptions opt;
    opt.only = vc.only;
    opt.xi_perturbation = vc.xi_perturbation;
    const std::vector<CheckResult> results = run_verification(opt);
    if (results.empty()) throw UsageError{"--only '" + vc.only + "' matched no check"};
    const std::string text = render_report(results);
    std::fwrite(text.data(), 1, text.size(), stdout);
    return all_passed(results) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound states of an electron around a charged nanoshell"};
    app.require_subcommand(1);

    Config c;
    VerifyConfig vc;

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "energy levels xi over ranges of eta, l, nr");
    add_common_options(spectrum, c, true);

    CLI::App* wavefunction = app.add_subcommand(
        "wavefunction", "normalized electron distribution D(rho) for one state");
    add_common_options(wavefunction, c, false);
    wavefunction->add_option("--samples", c.samples,
                             "number of grid points on [1e-3, eta + 40/xi] (default 2000)");

    CLI::App* observables = app.add_subcommand(
        "observables", "ground state gap, transition frequency, and <r^2> per eta");
    add_common_options(observables, c, false);

    CLI::App* verify =
        app.add_subcommand("verify", "run the built-in cross-validation suite");
    verify->add_option("--only", vc.only,
                       "run a single named check ('wkb' selects the semiclassical pair)");
    verify->add_option("--xi-perturbation", vc.xi_perturbation,
                       "offset added to solved levels before reference comparison "
                       "(sensitivity hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(c);
        if (wavefunction->parsed()) return cmd_wavefunction(c);
        if (observables->parsed()) return cmd_observables(c);
        if (verify->parsed()) return cmd_verify(vc);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 2;
    }
    return 0;
}
