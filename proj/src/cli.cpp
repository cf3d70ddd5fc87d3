#include "sonoqed/cli.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sonoqed/bubble.hpp"
#include "sonoqed/config.hpp"
#include "sonoqed/csv.hpp"
#include "sonoqed/errors.hpp"
#include "sonoqed/homogeneous.hpp"
#include "sonoqed/inverse.hpp"
#include "sonoqed/units.hpp"

namespace sonoqed {

namespace {

struct Flag {
    const char* name; // CLI spelling
    const char* key;  // canonical config key
    const char* help;
};

constexpr std::array kFlags{
    Flag{"--n-gas-in,--n-in", "n_gas_in", "gas refractive index before the change"},
    Flag{"--n-gas-out,--n-out", "n_gas_out", "gas refractive index after the change"},
    Flag{"--n-liquid", "n_liquid", "refractive index of the liquid (default 1.3)"},
    Flag{"--radius-nm", "radius_nm", "bubble radius in nm (default 500)"},
    Flag{"--cutoff-nm", "cutoff_nm", "observed cutoff wavelength in the liquid, nm"},
    Flag{"--k-obs-r", "k_obs_r", "observed cutoff as K_obs R (default 15, wins over --cutoff-nm)"},
    Flag{"--t0-fs", "t0_fs", "timescale of the index change in fs (default 1)"},
    Flag{"--model", "model", "infinite, finite or both"},
    Flag{"--lmax", "lmax", "highest angular momentum, or auto"},
    Flag{"--tol", "tol", "relative quadrature tolerance (default 1e-6)"},
    Flag{"--l-tail-tol", "l_tail_tol", "stop the l sum below this relative contribution (default 1e-4)"},
    Flag{"--grid-points", "grid_points", "output frequency points (default 200)"},
    Flag{"--output-window", "output_window", "outgoing range in units of the cutoff (default 1.5)"},
    Flag{"--max-refinements", "max_refinements", "adaptive refinement passes (default 10)"},
    Flag{"--target", "target", "target photon count (default 1e6)"},
    Flag{"--n-out-min", "n_out_min", "sweep start (default 1)"},
    Flag{"--n-out-max", "n_out_max", "sweep end (default 100)"},
    Flag{"--threads", "threads", "OpenMP threads, 0 for the runtime default"},
    Flag{"--output,-o", "output", "output path, '-' or empty for stdout"},
};

struct Sub {
    CLI::App* app = nullptr;
    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
};

void add_flags(Sub& s) {
    s.app->add_option("--config", s.config_path, "key = value parameter file; flags override it");
    for (const auto& f : kFlags) s.options[f.key] = s.app->add_option(f.name, s.values[f.key], f.help);
}

KeyValues flag_values(const Sub& s) {
    KeyValues kv;
    for (const auto& [k, opt] : s.options)
        if (opt->count() > 0) kv[k] = s.values.at(k);
    return kv;
}

void preamble(CsvTable& t, const RunConfig& c) {
    t.comment("tool", std::string("sonoqed ") + kToolVersion);
    t.comment("command", c.command);
    for (const auto& [k, v] : c.effective) t.comment(k, v);
    t.comment("polarization_factor", format_double(kPolarizationFactor));
}

void add_diagnostics(CsvTable& t, const FiniteDiagnostics& d) {
    t.comment("finite_l_last", std::to_string(d.l_last));
    t.comment("finite_last_l_fraction", format_double(d.last_l_fraction));
    t.comment("finite_refinement_passes", std::to_string(d.refinement_passes));
    t.comment("finite_estimated_rel_error", format_double(d.estimated_rel_error));
}

MediumTransition transition(const RunConfig& c) {
    return MediumTransition(*c.n_gas_in, *c.n_gas_out, units::fs_to_s(c.t0_fs));
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    const auto gas = transition(c);
    const auto g = geometry_for(c, gas.n_out());
    const bool want_inf = c.model != Model::finite, want_fin = c.model != Model::infinite;

    SpectralDensity fin;
    FiniteDiagnostics diag;
    std::vector<double> grid;
    if (want_fin) {
        fin = spectrum_finite(gas, g, c.finite, &diag);
        grid = fin.grid;
    } else {
        grid = open_uniform_grid(c.finite.output_window * units::speed_of_light * g.k_gas_cutoff / gas.n_out(),
                                 c.finite.grid_points);
    }
    const SpectralDensity inf = spectrum_infinite(gas, g, grid);

    CsvTable t({"x", "omega_out_rad_s", "nu_Hz", "dNdomega_infinite", "dNdomega_finite"});
    preamble(t, c);
    t.comment("cutoff_x", format_double(g.cutoff_radius()));
    t.comment("omega_max_rad_s", format_double(g.omega_max));
    t.comment("omega_sudden_rad_s", format_double(omega_sudden(gas).omega_sudden));
    if (want_fin) add_diagnostics(t, diag);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.row({format_double((*inf.dimensionless_x)[i]), format_double(grid[i]),
               format_double(units::rad_per_s_to_hz(grid[i])), want_inf ? format_double(inf.values[i]) : "",
               want_fin ? format_double(fin.values[i]) : ""});
    }
    t.write_to(c.output, out);
    return exit_ok;
}

int cmd_totals(const RunConfig& c, std::ostream& out) {
    const auto gas = transition(c);
    const auto g = geometry_for(c, gas.n_out());
    CsvTable t({"model", "photon_count", "total_energy_J", "mean_energy_eV", "mean_over_cutoff"});
    preamble(t, c);
    t.comment("omega_max_rad_s", format_double(g.omega_max));
    t.comment("hbar_omega_max_eV", format_double(units::joule_to_ev(units::hbar * g.omega_max)));
    auto emit = [&](const char* name, const EmissionSummary& s) {
        t.row({name, format_double(s.photon_count), format_double(s.total_energy),
               format_double(units::joule_to_ev(s.mean_energy)), format_double(s.mean_over_cutoff)});
    };
    if (c.model != Model::finite) emit("infinite", totals_closed_form(gas, g));
    if (c.model != Model::infinite) {
        FiniteDiagnostics d;
        const auto s = totals_finite(gas, g, c.finite, &d);
        add_diagnostics(t, d);
        emit("finite", s);
    }
    t.write_to(c.output, out);
    return exit_ok;
}

int cmd_solve_nin(const RunConfig& c, std::ostream& out) {
    const double kr = effective_k_obs_r(c);
    const double n_out = *c.n_gas_out;
    const auto r = solve_n_in(n_out, c.target, c.n_liquid, kr);
    const double res_lo = back_substitution_residual(r.n_in_low, n_out, c.target, c.n_liquid, kr);
    const double res_hi = back_substitution_residual(r.n_in_high, n_out, c.target, c.n_liquid, kr);
    if (c.output.empty() || c.output == "-") {
        out << "n_out = " << format_double(n_out) << ", target N = " << format_double(c.target)
            << ", K_obs R = " << format_double(kr) << "\n";
        out << "n_in_low  = " << format_double(r.n_in_low) << "  residual " << format_double(res_lo) << "\n";
        out << "n_in_high = " << format_double(r.n_in_high) << "  residual " << format_double(res_hi) << "\n";
        return exit_ok;
    }
    CsvTable t({"n_out", "n_in_low", "n_in_high", "residual_low", "residual_high"});
    preamble(t, c);
    t.row({format_double(n_out), format_double(r.n_in_low), format_double(r.n_in_high), format_double(res_lo),
           format_double(res_hi)});
    t.write_to(c.output, out);
    return exit_ok;
}

constexpr int kSweepPoints = 200;

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    const double kr = effective_k_obs_r(c);
    const auto rows = sweep_figure1(c.target, c.n_liquid, kr, linear_grid(c.n_out_min, c.n_out_max, kSweepPoints));
    CsvTable t({"n_out", "n_in_low", "n_in_high", "residual_low", "residual_high"});
    preamble(t, c);
    t.comment("sweep_points", std::to_string(kSweepPoints));
    for (const auto& r : rows)
        t.row({format_double(r.n_out), format_double(r.roots.n_in_low), format_double(r.roots.n_in_high),
               format_double(r.residual_low), format_double(r.residual_high)});
    t.write_to(c.output, out);
    return exit_ok;
}

struct ReferenceRow {
    double n_in, n_out, photons, ratio;
};
constexpr std::array<ReferenceRow, 5> kTableRows{ReferenceRow{2e4, 1, 1.06e6, 0.803}, ReferenceRow{71, 25, 1.00e6, 0.750},
                                             ReferenceRow{68, 34, 1.06e6, 0.751}, ReferenceRow{9, 25, 0.955e6, 0.750},
                                             ReferenceRow{1, 12, 0.98e6, 0.765}};

int cmd_table1(const RunConfig& c, std::ostream& out, std::ostream& err) {
    CsvTable t({"n_in", "n_out", "N_finite", "ratio_finite", "N_closed_form", "N_published", "ratio_published",
                "N_rel_dev", "ratio_abs_dev", "status"});
    preamble(t, c);
    int code = exit_ok;
    std::ostringstream tab;
    tab << std::left << std::setw(8) << "n_in" << std::setw(7) << "n_out" << std::setw(13) << "N" << std::setw(9)
        << "<E>/hw" << std::setw(13) << "N closed" << std::setw(11) << "N ref" << std::setw(9) << "ref"
        << std::setw(10) << "dN" << "d<E>\n";
    for (const auto& p : kTableRows) {
        std::vector<std::string> cells{format_double(p.n_in), format_double(p.n_out)};
        try {
            const MediumTransition gas(p.n_in, p.n_out, units::fs_to_s(c.t0_fs));
            const auto g = geometry_for(c, p.n_out);
            const auto s = totals_finite(gas, g, c.finite);
            const double closed = total_photons_closed_form(gas, g);
            const double dn = s.photon_count / p.photons - 1.0;
            const double dr = s.mean_over_cutoff - p.ratio;
            cells.insert(cells.end(), {format_double(s.photon_count), format_double(s.mean_over_cutoff),
                                       format_double(closed), format_double(p.photons), format_double(p.ratio),
                                       format_double(dn), format_double(dr), "ok"});
            std::ostringstream line;
            line << std::left << std::setprecision(4) << std::setw(8) << p.n_in << std::setw(7) << p.n_out
                 << std::setw(13) << s.photon_count << std::setw(9) << s.mean_over_cutoff << std::setw(13) << closed
                 << std::setw(11) << p.photons << std::setw(9) << p.ratio << std::showpos << std::setw(10) << dn
                 << dr << "\n";
            tab << line.str();
        } catch (const NumericalError& e) {
            code = exit_numerical;
            err << "table1: row (" << format_double(p.n_in) << ", " << format_double(p.n_out)
                << ") failed: " << e.what() << "\n";
            cells.insert(cells.end(), {"", "", "", format_double(p.photons), format_double(p.ratio), "", "", "failed"});
            tab << std::left << std::setw(8) << p.n_in << std::setw(7) << p.n_out << "FAILED\n";
        }
        t.row(std::move(cells));
    }
    out << tab.str();
    if (!c.output.empty() && c.output != "-") t.write_to(c.output, out);
    return code;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photon emission from a sudden change of refractive index in a dielectric bubble", "sonoqed"};
    app.set_version_flag("--version", std::string("sonoqed ") + kToolVersion);
    app.require_subcommand(1);
    const std::array<std::pair<const char*, const char*>, 5> subs{{
        {"spectrum", "dN/domega_out on a frequency grid, as CSV"},
        {"totals", "photon count and energy"},
        {"solve-nin", "both n_in giving the target count at one n_out"},
        {"table1", "the five typical cases, finite volume against published values"},
        {"sweep", "two-branch n_in over a range of n_out, as CSV"},
    }};
    std::vector<std::unique_ptr<Sub>> parsed;
    for (const auto& [name, help] : subs) {
        auto s = std::make_unique<Sub>();
        s->app = app.add_subcommand(name, help);
        add_flags(*s);
        parsed.push_back(std::move(s));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        const Sub* s = nullptr;
        for (const auto& p : parsed)
            if (p->app->parsed()) s = p.get();
        const std::string command = s->app->get_name();
        KeyValues merged;
        if (!s->config_path.empty()) merged = load_config_file(s->config_path);
        KeyValues flags;
        for (const auto& [k, v] : flag_values(*s)) flags[canonical_key(k)] = v;
        merged = merge(merged, flags);
        const RunConfig c = resolve(command, merged);
#ifdef _OPENMP
        if (c.threads > 0) omp_set_num_threads(c.threads);
#endif
        if (command == "spectrum") return cmd_spectrum(c, out);
        if (command == "totals") return cmd_totals(c, out);
        if (command == "solve-nin") return cmd_solve_nin(c, out);
        if (command == "sweep") return cmd_sweep(c, out);
        return cmd_table1(c, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const DomainError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace sonoqed
