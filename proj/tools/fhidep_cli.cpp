#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fhidep/oracle.hpp"
#include "fhidep/potential.hpp"
#include "fhidep/scan.hpp"
#include "fhidep/spectrum.hpp"
#include "fhidep/svg.hpp"
#include "fhidep/units.hpp"
#include "fhidep/validate.hpp"

namespace {

using namespace fhidep;

struct GlobalOptions {
    std::string registry_path;
    std::string config_path;
    double alpha = 0.5;
    std::string variant = "QuantizationRoot";
    std::string beta_variant = "DimensionCorrected";
    std::string out;
};

std::vector<MoleculeParams> load_registry(const GlobalOptions& g) {
    if (g.registry_path.empty()) return default_registry();
    return load_molecule_registry_file(g.registry_path);
}

UnitSystem load_units(const GlobalOptions& g) {
    if (g.config_path.empty()) return UnitSystem{};
    return load_units_config_file(g.config_path);
}

std::vector<std::string> resolve_names(const std::vector<std::string>& requested,
                                       const std::vector<MoleculeParams>& registry) {
    if (requested.size() == 1 && requested[0] == "all") {
        std::vector<std::string> names;
        for (const auto& m : registry) names.push_back(m.name);
        return names;
    }
    return requested;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot write " + path);
    f << text;
}

GridSpec parse_grid(const std::string& text) {
    GridSpec spec{};
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &spec.t_min, &spec.t_max,
                    &spec.num_points) != 3) {
        throw invalid_parameter("grid must be tmin:tmax:points, got '" + text + "'");
    }
    spec.validate();
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Quantized momentum states of the time-dependent improved deformed "
        "exponential-type potential: closed-form spectra, grid cross-validation, "
        "parameter scans"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--registry", g.registry_path, "molecule registry file (CSV rows)");
    app.add_option("--config", g.config_path, "physical-constants override file");
    app.add_option("--alpha", g.alpha, "exponential parameter alpha (1/ns)")
        ->check(CLI::PositiveNumber);
    app.add_option("--variant", g.variant,
                   "eigenvalue variant: QuantizationRoot | AsPrinted | BetaTimesA");
    app.add_option("--beta-variant", g.beta_variant,
                   "kinetic prefactor: DimensionCorrected | AsPrinted");
    app.add_option("--out", g.out, "output path stem");

    auto* cmd_molecules = app.add_subcommand("molecules", "list the molecule registry");

    auto* cmd_potential =
        app.add_subcommand("potential", "tabulate V(t) for molecules");
    std::vector<std::string> pot_molecules{"all"};
    double pot_tmin = -2.0, pot_tmax = 5.0;
    int pot_steps = 400;
    cmd_potential->add_option("--molecules", pot_molecules, "names or 'all'")
        ->delimiter(',');
    cmd_potential->add_option("--tmin", pot_tmin, "start time (ns)");
    cmd_potential->add_option("--tmax", pot_tmax, "stop time (ns)");
    cmd_potential->add_option("--steps", pot_steps, "sample count")
        ->check(CLI::Range(2, 1000000));

    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "momentum eigenvalues of one molecule");
    std::string spec_molecule = "H2";
    int spec_levels = 4;
    cmd_spectrum->add_option("--molecule", spec_molecule, "molecule name");
    cmd_spectrum->add_option("--levels", spec_levels, "number of levels")
        ->check(CLI::Range(1, 11));

    auto* cmd_wavefunction = app.add_subcommand(
        "wavefunction", "normalized bound-state solution on s in (0,1)");
    double wf_zeta1 = 1.0, wf_R = 1.0;
    int wf_n = 0, wf_samples = 400, wf_order = 200;
    cmd_wavefunction->add_option("--zeta1", wf_zeta1, "zeta1 exponent (>= 0)");
    cmd_wavefunction->add_option("--R", wf_R, "R parameter (1/R is the 1-s exponent)");
    cmd_wavefunction->add_option("--n", wf_n, "level")->check(CLI::Range(0, 10));
    cmd_wavefunction->add_option("--samples", wf_samples, "grid samples")
        ->check(CLI::Range(8, 100000));
    cmd_wavefunction->add_option("--order", wf_order, "quadrature order")
        ->check(CLI::Range(2, 4096));

    auto* cmd_scan = app.add_subcommand("scan", "parameter sweep to CSV + SVG");
    std::string scan_kind = "pn_vs_n";
    std::vector<std::string> scan_molecules{"all"};
    double scan_start = 0, scan_stop = 3;
    int scan_steps = 4;
    std::vector<std::string> scan_variants{"QuantizationRoot"};
    std::vector<int> scan_levels{0, 1, 2, 3};
    cmd_scan->add_option("--kind", scan_kind,
                         "potential_vs_time | pn_vs_q | pn_vs_alpha | pn_vs_n");
    cmd_scan->add_option("--molecules", scan_molecules, "names or 'all'")
        ->delimiter(',');
    cmd_scan->add_option("--start", scan_start, "sweep start");
    cmd_scan->add_option("--stop", scan_stop, "sweep stop");
    cmd_scan->add_option("--steps", scan_steps, "sweep samples (>= 2)");
    cmd_scan->add_option("--levels", scan_levels, "level indices")->delimiter(',');
    cmd_scan->add_option("--variants", scan_variants, "eigenvalue variants")
        ->delimiter(',');

    auto* cmd_validate =
        app.add_subcommand("validate", "closed forms vs grid oracle, with report");
    std::vector<std::string> val_molecules{"all"};
    int val_levels = 4;
    std::string val_grid;
    cmd_validate->add_option("--molecules", val_molecules, "names or 'all'")
        ->delimiter(',');
    cmd_validate->add_option("--levels", val_levels, "levels per molecule")
        ->check(CLI::Range(1, 10));
    cmd_validate->add_option("--grid", val_grid, "override grid as tmin:tmax:points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const auto registry = load_registry(g);
        const auto units = load_units(g);
        const EigenvalueVariant variant = eigenvalue_variant_from_string(g.variant);
        const BetaVariant beta_variant = beta_variant_from_string(g.beta_variant);

        if (cmd_molecules->parsed()) {
            std::printf("%-6s %14s %10s %14s %16s %16s\n", "name", "De(eV)", "te(ns)",
                        "mu(amu)", "t0(ns)", "q");
            for (const auto& m : registry) {
                std::printf("%-6s %14.8f %10.4f %14.9f %16.10f %16.10f\n",
                            m.name.c_str(), m.De, m.te, m.mu, m.t0, m.q);
            }
            return 0;
        }

        if (cmd_potential->parsed()) {
            ScanRequest req;
            req.kind = ScanKind::PotentialVsTime;
            req.molecules = resolve_names(pot_molecules, registry);
            req.sweep_start = pot_tmin;
            req.sweep_stop = pot_tmax;
            req.sweep_steps = pot_steps;
            req.alpha = g.alpha;
            req.beta_variant = beta_variant;
            req.output_stem = g.out.empty() ? "potential" : g.out;
            const auto out = run_scan(req, registry, units);
            std::printf("wrote %s and %s\n", out.csv_path.c_str(), out.svg_path.c_str());
            return 0;
        }

        if (cmd_spectrum->parsed()) {
            PotentialConfig config;
            config.molecule = find_molecule(registry, spec_molecule);
            config.alpha = g.alpha;
            config.beta_variant = beta_variant;
            const auto result =
                compute_spectrum(config, units, spec_levels - 1, variant);
            std::printf("# %s  alpha=%g 1/ns  variant=%s  beta=%s\n",
                        spec_molecule.c_str(), g.alpha, to_string(variant),
                        to_string(beta_variant));
            std::printf("%3s %22s %22s %10s\n", "n", "cPn (eV)", "Pn (eV/c)", "family");
            for (const auto& level : result.levels) {
                std::printf("%3d %22.12e %22.12e %10s\n", level.n, level.cPn_eV,
                            level.Pn_eV_per_c,
                            variant == EigenvalueVariant::QuantizationRoot
                                ? to_string(level.family)
                                : "-");
            }
            for (const auto& [n, reason] : result.excluded) {
                std::printf("%3d excluded: %s\n", n, reason.c_str());
            }
            std::printf("# realness cutoff: max admitted n = %d\n",
                        result.realness_cutoff);
            return 0;
        }

        if (cmd_wavefunction->parsed()) {
            WavefunctionSpec spec;
            spec.n = wf_n;
            spec.zeta1 = wf_zeta1;
            spec.R = wf_R;
            LevelCoefficients level;
            level.n = wf_n;
            level.zeta1 = wf_zeta1;
            normalize(spec, level, wf_order);
            const std::string stem = g.out.empty() ? "wavefunction" : g.out;
            std::string csv = "s,psi\n";
            SvgSeries series;
            series.label = "n=" + std::to_string(wf_n);
            for (int i = 1; i < wf_samples; ++i) {
                const double s = static_cast<double>(i) / wf_samples;
                const double v = wavefunction(spec, level, s);
                csv += format_value(s) + "," + format_value(v) + "\n";
                series.x.push_back(s);
                series.y.push_back(v);
            }
            write_file(stem + ".csv", csv);
            write_file(stem + ".svg", render_line_chart("Bound-state solution", "s",
                                                        "psi(s)", {series}));
            std::printf("B_n = %.12e; wrote %s.csv and %s.svg\n", spec.normalization,
                        stem.c_str(), stem.c_str());
            return 0;
        }

        if (cmd_scan->parsed()) {
            ScanRequest req;
            req.kind = scan_kind_from_string(scan_kind);
            req.molecules = resolve_names(scan_molecules, registry);
            req.sweep_start = scan_start;
            req.sweep_stop = scan_stop;
            req.sweep_steps = scan_steps;
            req.alpha = g.alpha;
            req.levels = scan_levels;
            req.variants.clear();
            for (const auto& v : scan_variants) {
                req.variants.push_back(eigenvalue_variant_from_string(v));
            }
            req.beta_variant = beta_variant;
            req.output_stem = g.out.empty() ? "scan" : g.out;
            const auto out = run_scan(req, registry, units);
            std::printf("wrote %s and %s\n", out.csv_path.c_str(), out.svg_path.c_str());
            return 0;
        }

        if (cmd_validate->parsed()) {
            std::optional<GridSpec> grid;
            if (!val_grid.empty()) grid = parse_grid(val_grid);
            const auto report =
                run_validation(resolve_names(val_molecules, registry), g.alpha,
                               val_levels, registry, units, grid, beta_variant);
            std::fputs(validation_text(report).c_str(), stdout);
            const std::string stem = g.out.empty() ? "validation" : g.out;
            write_file(stem + ".csv", validation_csv(report));
            std::printf("\nwrote %s.csv\n", stem.c_str());
            return 0;
        }
    } catch (const invalid_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
