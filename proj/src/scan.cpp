#include "fhidep/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fhidep/svg.hpp"

namespace fhidep {

const char* to_string(ScanKind k) {
    switch (k) {
        case ScanKind::PotentialVsTime: return "potential_vs_time";
        case ScanKind::PnVsQ: return "pn_vs_q";
        case ScanKind::PnVsAlpha: return "pn_vs_alpha";
        case ScanKind::PnVsN: return "pn_vs_n";
    }
    return "?";
}

ScanKind scan_kind_from_string(const std::string& s) {
    if (s == "potential_vs_time") return ScanKind::PotentialVsTime;
    if (s == "pn_vs_q") return ScanKind::PnVsQ;
    if (s == "pn_vs_alpha") return ScanKind::PnVsAlpha;
    if (s == "pn_vs_n") return ScanKind::PnVsN;
    throw invalid_parameter("unknown scan kind '" + s + "'");
}

void ScanRequest::validate(const std::vector<MoleculeParams>& registry) const {
    if (sweep_steps < 2) throw invalid_parameter("scan: steps must be >= 2");
    if (!(sweep_start < sweep_stop)) {
        throw invalid_parameter("scan: sweep start must be < stop");
    }
    if (molecules.empty()) throw invalid_parameter("scan: no molecules requested");
    for (const auto& name : molecules) find_molecule(registry, name);
    if (kind != ScanKind::PotentialVsTime) {
        if (variants.empty()) throw invalid_parameter("scan: no variants requested");
        if (kind != ScanKind::PnVsN && levels.empty()) {
            throw invalid_parameter("scan: no levels requested");
        }
        for (int n : levels) {
            if (n < 0) throw invalid_parameter("scan: level indices must be >= 0");
        }
    }
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

struct Row {
    double sweep;
    std::string molecule;
    std::string n_label;
    std::string variant_label;
    bool ok;
    double value;
};

std::vector<Row> compute_rows(const ScanRequest& req,
                              const std::vector<MoleculeParams>& registry,
                              const UnitSystem& units) {
    req.validate(registry);
    std::vector<Row> rows;
    std::vector<double> sweep(static_cast<size_t>(req.sweep_steps));
    for (int i = 0; i < req.sweep_steps; ++i) {
        sweep[static_cast<size_t>(i)] =
            req.sweep_start +
            (req.sweep_stop - req.sweep_start) * i / (req.sweep_steps - 1);
    }

    for (double sv : sweep) {
        for (const auto& name : req.molecules) {
            PotentialConfig config;
            config.molecule = find_molecule(registry, name);
            config.alpha = req.alpha;
            config.beta_variant = req.beta_variant;

            if (req.kind == ScanKind::PotentialVsTime) {
                rows.push_back({sv, name, "-", "potential", true,
                                evaluate_potential(config, sv)});
                continue;
            }
            if (req.kind == ScanKind::PnVsQ) config.molecule.q = sv;
            if (req.kind == ScanKind::PnVsAlpha) config.alpha = sv;

            std::vector<int> levels = req.levels;
            if (req.kind == ScanKind::PnVsN) {
                levels = {static_cast<int>(std::lround(sv))};
            }
            const int n_max = *std::max_element(levels.begin(), levels.end());

            for (EigenvalueVariant variant : req.variants) {
                const std::string vlabel = std::string(to_string(variant)) + "+" +
                                           to_string(req.beta_variant);
                SpectrumResult spectrum;
                bool spectrum_ok = true;
                try {
                    spectrum = compute_spectrum(config, units, n_max, variant);
                } catch (const realness_violation&) {
                    spectrum_ok = false;
                } catch (const numerical_error&) {
                    spectrum_ok = false;
                }
                for (int n : levels) {
                    Row row{sv, name, std::to_string(n), vlabel, false, 0.0};
                    if (spectrum_ok) {
                        for (const auto& level : spectrum.levels) {
                            if (level.n == n && std::isfinite(level.cPn_eV)) {
                                row.ok = true;
                                row.value = level.cPn_eV;
                            }
                        }
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

std::string csv_from_rows(const std::vector<Row>& rows) {
    std::ostringstream csv;
    csv << "sweep_var,molecule,n,variant,value\n";
    for (const auto& r : rows) {
        csv << format_value(r.sweep) << ',' << r.molecule << ',' << r.n_label << ','
            << r.variant_label << ',' << (r.ok ? format_value(r.value) : "excluded")
            << '\n';
    }
    return csv.str();
}

std::string svg_from_rows(const ScanRequest& req, const std::vector<Row>& rows) {
    // One series per (molecule, n, variant), insertion-ordered.
    std::vector<std::string> order;
    std::map<std::string, SvgSeries> by_key;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        std::string key = r.molecule;
        if (req.kind != ScanKind::PotentialVsTime) {
            if (req.kind != ScanKind::PnVsN) key += " n=" + r.n_label;
            key += " " + r.variant_label;
        }
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            order.push_back(key);
            it = by_key.emplace(key, SvgSeries{key, {}, {}}).first;
        }
        it->second.x.push_back(r.sweep);
        it->second.y.push_back(r.value);
    }
    std::vector<SvgSeries> series;
    for (const auto& key : order) series.push_back(by_key[key]);

    std::string x_label, y_label, title;
    switch (req.kind) {
        case ScanKind::PotentialVsTime:
            x_label = "t (ns)";
            y_label = "V(t) (eV)";
            title = "Potential vs time";
            break;
        case ScanKind::PnVsQ:
            x_label = "q";
            y_label = "Pn (eV/c)";
            title = "Momentum eigenvalues vs q";
            break;
        case ScanKind::PnVsAlpha:
            x_label = "alpha (1/ns)";
            y_label = "Pn (eV/c)";
            title = "Momentum eigenvalues vs alpha";
            break;
        case ScanKind::PnVsN:
            x_label = "n";
            y_label = "Pn (eV/c)";
            title = "Momentum eigenvalues vs n";
            break;
    }
    return render_line_chart(title, x_label, y_label, series);
}

}  // namespace

std::string scan_csv(const ScanRequest& request,
                     const std::vector<MoleculeParams>& registry,
                     const UnitSystem& units) {
    return csv_from_rows(compute_rows(request, registry, units));
}

std::string scan_svg(const ScanRequest& request,
                     const std::vector<MoleculeParams>& registry,
                     const UnitSystem& units) {
    return svg_from_rows(request, compute_rows(request, registry, units));
}

ScanOutputs run_scan(const ScanRequest& request,
                     const std::vector<MoleculeParams>& registry,
                     const UnitSystem& units) {
    const auto rows = compute_rows(request, registry, units);
    ScanOutputs out;
    out.csv_path = request.output_stem + ".csv";
    out.svg_path = request.output_stem + ".svg";
    {
        std::ofstream f(out.csv_path, std::ios::binary);
        if (!f) throw io_error("cannot write " + out.csv_path);
        f << csv_from_rows(rows);
    }
    {
        std::ofstream f(out.svg_path, std::ios::binary);
        if (!f) throw io_error("cannot write " + out.svg_path);
        f << svg_from_rows(request, rows);
    }
    return out;
}

}  // namespace fhidep
