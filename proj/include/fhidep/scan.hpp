#pragma once

#include <string>
#include <vector>

#include "fhidep/potential.hpp"
#include "fhidep/spectrum.hpp"

namespace fhidep {

/// What is swept along the x axis.
enum class ScanKind { PotentialVsTime, PnVsQ, PnVsAlpha, PnVsN };

const char* to_string(ScanKind k);
ScanKind scan_kind_from_string(const std::string& s);

struct ScanRequest {
    ScanKind kind = ScanKind::PotentialVsTime;
    std::vector<std::string> molecules;
    double sweep_start = 0.0;
    double sweep_stop = 1.0;
    int sweep_steps = 2;  // >= 2 sample points including both ends
    double alpha = 0.5;   // fixed alpha for kinds that do not sweep it
    std::vector<int> levels{0, 1, 2, 3};
    std::vector<EigenvalueVariant> variants{EigenvalueVariant::QuantizationRoot};
    BetaVariant beta_variant = BetaVariant::DimensionCorrected;
    std::string output_stem = "scan";

    void validate(const std::vector<MoleculeParams>& registry) const;
};

struct ScanOutputs {
    std::string csv_path;
    std::string svg_path;
};

/**
 * Run a sweep and write <stem>.csv and <stem>.svg.
 *
 * CSV schema: header `sweep_var,molecule,n,variant,value`, numbers with 12
 * significant digits. Levels cut off by the realness condition appear as
 * explicit `excluded` rows. Byte-identical output for identical requests.
 */
ScanOutputs run_scan(const ScanRequest& request,
                     const std::vector<MoleculeParams>& registry,
                     const UnitSystem& units);

/// The CSV text of a scan without touching the filesystem.
std::string scan_csv(const ScanRequest& request,
                     const std::vector<MoleculeParams>& registry,
                     const UnitSystem& units);

/// The SVG chart matching scan_csv.
std::string scan_svg(const ScanRequest& request,
                     const std::vector<MoleculeParams>& registry,
                     const UnitSystem& units);

/// 12-significant-digit number formatting shared by all report writers.
std::string format_value(double v);

}  // namespace fhidep
