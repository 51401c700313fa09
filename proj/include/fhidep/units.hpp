#pragma once

#include <string>

namespace fhidep {

/**
 * Coherent unit system used throughout: energy in eV, time in ns,
 * mass carried as mc^2 in eV, momentum carried as cP in eV.
 * Working with c = 1 internally removes all explicit factors of c;
 * momenta are converted to eV/c only at the reporting boundary.
 *
 * Defaults are CODATA-2018 values. They can be overridden through a
 * key-value config (see parse_units_config) for sensitivity studies.
 */
struct UnitSystem {
    double hbar_eV_ns = 6.582119569e-7;        // reduced Planck constant, eV ns
    double amu_to_eV_per_c2 = 931.49410242e6;  // 1 a.m.u. as mc^2, eV

    // Throws invalid_parameter unless both constants are finite and > 0.
    void validate() const;
};

// mc^2 in eV for a reduced mass given in a.m.u. Exactly linear in mu_amu.
double mass_energy(const UnitSystem& units, double mu_amu);

/**
 * Parse a key-value config overriding the defaults.
 *
 * Format: one `key = value` pair per line, `#` starts a comment,
 * blank lines ignored. Recognized keys: hbar_eV_ns, amu_to_eV_per_c2.
 * Unknown keys are a parse_error; invalid values an invalid_parameter.
 */
UnitSystem parse_units_config(const std::string& text);

UnitSystem load_units_config_file(const std::string& path);

}  // namespace fhidep
