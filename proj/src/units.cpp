#include "fhidep/units.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fhidep/errors.hpp"

namespace fhidep {

void UnitSystem::validate() const {
    if (!std::isfinite(hbar_eV_ns) || hbar_eV_ns <= 0.0) {
        throw invalid_parameter("UnitSystem: hbar_eV_ns must be finite and > 0");
    }
    if (!std::isfinite(amu_to_eV_per_c2) || amu_to_eV_per_c2 <= 0.0) {
        throw invalid_parameter("UnitSystem: amu_to_eV_per_c2 must be finite and > 0");
    }
}

double mass_energy(const UnitSystem& units, double mu_amu) {
    units.validate();
    if (!std::isfinite(mu_amu) || mu_amu <= 0.0) {
        throw invalid_parameter("mass_energy: mass must be finite and > 0, got " +
                                std::to_string(mu_amu));
    }
    return mu_amu * units.amu_to_eV_per_c2;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

UnitSystem parse_units_config(const std::string& text) {
    UnitSystem units;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error("units config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        double parsed = 0.0;
        try {
            size_t pos = 0;
            parsed = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw parse_error("units config line " + std::to_string(lineno) +
                              ": bad numeric value '" + value + "'");
        }
        if (key == "hbar_eV_ns") {
            units.hbar_eV_ns = parsed;
        } else if (key == "amu_to_eV_per_c2") {
            units.amu_to_eV_per_c2 = parsed;
        } else {
            throw parse_error("units config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    units.validate();
    return units;
}

UnitSystem load_units_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open units config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_units_config(buf.str());
}

}  // namespace fhidep
