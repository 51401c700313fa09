#include "fhidep/potential.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace fhidep {

void MoleculeParams::validate() const {
    auto positive = [&](double v, const char* what) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw invalid_parameter("molecule '" + name + "': " + what +
                                    " must be finite and > 0, got " + std::to_string(v));
        }
    };
    if (name.empty()) throw invalid_parameter("molecule name must be non-empty");
    positive(De, "De");
    positive(te, "te");
    positive(mu, "mu");
    positive(t0, "t0");
    if (!std::isfinite(q) || q == 0.0) {
        throw invalid_parameter("molecule '" + name +
                                "': q must be nonzero (it divides the substitution)");
    }
}

const char* to_string(BetaVariant v) {
    return v == BetaVariant::AsPrinted ? "AsPrinted" : "DimensionCorrected";
}

BetaVariant beta_variant_from_string(const std::string& s) {
    if (s == "AsPrinted") return BetaVariant::AsPrinted;
    if (s == "DimensionCorrected") return BetaVariant::DimensionCorrected;
    throw invalid_parameter("unknown beta variant '" + s + "'");
}

void PotentialConfig::validate() const {
    molecule.validate();
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw invalid_parameter("alpha must be finite and > 0, got " +
                                std::to_string(alpha));
    }
}

double evaluate_potential(const PotentialConfig& config, double t) {
    config.validate();
    if (!std::isfinite(t)) throw invalid_parameter("evaluate_potential: t must be finite");
    const MoleculeParams& m = config.molecule;
    const double num = m.q - std::exp(2.0 * config.alpha * (m.te - m.t0));
    const double den = m.q - std::exp(2.0 * config.alpha * (t - m.t0));
    if (std::abs(den) < 1e-30) {
        throw singularity_error("evaluate_potential: denominator " +
                                std::to_string(den) + " at t = " + std::to_string(t));
    }
    const double r = 1.0 - num / den;
    return m.De * r * r;
}

DerivedCoefficients derive_coefficients(const PotentialConfig& config,
                                        const UnitSystem& units) {
    config.validate();
    units.validate();
    const auto chain = detail::coefficient_chain<long double>(config, units);
    DerivedCoefficients out;
    out.beta = static_cast<double>(chain.beta);
    out.L = static_cast<double>(chain.L);
    out.A = static_cast<double>(chain.A);
    out.C = static_cast<double>(chain.C);
    out.R_inv_minus_half = static_cast<double>(chain.delta);
    out.R = static_cast<double>(1.0L / chain.inv_R);
    out.beta_variant = config.beta_variant;
    return out;
}

LevelCoefficients level_coefficients(const DerivedCoefficients& coeffs,
                                     double cPn_eV, int n) {
    if (!std::isfinite(cPn_eV)) {
        throw invalid_parameter("level_coefficients: cPn must be finite");
    }
    if (n < 0) throw invalid_parameter("level_coefficients: n must be >= 0");
    LevelCoefficients lc;
    lc.n = n;
    lc.M = -cPn_eV / coeffs.beta;
    const double minus_A_minus_M = -(coeffs.A + lc.M);
    if (minus_A_minus_M < 0.0) {
        throw realness_violation("level_coefficients: A + M = " +
                                 std::to_string(coeffs.A + lc.M) +
                                 " > 0 makes zeta1 complex");
    }
    lc.zeta1 = std::sqrt(minus_A_minus_M);
    lc.zeta2 = -(coeffs.C + 2.0 * lc.M);
    lc.zeta3 = -(coeffs.L + lc.M);
    return lc;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_field(const std::string& field, int lineno, const char* what) {
    try {
        size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw parse_error("registry line " + std::to_string(lineno) + ": bad " +
                          what + " '" + field + "'");
    }
}

}  // namespace

std::vector<MoleculeParams> load_molecule_registry(std::istream& in) {
    std::vector<MoleculeParams> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(line);
        while (std::getline(fs, field, ',')) fields.push_back(trim(field));
        if (fields.size() != 6) {
            throw parse_error("registry line " + std::to_string(lineno) +
                              ": expected 6 comma-separated fields, got " +
                              std::to_string(fields.size()));
        }
        MoleculeParams m;
        m.name = fields[0];
        m.De = parse_field(fields[1], lineno, "De");
        m.te = parse_field(fields[2], lineno, "te");
        m.mu = parse_field(fields[3], lineno, "mu");
        m.t0 = parse_field(fields[4], lineno, "t0");
        m.q = parse_field(fields[5], lineno, "q");
        m.validate();
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<MoleculeParams> load_molecule_registry(const std::string& text) {
    std::istringstream in(text);
    return load_molecule_registry(in);
}

std::vector<MoleculeParams> load_molecule_registry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open registry: " + path);
    return load_molecule_registry(in);
}

const std::vector<MoleculeParams>& default_registry() {
    static const std::vector<MoleculeParams> registry = [] {
        // Spectroscopic parameters of the four built-in diatomic molecules.
        const std::string rows =
            "CO,  10.84514471, 1.1283, 6.860586000, 1.128300118, -0.6544806294\n"
            "N2,  9.9051,      1.0970, 7.0034,      1.097000113, -0.3543700921\n"
            "H2,  4.7446,      0.7416, 0.5039,      0.7416001485, -0.3236073943\n"
            "LiH, 2.5155,      1.5955, 0.8801,      1.595500403, -0.3326882575\n";
        return load_molecule_registry(rows);
    }();
    return registry;
}

const MoleculeParams& find_molecule(const std::vector<MoleculeParams>& registry,
                                    const std::string& name) {
    for (const auto& m : registry) {
        if (m.name == name) return m;
    }
    throw invalid_parameter("molecule '" + name + "' not found in registry");
}

}  // namespace fhidep
