#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "fhidep/errors.hpp"
#include "fhidep/units.hpp"

namespace fhidep {

/// Spectroscopic constants of one diatomic molecule (one registry row).
struct MoleculeParams {
    std::string name;
    double De;  // dissociation energy, eV
    double te;  // equilibrium time, ns
    double mu;  // reduced mass, a.m.u.
    double t0;  // reference time, ns
    double q;   // deformation parameter, dimensionless, nonzero

    // Throws invalid_parameter / realness-style validation errors.
    void validate() const;
};

/**
 * Kinetic-prefactor variant. The printed definition
 *     beta = -2 hbar alpha^2 / (m c^2)
 * is dimensionally inconsistent (one power of hbar short of an energy);
 * DimensionCorrected uses hbar^2 and is the default. The chosen variant
 * is recorded in every downstream result.
 */
enum class BetaVariant { AsPrinted, DimensionCorrected };

const char* to_string(BetaVariant v);
BetaVariant beta_variant_from_string(const std::string& s);

/// One potential instance: a molecule plus the exponential parameter.
struct PotentialConfig {
    MoleculeParams molecule;
    double alpha = 0.5;  // exponential parameter, 1/ns, > 0
    BetaVariant beta_variant = BetaVariant::DimensionCorrected;

    void validate() const;
};

/// Dimensionless inputs of the reduction, derived from one PotentialConfig.
struct DerivedCoefficients {
    double beta;               // eV, always < 0
    double L;                  // De / beta
    double A;                  // De e^{4 alpha (te-t0)} / (q^2 beta)
    double C;                  // 2 De e^{2 alpha (te-t0)} / (q beta)
    double R_inv_minus_half;   // sqrt(C - A - L + 1/4), >= 0
    double R;                  // 1 / (1/2 + R_inv_minus_half)
    BetaVariant beta_variant;

    double inv_R() const { return 0.5 + R_inv_minus_half; }
};

/// Per-level quantities: M = -cPn/beta and the zeta coefficients.
struct LevelCoefficients {
    int n = 0;
    double M;      // -cPn / beta
    double zeta1;  // +sqrt(-(A+M)), non-negative branch
    double zeta2;  // -(C + 2M)
    double zeta3;  // -(L + M)
};

namespace detail {

/**
 * Coefficient chain templated on the scalar type. The molecule-scale
 * coefficients reach ~1e23 while eigenvalue differences live near 1e11,
 * so the quantization path instantiates this with long double; the
 * public API narrows to double.
 */
template <class Real>
struct CoefficientChain {
    Real beta, L, A, C, delta, inv_R;  // delta = 1/R - 1/2
};

template <class Real>
CoefficientChain<Real> coefficient_chain(const PotentialConfig& config,
                                         const UnitSystem& units) {
    const Real hbar = static_cast<Real>(units.hbar_eV_ns);
    const Real mc2 = static_cast<Real>(units.amu_to_eV_per_c2) *
                     static_cast<Real>(config.molecule.mu);
    const Real alpha = static_cast<Real>(config.alpha);
    const Real De = static_cast<Real>(config.molecule.De);
    const Real q = static_cast<Real>(config.molecule.q);

    CoefficientChain<Real> out;
    const Real hfac = config.beta_variant == BetaVariant::AsPrinted
                          ? hbar
                          : hbar * hbar;
    out.beta = -Real(2) * hfac * alpha * alpha / mc2;
    out.L = De / out.beta;
    const Real e2 = std::exp(Real(2) * alpha *
                             (static_cast<Real>(config.molecule.te) -
                              static_cast<Real>(config.molecule.t0)));
    const Real se = e2 / q;  // substitution value at t = te
    out.A = out.L * se * se;
    out.C = Real(2) * out.L * se;
    const Real disc = out.C - out.A - out.L + Real(0.25L);
    if (disc < Real(0)) {
        throw realness_violation(
            "derive_coefficients: C - A - L + 1/4 = " +
            std::to_string(static_cast<double>(disc)) +
            " < 0, R would be complex");
    }
    out.delta = std::sqrt(disc);
    out.inv_R = Real(0.5L) + out.delta;
    return out;
}

}  // namespace detail

/**
 * V(t) = De [1 - (q - e^{2 alpha (te-t0)}) / (q - e^{2 alpha (t-t0)})]^2.
 *
 * Always >= 0 and exactly 0 at t = te. Throws singularity_error if the
 * denominator is within 1e-30 of zero (reachable only for q > 0).
 */
double evaluate_potential(const PotentialConfig& config, double t);

/// Dimensionless reduction inputs; throws realness_violation when
/// C - A - L + 1/4 < 0.
DerivedCoefficients derive_coefficients(const PotentialConfig& config,
                                        const UnitSystem& units);

/// Per-level coefficients for a candidate eigenvalue cPn (eV).
/// Throws realness_violation when A + M > 0 (complex zeta1).
LevelCoefficients level_coefficients(const DerivedCoefficients& coeffs,
                                     double cPn_eV, int n = 0);

/**
 * Molecule registry: one molecule per line,
 *     name,De,te,mu,t0,q
 * with `#` comments and blank lines ignored.
 */
std::vector<MoleculeParams> load_molecule_registry(std::istream& in);
std::vector<MoleculeParams> load_molecule_registry(const std::string& text);
std::vector<MoleculeParams> load_molecule_registry_file(const std::string& path);

/// The four built-in molecules (CO, N2, H2, LiH) with all printed digits.
const std::vector<MoleculeParams>& default_registry();

/// Lookup by name; throws invalid_parameter when absent.
const MoleculeParams& find_molecule(const std::vector<MoleculeParams>& registry,
                                    const std::string& name);

}  // namespace fhidep
