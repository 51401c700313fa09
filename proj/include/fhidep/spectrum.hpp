#pragma once

#include <string>
#include <vector>

#include "fhidep/potential.hpp"

namespace fhidep {

/**
 * How a momentum eigenvalue is produced.
 *
 * AsPrintedEq22     literal reading of the published closed form,
 *                   cPn = A + beta [bracket_n]^2 (adds a dimensionless A
 *                   to an energy; kept for reproduction of the paper).
 * BetaTimesA        dimensional repair of the same form, cPn = beta (A + [bracket_n]^2).
 * QuantizationRoot  ignores the printed form and solves the quantization
 *                   condition lambda = lambda_n for M by bisection through
 *                   the generic reduction; cPn = -beta M. Default.
 */
enum class EigenvalueVariant { AsPrintedEq22, BetaTimesA, QuantizationRoot };

const char* to_string(EigenvalueVariant v);
EigenvalueVariant eigenvalue_variant_from_string(const std::string& s);

/// Which branch family the quantization root came from.
///   Standard: the tau'<0 branch bounded at s = 0 (the published selection).
///   Mirror:   the other tau'<0 branch; for the registry molecules (q < 0)
///             the standard family admits no root and the mirror family
///             yields the negative of the grid spectrum.
enum class QuantizationFamily { Standard, Mirror };

const char* to_string(QuantizationFamily f);

struct SpectrumLevel {
    int n;
    double cPn_eV;
    double Pn_eV_per_c;  // = cPn numerically (c = 1 internally)
    // Family that produced a QuantizationRoot level; Standard for the
    // closed-form variants.
    QuantizationFamily family = QuantizationFamily::Standard;
};

struct SpectrumResult {
    PotentialConfig config;
    EigenvalueVariant variant;
    std::vector<SpectrumLevel> levels;                      // sorted by n
    std::vector<std::pair<int, std::string>> excluded;      // (n, reason)
    int realness_cutoff = -1;                               // max admitted n
};

/// The bracket term of the printed closed form,
/// [2A - C - n(n+1) - (2n+1)/R] / (2 (n + 1/R)).
/// Throws invalid_parameter when n + 1/R vanishes (pole).
double printed_bracket(const DerivedCoefficients& coeffs, int n);

/**
 * One eigenvalue, cPn in eV. For QuantizationRoot the root is searched in
 * the standard family first, then the mirror family; realness_violation is
 * thrown when neither admits the level. numerical_error carries bracket
 * diagnostics when the root finder fails to bracket.
 */
double momentum_eigenvalue(const DerivedCoefficients& coeffs, int n,
                           EigenvalueVariant variant);

/// momentum_eigenvalue plus the family that produced a quantization root.
std::pair<double, QuantizationFamily> momentum_eigenvalue_ex(
    const DerivedCoefficients& coeffs, int n, EigenvalueVariant variant);

/**
 * Spectrum for levels n = 0..n_max. The coefficient chain and the
 * quantization solve run in extended precision internally; the registry
 * parameters make cPn a ~1e-12 relative difference of the reduction
 * coefficients, which double precision alone cannot resolve well.
 */
SpectrumResult compute_spectrum(const PotentialConfig& config,
                                const UnitSystem& units, int n_max,
                                EigenvalueVariant variant);

/// Classical Jacobi polynomial P_n^{(a,b)}(x) by forward three-term
/// recurrence in the degree. Requires a, b > -1.
double jacobi(int n, double a, double b, double x);

/**
 * Shape data of one bound-state solution on the mathematical domain
 * s in (0, 1):  psi_n(s) = B_n s^{zeta1} (1-s)^{1/R} P_n^{(2 zeta1, 2/R-1)}(1-2s).
 */
struct WavefunctionSpec {
    int n = 0;
    double zeta1 = 0;
    double R = 1;             // 1/R is the (1-s) exponent
    double normalization = 1; // B_n, set by normalize()
    double s_lo = 0.0;
    double s_hi = 1.0;

    double inv_R() const { return 1.0 / R; }
    // Jacobi parameters (2 zeta1, 2/R - 1) must both exceed -1.
    void validate() const;
};

/// Evaluate psi_n(s); throws invalid_parameter for s outside (s_lo, s_hi).
double wavefunction(const WavefunctionSpec& spec,
                    const LevelCoefficients& level, double s);

/// Compute B_n so that the square of psi integrates to one over (0, 1),
/// by Gauss-Legendre quadrature of the stated order. Updates the spec and
/// returns B_n.
double normalize(WavefunctionSpec& spec, const LevelCoefficients& level,
                 int quadrature_order);

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on the recurrence).
void gauss_legendre(int order, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace fhidep
