#include "fhidep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "fhidep/detail/nu_core.hpp"

namespace fhidep {

const char* to_string(EigenvalueVariant v) {
    switch (v) {
        case EigenvalueVariant::AsPrintedEq22: return "AsPrinted";
        case EigenvalueVariant::BetaTimesA: return "BetaTimesA";
        case EigenvalueVariant::QuantizationRoot: return "QuantizationRoot";
    }
    return "?";
}

EigenvalueVariant eigenvalue_variant_from_string(const std::string& s) {
    if (s == "AsPrinted" || s == "AsPrintedEq22") return EigenvalueVariant::AsPrintedEq22;
    if (s == "BetaTimesA") return EigenvalueVariant::BetaTimesA;
    if (s == "QuantizationRoot") return EigenvalueVariant::QuantizationRoot;
    throw invalid_parameter("unknown eigenvalue variant '" + s + "'");
}

const char* to_string(QuantizationFamily f) {
    return f == QuantizationFamily::Standard ? "standard" : "mirror";
}

namespace {

using ld = long double;

struct ChainLd {
    ld beta, L, A, C, delta, inv_R;
};

ChainLd chain_from(const DerivedCoefficients& c) {
    ChainLd q;
    q.beta = c.beta;
    q.L = c.L;
    q.A = c.A;
    q.C = c.C;
    q.delta = c.R_inv_minus_half;
    q.inv_R = 0.5L + q.delta;
    return q;
}

ld bracket_ld(const ChainLd& q, int n) {
    const ld nn = n;
    const ld denom = 2 * (nn + q.inv_R);
    if (denom == 0) {
        throw singularity_error("momentum_eigenvalue: pole n + 1/R = 0 at n = " +
                                std::to_string(n));
    }
    return (2 * q.A - q.C - nn * (nn + 1) - (2 * nn + 1) * q.inv_R) / denom;
}

/**
 * Identify the two tau'<0 branch families of the instance problem across
 * reductions at different M. Slots in the reduction depend on the sign of
 * zeta1 - delta, so branches are recognised by their boundary exponents
 * (phi ~ s^{e0} near 0 and (1-s)^{e1} near 1, e0 = Pi(0), e1 = -(Pi(0)+Pi(1))):
 *   Standard: largest e0, then largest e1  -> (+zeta1, 1/R), the published pick
 *   Mirror:   smallest e0, then largest e1 -> (-zeta1, 1/R)
 */
int pick_family_branch(const detail::ReductionCore<ld>& core, QuantizationFamily fam) {
    int best = -1;
    ld be0 = 0, be1 = 0;
    for (int i = 0; i < 4; ++i) {
        const auto& b = core.branches[static_cast<size_t>(i)];
        if (!b.real_root) continue;
        const ld e0 = b.pi0;
        const ld e1 = -(b.pi0 + b.pi1);
        const ld key0 = fam == QuantizationFamily::Standard ? e0 : -e0;
        if (best < 0 || key0 > be0 || (key0 == be0 && e1 > be1)) {
            best = i;
            be0 = key0;
            be1 = e1;
        }
    }
    return best;
}

// lambda - lambda_n for the requested family at a trial zeta1 >= 0.
ld lambda_gap(const ChainLd& q, ld zeta1, int n, QuantizationFamily fam) {
    const ld M = -q.A - zeta1 * zeta1;
    const ld zeta2 = -(q.C + 2 * M);
    const ld zeta3 = -(q.L + M);
    const std::array<ld, 3> tilde_tau{1, -1, 0};
    const std::array<ld, 3> sigma{0, 1, -1};
    const std::array<ld, 3> tilde_sigma{-zeta1 * zeta1, zeta2, -zeta3};
    const auto core =
        detail::reduce_core<ld>(tilde_tau, sigma, tilde_sigma, ld(0), ld(1));
    if (!core.have_real_k) return std::numeric_limits<ld>::quiet_NaN();
    const int bi = pick_family_branch(core, fam);
    if (bi < 0) return std::numeric_limits<ld>::quiet_NaN();
    const auto& b = core.branches[static_cast<size_t>(bi)];
    if (!b.tau_prime_negative) return std::numeric_limits<ld>::quiet_NaN();
    return b.lambda - core.lambda_n(n, bi);
}

// Bisection for the zeta1 solving lambda = lambda_n in one family.
std::optional<ld> family_root(const ChainLd& q, int n, QuantizationFamily fam,
                              std::string* diag) {
    const ld g0 = lambda_gap(q, 0, n, fam);
    if (!std::isfinite(static_cast<double>(g0))) {
        if (diag) *diag = "family gap undefined at zeta1 = 0";
        return std::nullopt;
    }
    if (g0 == 0) return ld(0);
    ld lo = 0, hi = 1;
    ld ghi = lambda_gap(q, hi, n, fam);
    int expansions = 0;
    while (std::isfinite(static_cast<double>(ghi)) && (ghi > 0) == (g0 > 0)) {
        lo = hi;
        hi *= 2;
        if (++expansions > 80) break;
        ghi = lambda_gap(q, hi, n, fam);
    }
    if (!std::isfinite(static_cast<double>(ghi))) {
        // The family became invalid before a sign change (tau' flipped sign).
        if (diag) {
            std::ostringstream os;
            os << "bracket expansion left the family's validity region at zeta1 <= "
               << static_cast<double>(hi);
            *diag = os.str();
        }
        return std::nullopt;
    }
    if ((ghi > 0) == (g0 > 0)) {
        if (diag) {
            std::ostringstream os;
            os << "no sign change up to zeta1 = " << static_cast<double>(hi)
               << " (gap " << static_cast<double>(g0) << " -> "
               << static_cast<double>(ghi) << ")";
            *diag = os.str();
        }
        return std::nullopt;
    }
    ld glo = g0;
    for (int it = 0; it < 200; ++it) {
        const ld mid = (lo + hi) / 2;
        if (hi - lo <= 1e-14L * std::max(ld(1), hi)) return mid;
        const ld gm = lambda_gap(q, mid, n, fam);
        if (!std::isfinite(static_cast<double>(gm)) || gm == 0) return mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

std::pair<double, QuantizationFamily> quantization_eigenvalue(const ChainLd& q,
                                                              int n) {
    std::string diag_standard, diag_mirror;
    if (const auto z = family_root(q, n, QuantizationFamily::Standard,
                                   &diag_standard)) {
        const ld M = -q.A - (*z) * (*z);
        return {static_cast<double>(-q.beta * M), QuantizationFamily::Standard};
    }
    if (const auto z = family_root(q, n, QuantizationFamily::Mirror, &diag_mirror)) {
        const ld M = -q.A - (*z) * (*z);
        return {static_cast<double>(-q.beta * M), QuantizationFamily::Mirror};
    }
    throw realness_violation(
        "quantization condition admits no level n = " + std::to_string(n) +
        " with real zeta1 >= 0 (standard family: " + diag_standard +
        "; mirror family: " + diag_mirror + ")");
}

double printed_value(const ChainLd& q, int n, EigenvalueVariant variant) {
    const ld br = bracket_ld(q, n);
    if (variant == EigenvalueVariant::AsPrintedEq22) {
        return static_cast<double>(q.A + q.beta * br * br);
    }
    return static_cast<double>(q.beta * (q.A + br * br));
}

}  // namespace

double printed_bracket(const DerivedCoefficients& coeffs, int n) {
    if (n < 0) throw invalid_parameter("printed_bracket: n must be >= 0");
    return static_cast<double>(bracket_ld(chain_from(coeffs), n));
}

std::pair<double, QuantizationFamily> momentum_eigenvalue_ex(
    const DerivedCoefficients& coeffs, int n, EigenvalueVariant variant) {
    if (n < 0) throw invalid_parameter("momentum_eigenvalue: n must be >= 0");
    const ChainLd q = chain_from(coeffs);
    switch (variant) {
        case EigenvalueVariant::AsPrintedEq22:
        case EigenvalueVariant::BetaTimesA:
            return {printed_value(q, n, variant), QuantizationFamily::Standard};
        case EigenvalueVariant::QuantizationRoot: return quantization_eigenvalue(q, n);
    }
    throw invalid_parameter("momentum_eigenvalue: bad variant");
}

double momentum_eigenvalue(const DerivedCoefficients& coeffs, int n,
                           EigenvalueVariant variant) {
    return momentum_eigenvalue_ex(coeffs, n, variant).first;
}

SpectrumResult compute_spectrum(const PotentialConfig& config,
                                const UnitSystem& units, int n_max,
                                EigenvalueVariant variant) {
    if (n_max < 0) throw invalid_parameter("compute_spectrum: n_max must be >= 0");
    const auto chain = detail::coefficient_chain<ld>(config, units);
    ChainLd q{chain.beta, chain.L, chain.A, chain.C, chain.delta, chain.inv_R};

    SpectrumResult out;
    out.config = config;
    out.variant = variant;
    for (int n = 0; n <= n_max; ++n) {
        try {
            SpectrumLevel level;
            level.n = n;
            if (variant == EigenvalueVariant::QuantizationRoot) {
                const auto [v, fam] = quantization_eigenvalue(q, n);
                level.cPn_eV = v;
                level.family = fam;
            } else {
                level.cPn_eV = printed_value(q, n, variant);
            }
            level.Pn_eV_per_c = level.cPn_eV;  // c = 1 internally
            out.levels.push_back(level);
            out.realness_cutoff = std::max(out.realness_cutoff, n);
        } catch (const realness_violation& e) {
            out.excluded.emplace_back(n, e.what());
        } catch (const singularity_error& e) {
            out.excluded.emplace_back(n, e.what());
        }
    }
    return out;
}

double jacobi(int n, double a, double b, double x) {
    if (n < 0) throw invalid_parameter("jacobi: degree must be >= 0");
    if (a <= -1.0 || b <= -1.0) {
        throw invalid_parameter("jacobi: parameters must be > -1, got a = " +
                                std::to_string(a) + ", b = " + std::to_string(b));
    }
    if (n == 0) return 1.0;
    double y0 = 1.0;
    double y1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for (int m = 2; m <= n; ++m) {
        const double c1 = 2.0 * m * (m + a + b) * (2.0 * m + a + b - 2.0);
        const double c2 = (2.0 * m + a + b - 1.0) *
                          ((2.0 * m + a + b) * (2.0 * m + a + b - 2.0) * x + a * a - b * b);
        const double c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + a + b);
        const double y2 = (c2 * y1 - c3 * y0) / c1;
        y0 = y1;
        y1 = y2;
    }
    return y1;
}

void WavefunctionSpec::validate() const {
    if (n < 0) throw invalid_parameter("WavefunctionSpec: n must be >= 0");
    if (!(std::isfinite(zeta1) && std::isfinite(R)) || R == 0.0) {
        throw invalid_parameter("WavefunctionSpec: zeta1 and R must be finite, R nonzero");
    }
    if (2.0 * zeta1 <= -1.0 || 2.0 * inv_R() - 1.0 <= -1.0) {
        throw invalid_parameter(
            "WavefunctionSpec: Jacobi parameters (2 zeta1, 2/R - 1) must be > -1");
    }
    if (!(normalization > 0.0) || !std::isfinite(normalization)) {
        throw invalid_parameter("WavefunctionSpec: normalization must be finite and > 0");
    }
    if (!(s_lo < s_hi)) throw invalid_parameter("WavefunctionSpec: empty domain");
}

namespace {

double wavefunction_unnormalized(const WavefunctionSpec& spec, double s) {
    const double a = 2.0 * spec.zeta1;
    const double b = 2.0 * spec.inv_R() - 1.0;
    return std::pow(s, spec.zeta1) * std::pow(1.0 - s, spec.inv_R()) *
           jacobi(spec.n, a, b, 1.0 - 2.0 * s);
}

}  // namespace

double wavefunction(const WavefunctionSpec& spec, const LevelCoefficients& level,
                    double s) {
    spec.validate();
    if (level.n != spec.n ||
        std::abs(level.zeta1 - spec.zeta1) > 1e-9 * (1.0 + std::abs(spec.zeta1))) {
        throw invalid_parameter("wavefunction: spec inconsistent with level coefficients");
    }
    if (!(s > spec.s_lo && s < spec.s_hi)) {
        throw invalid_parameter("wavefunction: s = " + std::to_string(s) +
                                " outside the open domain (" +
                                std::to_string(spec.s_lo) + ", " +
                                std::to_string(spec.s_hi) + ")");
    }
    return spec.normalization * wavefunction_unnormalized(spec, s);
}

double normalize(WavefunctionSpec& spec, const LevelCoefficients& level,
                 int quadrature_order) {
    if (quadrature_order < 2) {
        throw invalid_parameter("normalize: quadrature order must be >= 2");
    }
    const double keep = spec.normalization;
    spec.normalization = 1.0;
    spec.validate();
    if (level.n != spec.n) {
        spec.normalization = keep;
        throw invalid_parameter("normalize: spec inconsistent with level coefficients");
    }
    std::vector<double> x, w;
    gauss_legendre(quadrature_order, x, w);
    double integral = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double s = 0.5 * (x[i] + 1.0);  // map [-1,1] -> (0,1)
        const double v = wavefunction_unnormalized(spec, s);
        integral += 0.5 * w[i] * v * v;
    }
    if (!std::isfinite(integral) || integral <= 0.0) {
        spec.normalization = keep;
        throw numerical_error("normalize: integral of psi^2 is not finite and positive");
    }
    spec.normalization = 1.0 / std::sqrt(integral);
    return spec.normalization;
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 1) throw invalid_parameter("gauss_legendre: order must be >= 1");
    nodes.assign(static_cast<size_t>(order), 0.0);
    weights.assign(static_cast<size_t>(order), 0.0);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, then Newton on P_order.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(i)] = -x;
        nodes[static_cast<size_t>(order - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<size_t>(i)] = w;
        weights[static_cast<size_t>(order - 1 - i)] = w;
    }
    if (order % 2 == 1) nodes[static_cast<size_t>(order / 2)] = 0.0;
}

}  // namespace fhidep
