#include "fhidep/nu.hpp"

#include <cmath>
#include <limits>

#include "fhidep/detail/nu_core.hpp"

namespace fhidep {

void NUProblem::validate() const {
    if (tilde_tau[2] != 0.0) {
        throw invalid_parameter(
            "NUProblem: tilde_tau must be degree <= 1 (s^2 coefficient exactly zero)");
    }
    if (sigma[0] == 0.0 && sigma[1] == 0.0 && sigma[2] == 0.0) {
        throw invalid_parameter("NUProblem: sigma must not vanish identically");
    }
    if (!(domain_lo < domain_hi)) {
        throw invalid_parameter("NUProblem: domain must be a nonempty open interval");
    }
}

double NUReduction::lambda_n(int n) const {
    if (n < 0) throw invalid_parameter("lambda_n: n must be >= 0");
    const NUBranch& b = branch();
    const double nn = n;
    return -nn * b.tau_prime - nn * (nn - 1.0) / 2.0 * sigma_second;
}

NUReduction reduce(const NUProblem& problem) {
    problem.validate();
    const auto core = detail::reduce_core<double>(
        problem.tilde_tau, problem.sigma, problem.tilde_sigma,
        problem.domain_lo, problem.domain_hi);
    if (!core.have_real_k) {
        throw no_closed_form_error(
            "reduce: the zero-discriminant condition admits no real k");
    }
    NUReduction out;
    out.k_minus = core.k_minus;
    out.k_plus = core.k_plus;
    out.sigma_second = core.sigma_second;
    out.branches.reserve(4);
    for (const auto& b : core.branches) {
        NUBranch nb;
        nb.k = b.k;
        nb.pi = {b.pi0, b.pi1};
        nb.tau = {b.tau0, b.tau1};
        nb.tau_prime = b.tau1;
        nb.lambda = b.lambda;
        nb.tau_prime_negative = b.tau_prime_negative;
        nb.bounded = b.bounded && b.real_root;
        nb.k_index = b.k_index;
        nb.root_sign = b.root_sign;
        if (!b.real_root) {
            nb.tau_prime_negative = false;
            nb.bounded = false;
        }
        out.branches.push_back(nb);
    }
    if (core.selected < 0) {
        throw branch_selection_error(
            "reduce: no branch yields tau' < 0 on the stated domain");
    }
    out.selected = core.selected;
    return out;
}

std::pair<double, double> quantization_lambda(const NUReduction& reduction, int n) {
    if (n < 0) throw invalid_parameter("quantization_lambda: n must be >= 0");
    return {reduction.lambda_of_k(), reduction.lambda_n(n)};
}

double WeightFunction::operator()(double s) const {
    return std::pow(std::abs(s - root0), exp0) * std::pow(std::abs(s - root1), exp1);
}

WeightFunction weight_function(const NUReduction& reduction, const NUProblem& problem) {
    const auto& sig = problem.sigma;
    if (sig[2] == 0.0) {
        throw invalid_parameter(
            "weight_function: sigma must be a genuine quadratic with two roots");
    }
    const double disc = sig[1] * sig[1] - 4.0 * sig[2] * sig[0];
    if (disc <= 0.0) {
        throw invalid_parameter("weight_function: sigma has no two distinct real roots");
    }
    const double sq = std::sqrt(disc);
    double r0 = (-sig[1] - sq) / (2.0 * sig[2]);
    double r1 = (-sig[1] + sq) / (2.0 * sig[2]);
    if (r0 > r1) std::swap(r0, r1);

    // Pearson equation (sigma rho)' = tau rho gives, at a simple root r,
    // rho ~ |s - r|^{tau(r)/sigma'(r) - 1}. The published display uses
    // sigma - tau in place of sigma' - tau; the Pearson form reproduces the
    // stated weight exponents and is used here.
    const auto tau_at = [&](double s) {
        return reduction.tau()[0] + reduction.tau()[1] * s;
    };
    const auto sigp_at = [&](double s) { return sig[1] + 2.0 * sig[2] * s; };

    WeightFunction w;
    w.root0 = r0;
    w.root1 = r1;
    w.exp0 = tau_at(r0) / sigp_at(r0) - 1.0;
    w.exp1 = tau_at(r1) / sigp_at(r1) - 1.0;

    w.integrable = true;
    const double tol = 1e-12 * std::max(1.0, std::abs(r0) + std::abs(r1));
    for (double endpoint : {problem.domain_lo, problem.domain_hi}) {
        if (!std::isfinite(endpoint)) continue;
        if (std::abs(endpoint - r0) < tol && w.exp0 <= -1.0) w.integrable = false;
        if (std::abs(endpoint - r1) < tol && w.exp1 <= -1.0) w.integrable = false;
    }
    return w;
}

}  // namespace fhidep
