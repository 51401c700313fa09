#pragma once

#include <array>
#include <utility>
#include <vector>

#include "fhidep/errors.hpp"

namespace fhidep {

/**
 * Input of the generic reduction: the hypergeometric-type equation
 *
 *   psi'' + (tilde_tau/sigma) psi' + (tilde_sigma/sigma^2) psi = 0
 *
 * with tilde_tau of degree <= 1 and sigma, tilde_sigma of degree <= 2.
 * Polynomials are dense coefficient arrays, constant term first.
 * The open interval (domain_lo, domain_hi) states where solutions live;
 * it guides branch classification only.
 */
struct NUProblem {
    std::array<double, 3> tilde_tau{0, 0, 0};
    std::array<double, 3> sigma{0, 0, 0};
    std::array<double, 3> tilde_sigma{0, 0, 0};
    double domain_lo = 0.0;
    double domain_hi = 1.0;

    // Throws invalid_parameter when degree bounds are violated (the s^2
    // coefficient of tilde_tau must be exactly zero) or sigma vanishes
    // identically.
    void validate() const;
};

/// One (k, root-sign) candidate with its classification.
struct NUBranch {
    double k;
    std::array<double, 2> pi;   // Pi(s) = pi[0] + pi[1] s, degree <= 1 exactly
    std::array<double, 2> tau;  // tau = tilde_tau + 2 Pi
    double tau_prime;
    double lambda;              // k + Pi'
    bool tau_prime_negative;
    bool bounded;               // phi bounded at finite sigma-root endpoints
    int k_index;                // 0 -> k_minus, 1 -> k_plus
    int root_sign;              // sign chosen for the polynomial square root
};

struct NUReduction {
    double k_minus;
    double k_plus;
    std::vector<NUBranch> branches;  // all four candidates, stable order
    int selected;                    // index of the selected branch
    double sigma_second;             // sigma''

    const NUBranch& branch() const { return branches[static_cast<size_t>(selected)]; }
    std::array<double, 2> pi_branch() const { return branch().pi; }
    std::array<double, 2> tau() const { return branch().tau; }
    double lambda_of_k() const { return branch().lambda; }

    // lambda_n = -n tau' - n(n-1)/2 sigma'' for the selected branch.
    double lambda_n(int n) const;
};

/**
 * Run the reduction. Both k roots are returned; the branch is selected by
 * tau' < 0, preferring boundedness at the finite endpoints, and all four
 * candidates stay available in `branches` for inspection.
 *
 * Throws no_closed_form_error when no real k closes the square root and
 * branch_selection_error when no branch has tau' < 0.
 */
NUReduction reduce(const NUProblem& problem);

/// (lambda from the selected branch, lambda_n); equality is the eigencondition.
std::pair<double, double> quantization_lambda(const NUReduction& reduction, int n);

/**
 * Weight function solving the Pearson equation (sigma rho)' = tau rho for
 * the selected branch: rho(s) = |s - r0|^e0 |s - r1|^e1 over the roots of
 * sigma. Integrability over the stated domain is flagged, not fatal.
 */
struct WeightFunction {
    double root0, root1;  // roots of sigma, root0 < root1
    double exp0, exp1;    // exponents at the respective roots
    bool integrable;      // exponents > -1 at finite domain endpoints

    double operator()(double s) const;
};

WeightFunction weight_function(const NUReduction& reduction, const NUProblem& problem);

}  // namespace fhidep
