#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace fhidep::detail {

// One (k root, polynomial-root sign) combination of the reduction.
template <class Real>
struct BranchCore {
    Real k = 0;
    Real pi0 = 0, pi1 = 0;    // Pi(s) = pi0 + pi1 s
    Real tau0 = 0, tau1 = 0;  // tau(s) = tilde_tau + 2 Pi
    Real lambda = 0;          // k + Pi'
    bool real_root = false;   // polynomial square root exists over the reals
    bool tau_prime_negative = false;
    bool bounded = false;     // phi bounded at finite domain endpoints on sigma roots
    int k_index = 0;          // 0 -> k_minus, 1 -> k_plus
    int root_sign = 0;        // sign in Pi = p +/- w
};

template <class Real>
struct ReductionCore {
    bool have_real_k = false;
    Real k_minus = 0, k_plus = 0;
    std::array<BranchCore<Real>, 4> branches;  // (k-,-), (k-,+), (k+,-), (k+,+)
    int selected = -1;                         // index into branches, -1 if none
    Real sigma_second = 0;
    Real coeff_scale = 1;  // max |input coefficient|, used for scaled tolerances

    Real lambda_n(int n, int branch_index) const {
        const BranchCore<Real>& b = branches[static_cast<size_t>(branch_index)];
        const Real nn = static_cast<Real>(n);
        return -nn * b.tau1 - nn * (nn - 1) / 2 * sigma_second;
    }
};

/**
 * Generic reduction of psi'' + (tilde_tau/sigma) psi' + (tilde_sigma/sigma^2) psi = 0
 * with polynomial data: finds the k values closing Pi(s) into a degree-1
 * polynomial, enumerates the four (k, sign) branches, and classifies each by
 * the sign of tau' and boundedness of phi = exp(int Pi/sigma) at finite
 * domain endpoints coinciding with sigma roots.
 *
 * All zero checks scale by the largest input coefficient magnitude; the
 * registry parameters span ~23 orders of magnitude.
 */
template <class Real>
ReductionCore<Real> reduce_core(const std::array<Real, 3>& tilde_tau,
                                const std::array<Real, 3>& sigma,
                                const std::array<Real, 3>& tilde_sigma,
                                Real domain_lo, Real domain_hi) {
    ReductionCore<Real> out;

    Real scale = Real(1);
    for (int i = 0; i < 3; ++i) {
        scale = std::max(scale, std::abs(tilde_tau[static_cast<size_t>(i)]));
        scale = std::max(scale, std::abs(sigma[static_cast<size_t>(i)]));
        scale = std::max(scale, std::abs(tilde_sigma[static_cast<size_t>(i)]));
    }
    out.coeff_scale = scale;
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real tol = Real(64) * eps * scale;

    out.sigma_second = 2 * sigma[2];

    // p(s) = (sigma' - tilde_tau)/2
    const Real p0 = (sigma[1] - tilde_tau[0]) / 2;
    const Real p1 = (2 * sigma[2] - tilde_tau[1]) / 2;

    // Q(s; k) = p^2 - tilde_sigma + k sigma = c2(k) s^2 + c1(k) s + c0(k)
    const auto c2_of = [&](Real k) { return p1 * p1 - tilde_sigma[2] + k * sigma[2]; };
    const auto c1_of = [&](Real k) { return 2 * p0 * p1 - tilde_sigma[1] + k * sigma[1]; };
    const auto c0_of = [&](Real k) { return p0 * p0 - tilde_sigma[0] + k * sigma[0]; };

    // Zero discriminant of Q in s, viewed as a quadratic in k:
    //   (c1)^2 - 4 c2 c0 = ak k^2 + bk k + ck = 0
    const Real u1 = 2 * p0 * p1 - tilde_sigma[1];
    const Real u2 = p1 * p1 - tilde_sigma[2];
    const Real u0 = p0 * p0 - tilde_sigma[0];
    const Real ak = sigma[1] * sigma[1] - 4 * sigma[2] * sigma[0];
    const Real bk = 2 * u1 * sigma[1] - 4 * (u2 * sigma[0] + u0 * sigma[2]);
    const Real ck = u1 * u1 - 4 * u2 * u0;

    const Real k_scale = std::max({Real(1), std::abs(ak), std::abs(bk), std::abs(ck)});
    if (std::abs(ak) <= Real(64) * eps * k_scale) {
        if (std::abs(bk) <= Real(64) * eps * k_scale) {
            return out;  // no k closes the root; have_real_k stays false
        }
        out.k_minus = out.k_plus = -ck / bk;
        out.have_real_k = true;
    } else {
        const Real disc = bk * bk - 4 * ak * ck;
        if (disc < -Real(64) * eps * k_scale * k_scale) {
            return out;
        }
        const Real sq = std::sqrt(std::max(disc, Real(0)));
        // Citardauq-free: roots ordered after computing both stably.
        Real r1, r2;
        if (bk >= 0) {
            r1 = (-bk - sq) / (2 * ak);
            r2 = ak == 0 ? r1 : (ck / ak) / r1;
            if (sq == 0 || r1 == 0) r2 = (-bk + sq) / (2 * ak);
        } else {
            r1 = (-bk + sq) / (2 * ak);
            r2 = r1 == 0 ? (-bk - sq) / (2 * ak) : (ck / ak) / r1;
        }
        out.k_minus = std::min(r1, r2);
        out.k_plus = std::max(r1, r2);
        out.have_real_k = true;
    }

    // Exponent of phi at a sigma root r is Pi(r)/sigma'(r); phi is bounded
    // there iff the exponent is >= 0 (up to a scaled tolerance).
    const auto bounded_at = [&](Real pi0, Real pi1) {
        for (Real endpoint : {domain_lo, domain_hi}) {
            if (!std::isfinite(static_cast<double>(endpoint))) continue;
            const Real sv = sigma[0] + endpoint * (sigma[1] + endpoint * sigma[2]);
            if (std::abs(sv) > tol * std::max(Real(1), endpoint * endpoint)) continue;
            const Real sp = sigma[1] + 2 * sigma[2] * endpoint;
            if (std::abs(sp) <= tol) continue;  // double root, out of scope
            if ((pi0 + pi1 * endpoint) / sp < -tol) return false;
        }
        return true;
    };

    int idx = 0;
    for (int ki = 0; ki < 2; ++ki) {
        const Real k = ki == 0 ? out.k_minus : out.k_plus;
        const Real c2 = c2_of(k);
        const Real c1 = c1_of(k);
        const Real c0 = c0_of(k);
        // Polynomial square root w(s) = w1 s + w0 of Q(s; k).
        Real w0 = 0, w1 = 0;
        bool real_root = true;
        if (c2 > tol * scale) {
            w1 = std::sqrt(c2);
            w0 = c1 / (2 * w1);
        } else if (c2 >= -tol * scale) {
            w1 = 0;
            if (c0 >= -tol * scale) {
                w0 = std::sqrt(std::max(c0, Real(0)));
            } else {
                real_root = false;
            }
        } else {
            real_root = false;
        }

        for (int sgn : {-1, +1}) {
            BranchCore<Real>& b = out.branches[static_cast<size_t>(idx)];
            b.k_index = ki;
            b.root_sign = sgn;
            b.k = k;
            b.real_root = real_root;
            if (real_root) {
                b.pi0 = p0 + sgn * w0;
                b.pi1 = p1 + sgn * w1;
                b.tau0 = tilde_tau[0] + 2 * b.pi0;
                b.tau1 = tilde_tau[1] + 2 * b.pi1;
                b.lambda = k + b.pi1;
                b.tau_prime_negative = b.tau1 < 0;
                b.bounded = bounded_at(b.pi0, b.pi1);
            }
            ++idx;
        }
    }

    // Selection: tau' < 0 is the qualifying rule; among qualifying branches
    // prefer those bounded at the finite endpoints, then stable order.
    int best = -1;
    for (int i = 0; i < 4; ++i) {
        const BranchCore<Real>& b = out.branches[static_cast<size_t>(i)];
        if (!b.real_root || !b.tau_prime_negative) continue;
        if (best < 0) {
            best = i;
        } else if (b.bounded && !out.branches[static_cast<size_t>(best)].bounded) {
            best = i;
        }
    }
    out.selected = best;
    return out;
}

}  // namespace fhidep::detail
