#include <doctest.h>

#include <cmath>

#include "fhidep/errors.hpp"
#include "fhidep/nu.hpp"
#include "support/test_oracles.hpp"

using namespace fhidep;

namespace {

struct InstanceCoeffs {
    double A, C, L, inv_R, zeta1, zeta2, zeta3;
};

// Instance problem data for an arbitrary zeta1 >= 0 (M follows from it).
InstanceCoeffs instance_from(double A, double C, double L, double zeta1) {
    InstanceCoeffs ic;
    ic.A = A;
    ic.C = C;
    ic.L = L;
    ic.inv_R = 0.5 + std::sqrt(C - A - L + 0.25);
    const double M = -A - zeta1 * zeta1;
    ic.zeta1 = zeta1;
    ic.zeta2 = -(C + 2.0 * M);
    ic.zeta3 = -(L + M);
    return ic;
}

NUProblem problem_from(const InstanceCoeffs& ic) {
    NUProblem p;
    p.tilde_tau = {1.0, -1.0, 0.0};
    p.sigma = {0.0, 1.0, -1.0};
    p.tilde_sigma = {-ic.zeta1 * ic.zeta1, ic.zeta2, -ic.zeta3};
    p.domain_lo = 0.0;
    p.domain_hi = 1.0;
    return p;
}

InstanceCoeffs random_instance(oracles::Rng& rng) {
    for (;;) {
        const double A = rng.uniform(-20.0, 60.0);
        const double C = rng.uniform(-30.0, 30.0);
        const double L = rng.uniform(C - A - 40.0, C - A);
        if (C - A - L + 0.25 < 0.05) continue;
        return instance_from(A, C, L, rng.uniform(0.25, 3.0));
    }
}

}  // namespace

TEST_CASE("problem validation") {
    NUProblem p;
    p.tilde_tau = {1.0, -1.0, 0.5};
    p.sigma = {0.0, 1.0, -1.0};
    CHECK_THROWS_AS(p.validate(), invalid_parameter);
    p.tilde_tau = {1.0, -1.0, 0.0};
    p.sigma = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(p.validate(), invalid_parameter);
    p.sigma = {0.0, 1.0, -1.0};
    p.domain_lo = 1.0;
    p.domain_hi = 0.0;
    CHECK_THROWS_AS(p.validate(), invalid_parameter);
}

TEST_CASE("instance reduction reproduces the closed forms") {
    oracles::Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto ic = random_instance(rng);
        const auto red = reduce(problem_from(ic));
        const double delta = ic.inv_R - 0.5;

        // k- as an independent formula evaluation.
        const double k_minus_expected =
            ic.zeta2 - 2.0 * ic.zeta1 * ic.zeta1 - 2.0 * ic.zeta1 * delta;
        CHECK(red.k_minus ==
              doctest::Approx(k_minus_expected)
                  .epsilon(1e-10));

        // Selected branch Pi = zeta1 - (zeta1 + 1/R) s, coefficient-wise.
        const auto pi = red.pi_branch();
        const double scale = 1.0 + std::abs(ic.zeta1) + ic.inv_R;
        CHECK(std::abs(pi[0] - ic.zeta1) < 1e-10 * scale);
        CHECK(std::abs(pi[1] + (ic.zeta1 + ic.inv_R)) < 1e-10 * scale);
        CHECK(red.branch().tau_prime < 0.0);
        CHECK(red.branch().bounded);
        CHECK(red.lambda_of_k() ==
              doctest::Approx(red.k_minus + pi[1]).epsilon(1e-12));
    }
}

TEST_CASE("discriminant vanishes at both k roots by construction") {
    oracles::Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const auto ic = random_instance(rng);
        const auto p = problem_from(ic);
        const auto red = reduce(p);
        const double p0 = (p.sigma[1] - p.tilde_tau[0]) / 2.0;
        const double p1 = (2.0 * p.sigma[2] - p.tilde_tau[1]) / 2.0;
        double coeff_scale = 1.0;
        for (int i = 0; i < 3; ++i) {
            coeff_scale = std::max(coeff_scale, std::abs(p.tilde_sigma[i]));
        }
        for (double k : {red.k_minus, red.k_plus}) {
            const double c2 = p1 * p1 - p.tilde_sigma[2] + k * p.sigma[2];
            const double c1 = 2.0 * p0 * p1 - p.tilde_sigma[1] + k * p.sigma[1];
            const double c0 = p0 * p0 - p.tilde_sigma[0] + k * p.sigma[0];
            const double disc = c1 * c1 - 4.0 * c2 * c0;
            const double dscale = std::max(1.0, coeff_scale + std::abs(k));
            CHECK(std::abs(disc) < 1e-9 * dscale * dscale);
        }
    }
}

TEST_CASE("all four branches are enumerated with classification") {
    const auto ic = instance_from(10.0, 2.0, -8.0, 1.0);
    const auto red = reduce(problem_from(ic));
    REQUIRE(red.branches.size() == 4);
    int tau_neg = 0, bounded = 0;
    for (const auto& b : red.branches) {
        if (b.tau_prime_negative) ++tau_neg;
        if (b.bounded) ++bounded;
    }
    CHECK(tau_neg >= 1);
    CHECK(bounded >= 1);
    CHECK(red.branches[static_cast<size_t>(red.selected)].tau_prime_negative);
}

TEST_CASE("quantization lambda values") {
    SUBCASE("n = 0 vanishes") {
        const auto ic = instance_from(12.0, 3.0, -6.0, 0.8);
        const auto red = reduce(problem_from(ic));
        const auto [lam, lam_n] = quantization_lambda(red, 0);
        CHECK(lam_n == 0.0);
        CHECK(lam == red.lambda_of_k());
    }
    SUBCASE("n = 3 matches the hand expansion -3 tau' - 3 sigma''") {
        // zeta1 = 0.8 and 1/R = 1.2 give tau' = -(1 + 1.6 + 2.4) = -5 and
        // sigma'' = -2, so lambda_3 = 15 + 6 = 21.
        const double zeta1 = 0.8, delta = 0.7;
        const double C = 5.0, A = 1.0;
        const double L = C - A - (delta * delta - 0.25);  // fixes 1/R = 1.2
        const auto ic = instance_from(A, C, L, zeta1);
        REQUIRE(ic.inv_R == doctest::Approx(1.2).epsilon(1e-12));
        const auto red = reduce(problem_from(ic));
        const auto [lam, lam_n] = quantization_lambda(red, 3);
        CHECK(lam_n == doctest::Approx(21.0).epsilon(1e-12));
        CHECK(lam == red.lambda_of_k());
    }
}

TEST_CASE("printed level expression differs from the generic evaluation") {
    // The printed n-form reads n(n-1) + 2n(1 + 2/R) + 2n zeta1; the generic
    // -n tau' - n(n-1)/2 sigma'' evaluation gives n^2 + 2n zeta1 + 2n/R.
    // Their difference is exactly n (1 + 2/R).
    oracles::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto ic = random_instance(rng);
        const auto red = reduce(problem_from(ic));
        for (int n = 1; n <= 4; ++n) {
            const double generic = red.lambda_n(n);
            const double expected_generic =
                n * n + 2.0 * n * ic.zeta1 + 2.0 * n * ic.inv_R;
            CHECK(generic == doctest::Approx(expected_generic)
                                 .epsilon(1e-10));
            const double printed_form = n * (n - 1.0) +
                                        2.0 * n * (1.0 + 2.0 * ic.inv_R) +
                                        2.0 * n * ic.zeta1;
            CHECK(printed_form - generic ==
                  doctest::Approx(n * (1.0 + 2.0 * ic.inv_R)).epsilon(1e-9));
        }
    }
}

TEST_CASE("no real k raises no_closed_form_error") {
    NUProblem p;
    p.tilde_tau = {0.0, 0.0, 0.0};
    p.sigma = {1.0, 0.0, 0.0};
    p.tilde_sigma = {1.0, 1.0, 0.0};
    CHECK_THROWS_AS(reduce(p), no_closed_form_error);
}

TEST_CASE("no tau' < 0 branch raises branch_selection_error") {
    NUProblem p;
    p.tilde_tau = {1.0, 0.0, 0.0};
    p.sigma = {0.0, 0.0, 1.0};
    p.tilde_sigma = {-0.25, 0.0, 0.75};
    p.domain_lo = 0.5;
    p.domain_hi = 2.0;
    CHECK_THROWS_AS(reduce(p), branch_selection_error);
}

TEST_CASE("weight function for the instance problem") {
    SUBCASE("zeta1 = 1/2, 1/R = 1 gives exponents (1, 1)") {
        // delta = 1/2 requires zeta1^2 - zeta2 + zeta3 = 0; zeta2 = 1,
        // zeta3 = 0.75 with zeta1 = 0.5 does it.
        NUProblem p;
        p.tilde_tau = {1.0, -1.0, 0.0};
        p.sigma = {0.0, 1.0, -1.0};
        p.tilde_sigma = {-0.25, 1.0, -0.75};
        const auto red = reduce(p);
        const auto w = weight_function(red, p);
        CHECK(w.root0 == doctest::Approx(0.0));
        CHECK(w.root1 == doctest::Approx(1.0));
        CHECK(w.exp0 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w.exp1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w.integrable);
        CHECK(w(0.5) == doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("exponents match the Jacobi parameters used downstream") {
        oracles::Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            const auto ic = random_instance(rng);
            const auto p = problem_from(ic);
            const auto w = weight_function(reduce(p), p);
            CHECK(w.exp0 == doctest::Approx(2.0 * ic.zeta1).epsilon(1e-9));
            CHECK(w.exp1 == doctest::Approx(2.0 * ic.inv_R - 1.0).epsilon(1e-9));
        }
    }

    SUBCASE("Pearson equation residual on the spec grid") {
        // Integer-exponent instances keep the numerical derivative exact
        // enough for the 1e-9 gate on (0.01, 0.99).
        for (auto [zeta1, inv_R] : {std::pair{0.5, 1.0}, std::pair{1.0, 1.5}}) {
            const double delta = inv_R - 0.5;
            const double C = 6.0, A = 2.0;
            const double L = C - A - (delta * delta - 0.25);
            const auto ic = instance_from(A, C, L, zeta1);
            REQUIRE(ic.inv_R == doctest::Approx(inv_R).epsilon(1e-12));
            const auto p = problem_from(ic);
            const auto red = reduce(p);
            const auto w = weight_function(red, p);
            const auto tau = red.tau();
            double worst = 0.0, wmax = 0.0;
            for (int i = 0; i < 100; ++i) {
                const double s = 0.01 + 0.98 * i / 99.0;
                const double h = 1e-6;
                const double drho = (w(s + h) - w(s - h)) / (2.0 * h);
                const double sig = s * (1.0 - s);
                const double sigp = 1.0 - 2.0 * s;
                const double resid =
                    sig * drho - ((tau[0] + tau[1] * s) - sigp) * w(s);
                worst = std::max(worst, std::abs(resid));
                wmax = std::max(wmax, std::abs(w(s)));
            }
            CHECK(worst / wmax < 1e-9);
        }
    }

    SUBCASE("generic draws satisfy Pearson away from the endpoints") {
        oracles::Rng rng(23);
        for (int trial = 0; trial < 10; ++trial) {
            const auto ic = random_instance(rng);
            const auto p = problem_from(ic);
            const auto red = reduce(p);
            const auto w = weight_function(red, p);
            const auto tau = red.tau();
            double worst = 0.0, wmax = 0.0;
            for (int i = 0; i < 60; ++i) {
                const double s = 0.05 + 0.90 * i / 59.0;
                const double h = 1e-2 * s;
                // five-point first derivative
                const double drho = (-w(s + 2 * h) + 8 * w(s + h) - 8 * w(s - h) +
                                     w(s - 2 * h)) /
                                    (12.0 * h);
                const double sig = s * (1.0 - s);
                const double sigp = 1.0 - 2.0 * s;
                const double resid =
                    sig * drho - ((tau[0] + tau[1] * s) - sigp) * w(s);
                worst = std::max(worst, std::abs(resid));
                wmax = std::max(wmax, std::abs(w(s)));
            }
            const double scale = 1.0 + std::abs(w.exp0) + std::abs(w.exp1);
            CHECK(worst / (wmax * scale) < 1e-8);
        }
    }

    SUBCASE("non-integrable exponents are flagged, not fatal") {
        NUProblem p;
        p.tilde_tau = {1.0, -1.0, 0.0};
        p.sigma = {0.0, 1.0, -1.0};
        p.tilde_sigma = {-0.25, 1.0, -0.75};
        NUReduction red = reduce(p);
        // Force a tau with tau(0) <= 0: exponent at the left root drops
        // below -1 and the weight stops being integrable on (0, 1).
        red.branches[static_cast<size_t>(red.selected)].tau = {-0.5, -1.0};
        const auto w = weight_function(red, p);
        CHECK(w.exp0 <= -1.0);
        CHECK_FALSE(w.integrable);
    }
}
