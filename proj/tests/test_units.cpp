#include <doctest.h>

#include <cmath>

#include "fhidep/errors.hpp"
#include "fhidep/units.hpp"
#include "support/test_oracles.hpp"

using namespace fhidep;

TEST_CASE("mass_energy identity and linearity") {
    UnitSystem units;
    CHECK(mass_energy(units, 1.0) == units.amu_to_eV_per_c2);
    CHECK(mass_energy(units, 2.0) == 2.0 * mass_energy(units, 1.0));
}

TEST_CASE("mass_energy golden value for the lightest registry molecule") {
    UnitSystem units;
    // 0.5039 amu with the CODATA-2018 conversion, frozen from a 40-digit
    // evaluation.
    CHECK(mass_energy(units, 0.5039) ==
          doctest::Approx(469379878.209438).epsilon(1e-14));
}

TEST_CASE("mass_energy rejects bad input") {
    UnitSystem units;
    CHECK_THROWS_AS(mass_energy(units, 0.0), invalid_parameter);
    CHECK_THROWS_AS(mass_energy(units, -1.0), invalid_parameter);
    CHECK_THROWS_AS(mass_energy(units, std::nan("")), invalid_parameter);
    CHECK_THROWS_AS(mass_energy(units, INFINITY), invalid_parameter);
}

TEST_CASE("mass_energy round-trips and is strictly monotone") {
    UnitSystem units;
    oracles::Rng rng(2024);
    double prev_x = 0.0, prev_y = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(1e-6, 300.0);
        const double y = mass_energy(units, x);
        CHECK(y / units.amu_to_eV_per_c2 == doctest::Approx(x).epsilon(1e-15));
        if (prev_x > 0.0 && x > prev_x) CHECK(y > prev_y);
        if (prev_x > 0.0 && x < prev_x) CHECK(y < prev_y);
        prev_x = x;
        prev_y = y;
    }
}

TEST_CASE("units config parsing") {
    SUBCASE("defaults when empty") {
        const UnitSystem u = parse_units_config("");
        CHECK(u.hbar_eV_ns == doctest::Approx(6.582119569e-7).epsilon(1e-15));
        CHECK(u.amu_to_eV_per_c2 == doctest::Approx(931.49410242e6).epsilon(1e-15));
    }
    SUBCASE("override with comments and blank lines") {
        const UnitSystem u = parse_units_config(
            "# sensitivity run\n\nhbar_eV_ns = 1.0\namu_to_eV_per_c2 = 2.5 # note\n");
        CHECK(u.hbar_eV_ns == 1.0);
        CHECK(u.amu_to_eV_per_c2 == 2.5);
    }
    SUBCASE("unknown key") {
        CHECK_THROWS_AS(parse_units_config("hbar = 1\n"), parse_error);
    }
    SUBCASE("bad value") {
        CHECK_THROWS_AS(parse_units_config("hbar_eV_ns = fast\n"), parse_error);
    }
    SUBCASE("non-positive constants rejected") {
        CHECK_THROWS_AS(parse_units_config("hbar_eV_ns = -1\n"), invalid_parameter);
        CHECK_THROWS_AS(parse_units_config("amu_to_eV_per_c2 = 0\n"), invalid_parameter);
    }
}
