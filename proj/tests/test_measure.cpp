#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hh/measure.hpp"

#include "oracles.hpp"

using namespace hh;

TEST_CASE("lebesgue measure has unit mass and centered mean", "[measure]") {
    const UnitMeasure mu = lebesgue_measure();
    CHECK(mu.is_probability);
    CHECK(mass(mu, 0.0, 1.0) == Catch::Approx(1.0).margin(1e-13));
    CHECK(first_moment(mu) == Catch::Approx(0.5).margin(1e-13));
    CHECK(s_functional(mu) == Catch::Approx(0.125).margin(1e-13));
}

TEST_CASE("atomic measures integrate by summation", "[measure]") {
    const UnitMeasure mu = atomic_measure({{0.0, 0.5}, {1.0, 0.5}});
    CHECK(mu.is_probability);
    CHECK(first_moment(mu) == Catch::Approx(0.5));
    CHECK(s_functional(mu) == Catch::Approx(0.25));
    const double v = integrate(mu, [](double t) { return 3.0 * t + 1.0; }, 0.0, 1.0);
    CHECK(v == Catch::Approx(0.5 * 1.0 + 0.5 * 4.0));
}

TEST_CASE("endpoint atoms respect the inclusion flags", "[measure]") {
    const UnitMeasure mu = atomic_measure({{0.0, 0.25}, {0.5, 0.5}, {1.0, 0.25}});
    CHECK(mass(mu, 0.0, 1.0, true, true) == Catch::Approx(1.0));
    CHECK(mass(mu, 0.0, 1.0, false, true) == Catch::Approx(0.75));
    CHECK(mass(mu, 0.0, 0.5, true, false) == Catch::Approx(0.25));
    CHECK(mass(mu, 0.0, 0.5, true, true) == Catch::Approx(0.75));
    CHECK(mass(mu, 0.5, 1.0, false, true) == Catch::Approx(0.25));
}

TEST_CASE("densities combine with atoms", "[measure]") {
    UnitMeasure mu =
        make_measure(make_const(0.5, Interval{-0.5, 1.5}), {{0.5, 0.5}});
    mu.is_probability = true;
    CHECK(mass(mu, 0.0, 1.0) == Catch::Approx(1.0).margin(1e-13));
    CHECK(first_moment(mu) == Catch::Approx(0.5 * 0.5 + 0.5 * 0.5).margin(1e-13));
    // the density ignores the inclusion flags; only the atom moves
    CHECK(mass(mu, 0.0, 0.5, true, false) == Catch::Approx(0.25).margin(1e-13));
}

TEST_CASE("measure construction validates atoms", "[measure]") {
    CHECK_THROWS_AS(atomic_measure({{1.5, 1.0}}), input_error);
    CHECK_THROWS_AS(atomic_measure({{0.5, 0.0}}), input_error);
    CHECK_THROWS_AS(atomic_measure({{0.5, -1.0}}), input_error);
}

TEST_CASE("probability contract is enforced where required", "[measure]") {
    const UnitMeasure half = atomic_measure({{0.5, 0.5}});
    CHECK_FALSE(half.is_probability);
    CHECK_THROWS_AS(require_probability(half), contract_error);
    CHECK_NOTHROW(require_probability(lebesgue_measure()));
}

TEST_CASE("block functional needs support on both sides of the mean", "[measure]") {
    // a single atom has all its mass at the mean
    CHECK_THROWS_AS(s_functional(atomic_measure({{0.5, 1.0}})), contract_error);
}

TEST_CASE("block functional matches a direct computation for a skewed density",
          "[measure]") {
    // density 2t on (0,1): mean 2/3; left block [0, 2/3], right block (2/3, 1]
    UnitMeasure mu = make_measure(
        make_function("ramp", [](double t) { return 2.0 * t; }, Interval{-0.5, 1.5}));
    mu.is_probability = true;
    const double m1 = first_moment(mu);
    CHECK(m1 == Catch::Approx(2.0 / 3.0).margin(1e-12));
    const double mass_l = oracle::riemann([](double t) { return 2.0 * t; }, 0.0, 2.0 / 3.0, 40000);
    const double mass_r = oracle::riemann([](double t) { return 2.0 * t; }, 2.0 / 3.0, 1.0, 40000);
    const double mom_l =
        oracle::riemann([](double t) { return 2.0 * t * t; }, 0.0, 2.0 / 3.0, 40000);
    const double mom_r =
        oracle::riemann([](double t) { return 2.0 * t * t; }, 2.0 / 3.0, 1.0, 40000);
    CHECK(s_functional(mu) == Catch::Approx(mass_l * mom_r - mass_r * mom_l).margin(1e-8));
}
