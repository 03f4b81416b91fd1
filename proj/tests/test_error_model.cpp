#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hh/error_model.hpp"
#include "hh/function.hpp"

#include "oracles.hpp"

using namespace hh;

TEST_CASE("distance to the nearest integer is periodic and symmetric", "[errmodel]") {
    CHECK(dist_to_integers(0.0) == 0.0);
    CHECK(dist_to_integers(0.5) == 0.5);
    CHECK(dist_to_integers(1.25) == Catch::Approx(0.25));
    CHECK(dist_to_integers(-0.25) == Catch::Approx(0.25));
    CHECK(dist_to_integers(7.0) == 0.0);
}

TEST_CASE("dyadic series hits a closed form at t = 1/3", "[errmodel]") {
    // with alpha(u) = u the terms form a geometric series:
    // 2^n/3 is always 1/3 away from the integers, so each term is
    // 2^{-n} * 2 * (1/3), giving 4/3 * (1 - 2^{-n_terms}).
    DyadicErrorModel m;
    m.alpha = make_function("id", [](double u) { return u; }, kWideDomain);
    m.n_terms = 40;
    const double want = 4.0 / 3.0 * (1.0 - std::pow(2.0, -40.0));
    CHECK(dyadic_eta(m, 1.0, 1.0 / 3.0) == Catch::Approx(want).epsilon(1e-13));
    CHECK(dyadic_eta(m, 1.0, 0.0) == 0.0);
    CHECK(dyadic_eta(m, 1.0, 1.0) == 0.0);
}

TEST_CASE("dyadic series matches the brute-force definition", "[errmodel]") {
    DyadicErrorModel m;
    m.alpha = make_function("id", [](double u) { return u; }, kWideDomain);
    m.n_terms = 30;
    for (double t : {0.1, 0.37, 0.5, 0.73, 0.99}) {
        CHECK(dyadic_eta(m, 0.8, t) ==
              Catch::Approx(oracle::takagi_eta(t, 0.8, 30)).epsilon(1e-12));
    }
}

TEST_CASE("dyadic truncation tail is controlled", "[errmodel]") {
    DyadicErrorModel m20;
    m20.alpha = make_function("id", [](double u) { return u; }, kWideDomain);
    m20.n_terms = 20;
    DyadicErrorModel m40 = m20;
    m40.n_terms = 40;
    const double tail = dyadic_tail_bound(m20, 1.0);
    CHECK(tail > 0.0);
    for (double t : {0.2, 1.0 / 3.0, 0.61})
        CHECK(std::fabs(dyadic_eta(m40, 1.0, t) - dyadic_eta(m20, 1.0, t)) <= tail);
}

TEST_CASE("power error atoms evaluate with the 0^0 = 1 convention", "[errmodel]") {
    PowerMeasure2 nu{{PowerAtom2{0.0, 0.0, 2.0}}};
    // t^0 (1-t)^0 s^{-1} at s=2 -> 2 * 1 * 1 * 0.5
    CHECK(power_eta2(nu, 0.0, 2.0) == Catch::Approx(1.0));
    CHECK(power_eta2(nu, 1.0, 2.0) == Catch::Approx(1.0));

    PowerMeasure2 lin{{PowerAtom2{1.0, 1.0, 1.0}}};
    CHECK(power_eta2(lin, 0.5, 2.0) == Catch::Approx(0.25 * 2.0));
    CHECK(power_eta2(lin, 0.0, 2.0) == 0.0);

    PowerMeasure3 nu3{{PowerAtom3{1.0, 1.0, 2.0, 3.0}}};
    CHECK(power_eta3(nu3, 0.5, 2.0) == Catch::Approx(3.0 * 0.25 * 4.0));

    CHECK_THROWS_AS(power_eta2(lin, -0.1, 1.0), input_error);
    CHECK_THROWS_AS(power_eta2(lin, 1.1, 1.0), input_error);
}

TEST_CASE("beta function matches a quadrature oracle", "[errmodel]") {
    CHECK(beta_fn(1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(beta_fn(2.0, 2.0) == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
    // B(2.5, 1.5) = pi/16
    CHECK(beta_fn(2.5, 1.5) == Catch::Approx(0.19634954084936207).epsilon(1e-13));
    // smooth integrands only; the oracle loses digits at endpoint
    // singularities, which the analytic spot checks below cover instead
    for (double p : {1.3, 1.7, 3.2}) {
        for (double q : {1.1, 2.5}) {
            const double want = oracle::tanh_sinh(
                [&](double t) { return std::pow(t, p - 1.0) * std::pow(1.0 - t, q - 1.0); }, 0.0,
                1.0);
            CHECK(beta_fn(p, q) == Catch::Approx(want).epsilon(1e-11));
        }
    }
    const double pi = std::acos(-1.0);
    CHECK(beta_fn(0.5, 0.5) == Catch::Approx(pi).epsilon(1e-13));
    CHECK(beta_fn(0.5, 1.5) == Catch::Approx(pi / 2.0).epsilon(1e-13));
    CHECK_THROWS_AS(beta_fn(0.0, 1.0), input_error);
}

TEST_CASE("kernel endpoints carry frozen values", "[errmodel]") {
    CHECK(phi_kernel(1.0, 1e-7) <= 1e-7);
    // analytic limit at 0: 1 + sum 2/(P m^2) over m >= 1 with P = 2 bit_floor(m)
    CHECK(phi_kernel(0.0, 1e-7) == Catch::Approx(3.2898681336964528).margin(1e-6));
    CHECK(phi_kernel(2.0 / 3.0, 1e-6) >= 1.0);
}

TEST_CASE("kernel tolerance tightens monotonically", "[errmodel]") {
    const double coarse = phi_kernel(0.3, 1e-4);
    const double fine = phi_kernel(0.3, 1e-8);
    CHECK(std::fabs(coarse - fine) < 2e-4);
    CHECK_THROWS_AS(phi_kernel(-0.1), input_error);
    CHECK_THROWS_AS(phi_kernel(1.1), input_error);
}

TEST_CASE("measured grids reproduce multilinear data exactly", "[errmodel]") {
    const MeasuredGrid grid = sample_grid(
        0.0, 2.0, 9, [](double v, double w, double u) { return 2.0 * v - w + 0.5 * u + 1.0; });
    // trilinear interpolation is exact on trilinear functions
    CHECK(grid.lookup(0.31, 1.77, 0.9) ==
          Catch::Approx(2.0 * 0.31 - 1.77 + 0.45 + 1.0).epsilon(1e-13));
    // clamped outside the box
    CHECK(grid.lookup(-5.0, 0.0, 0.0) == Catch::Approx(grid.lookup(0.0, 0.0, 0.0)));
    // never negative, even when the data is
    const MeasuredGrid neg =
        sample_grid(0.0, 1.0, 5, [](double, double, double) { return -3.0; });
    CHECK(neg.lookup(0.5, 0.5, 0.5) == 0.0);
}

TEST_CASE("error model dispatch routes queries to the right backend", "[errmodel]") {
    const ErrorModel zero = ErrorModel::zero();
    CHECK(zero.is_zero());
    CHECK(zero(TripleQuery{0, 0, 0, 0.5, 1.0}) == 0.0);

    const ErrorModel c = ErrorModel::constant(0.25);
    CHECK(c.is_constant());
    CHECK(c(TripleQuery{1, 2, 3, 0.9, 4.0}) == 0.25);

    const ErrorModel p2 = ErrorModel::power2(PowerMeasure2{{PowerAtom2{1, 1, 1}}});
    CHECK(p2(TripleQuery{0, 0, 0, 0.5, 1.0}) == Catch::Approx(0.25));

    const ErrorModel dy =
        ErrorModel::dyadic(make_function("id", [](double u) { return u; }, kWideDomain), 40);
    CHECK(dy(TripleQuery{0, 0, 0, 0.5, 1.0}) == Catch::Approx(1.0).epsilon(1e-12));

    const ErrorModel grid = ErrorModel::measured(
        sample_grid(0.0, 1.0, 5, [](double v, double w, double u) { return v + w + u; }));
    CHECK(grid(TripleQuery{0.25, 0.5, 0.25, 0.0, 0.0}) == Catch::Approx(1.0));
}
