#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "hh/config.hpp"
#include "hh/function.hpp"
#include "hh/interval.hpp"
#include "hh/quadrature.hpp"

#include "oracles.hpp"

using namespace hh;

TEST_CASE("interval validates its endpoints", "[interval]") {
    CHECK_THROWS_AS(Interval(1.0, 1.0), input_error);
    CHECK_THROWS_AS(Interval(2.0, 1.0), input_error);
    CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), input_error);
    const Interval iv{0.0, 2.0};
    CHECK(iv.width() == 2.0);
    CHECK(iv.contains(1.0));
    CHECK_FALSE(iv.contains(0.0));  // open at both ends
    CHECK_FALSE(iv.contains(2.0));
    const Interval in = iv.inset(0.25);
    CHECK(in.lo == Catch::Approx(0.5));
    CHECK(in.hi == Catch::Approx(1.5));
}

TEST_CASE("function catalog evaluates and names itself", "[function]") {
    const RealFunction p = make_poly({1.0, 2.0, 3.0});
    CHECK(p(2.0) == Catch::Approx(1.0 + 4.0 + 12.0));
    CHECK(p.name.rfind("poly:", 0) == 0);
    CHECK(make_exp(2.0)(0.5) == Catch::Approx(std::exp(1.0)));
    CHECK(make_abs(1.0)(-1.0) == Catch::Approx(2.0));
    CHECK(make_sin(3.0)(0.5) == Catch::Approx(std::sin(1.5)));
    CHECK(make_const(4.5)(123.0) == 4.5);
    CHECK(make_power(0.5, {0.1, 5.0})(4.0) == Catch::Approx(2.0));
}

TEST_CASE("segment trace reparameterizes onto the unit interval", "[function]") {
    const RealFunction f = make_poly({0.0, 1.0});
    const RealFunction g = segment_trace(f, 2.0, 6.0);
    CHECK(g(0.0) == Catch::Approx(2.0));
    CHECK(g(0.5) == Catch::Approx(4.0));
    CHECK(g(1.0) == Catch::Approx(6.0));
}

TEST_CASE("gauss rule integrates high-degree polynomials to machine precision",
          "[quadrature]") {
    // 16 nodes per panel are exact through degree 31 on each panel.
    QuadratureConfig q;
    q.panels = 4;
    q.nodes_per_panel = 16;
    const double got = gauss_integrate([](double t) { return std::pow(t, 21.0); }, 0.0, 1.0, q);
    CHECK(got == Catch::Approx(1.0 / 22.0).epsilon(1e-14));
    const double sine = gauss_integrate([](double t) { return std::sin(t); }, 0.0, 1.0, q);
    CHECK(sine == Catch::Approx(1.0 - std::cos(1.0)).epsilon(1e-14));
}

TEST_CASE("gauss rule matches a brute-force oracle on a generic integrand", "[quadrature]") {
    auto f = [](double t) { return std::exp(-t) * std::cos(3.0 * t); };
    const double got = gauss_integrate(f, -1.0, 2.0);
    const double want = oracle::tanh_sinh(f, -1.0, 2.0);
    CHECK(got == Catch::Approx(want).margin(1e-12));
}

TEST_CASE("gauss rule flips sign with the orientation", "[quadrature]") {
    auto f = [](double t) { return t * t + 1.0; };
    CHECK(gauss_integrate(f, 0.0, 1.0) == Catch::Approx(-gauss_integrate(f, 1.0, 0.0)));
    CHECK(gauss_integrate(f, 1.0, 1.0) == 0.0);
}

TEST_CASE("gauss rule rejects non-finite integrand values", "[quadrature]") {
    // log is NaN on the negative half of the range
    CHECK_THROWS_AS(gauss_integrate([](double t) { return std::log(t); }, -1.0, 1.0),
                    evaluation_error);
}

TEST_CASE("quadrature panel count can come from the environment", "[quadrature]") {
    // default_quadrature honors HH_QUAD_PANELS; the suite leaves the
    // variable unset, so the default applies.
    const QuadratureConfig q = default_quadrature();
    if (std::getenv("HH_QUAD_PANELS") == nullptr) CHECK(q.panels == 64);
    CHECK(q.nodes_per_panel == 16);
}

TEST_CASE("bisection finds a monotone root and reports no-bracket", "[quadrature]") {
    const BisectResult r = bisect([](double t) { return t * t - 2.0; }, 0.0, 2.0, 1e-13);
    CHECK(r.x == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    CHECK_THROWS_AS(bisect([](double t) { return t * t + 1.0; }, 0.0, 2.0), range_error);
}

TEST_CASE("doubles serialize with round-trip precision", "[config]") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-3.0) == "-3");
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("function specs parse and round-trip", "[config]") {
    const FunctionSpec f = parse_function_spec("poly:1,-2,0.5");
    REQUIRE(f.kind == "poly");
    REQUIRE(f.params.size() == 3);
    CHECK(f.params[1] == -2.0);
    CHECK(parse_function_spec(serialize(f)) == f);

    const FunctionSpec e = parse_function_spec("exp:2");
    CHECK(resolve_function(e)(1.0) == Catch::Approx(std::exp(2.0)));
    CHECK(parse_function_spec(serialize(e)) == e);

    CHECK_THROWS_AS(parse_function_spec("nope:1"), parse_error);
    CHECK_THROWS_AS(parse_function_spec("poly:1,spam"), parse_error);
    CHECK_THROWS_AS(parse_function_spec("exp:1,2"), parse_error);
}

TEST_CASE("system specs parse and round-trip", "[config]") {
    CHECK(parse_system_spec("linear").kind == "linear");
    CHECK(parse_system_spec("trig:0.2").params == std::vector<double>{0.2});
    const SystemSpec p = parse_system_spec("power:0.5,2");
    CHECK(p.params == std::vector<double>{0.5, 2.0});
    CHECK(parse_system_spec(serialize(p)) == p);
    CHECK_THROWS_AS(parse_system_spec("power:1"), parse_error);
    CHECK_THROWS_AS(parse_system_spec("linear:3"), parse_error);
    CHECK_THROWS_AS(parse_system_spec("weird"), parse_error);
}

TEST_CASE("measure specs parse and round-trip", "[config]") {
    CHECK(parse_measure_spec("lebesgue").lebesgue);
    const MeasureSpec atoms = parse_measure_spec("atoms:[(0,0.5),(1,0.5)]");
    REQUIRE(atoms.atoms.size() == 2);
    CHECK(atoms.atoms[0] == std::pair<double, double>{0.0, 0.5});
    CHECK(parse_measure_spec(serialize(atoms)) == atoms);

    const MeasureSpec mixed = parse_measure_spec("density:const:0.5+atoms:[(0.5,0.5)]");
    REQUIRE(mixed.density.has_value());
    CHECK(mixed.density->kind == "const");
    REQUIRE(mixed.atoms.size() == 1);
    CHECK(parse_measure_spec(serialize(mixed)) == mixed);

    CHECK_THROWS_AS(parse_measure_spec("atoms:[(0,0.5),(1)]"), parse_error);
    CHECK_THROWS_AS(parse_measure_spec("spam"), parse_error);
}

TEST_CASE("error specs parse and round-trip", "[config]") {
    CHECK(parse_error_spec("zero").kind == "zero");
    CHECK(parse_error_spec("measured").kind == "measured");
    CHECK(parse_error_spec("const:0.25").value == 0.25);

    const ErrorSpec p2 = parse_error_spec("power2:[(1,1,0.5)]");
    REQUIRE(p2.nu2.atoms.size() == 1);
    CHECK(p2.nu2.atoms[0].p == 1.0);
    CHECK(p2.nu2.atoms[0].c == 0.5);
    CHECK(parse_error_spec(serialize(p2)) == p2);

    const ErrorSpec p3 = parse_error_spec("power3:[(1,2,2.5,0.5),(0,0,1,1)]");
    REQUIRE(p3.nu3.atoms.size() == 2);
    CHECK(parse_error_spec(serialize(p3)) == p3);

    const ErrorSpec dy = parse_error_spec("dyadic:alpha=poly:0,1,n=20");
    REQUIRE(dy.alpha.has_value());
    CHECK(dy.alpha->kind == "poly");
    CHECK(dy.n_terms == 20);
    CHECK(parse_error_spec(serialize(dy)) == dy);

    CHECK_THROWS_AS(parse_error_spec("power2:[(1,1)]"), parse_error);
    CHECK_THROWS_AS(parse_error_spec("dyadic:alpha=poly:0,1"), parse_error);
    CHECK_THROWS_AS(parse_error_spec("wat:3"), parse_error);
}

TEST_CASE("config files parse with comments and report line numbers", "[config]") {
    const ConfigDoc doc = parse_config_text("# header\n"
                                            "system = linear\n"
                                            "\n"
                                            "error = power2:[(1,1,0.5)]  # trailing\n");
    REQUIRE(doc.entries.size() == 2);
    CHECK(doc.entries[0].key == "system");
    CHECK(doc.entries[1].line == 4);
    CHECK(doc.get("missing", "fallback") == "fallback");

    try {
        parse_config_text("system = linear\nbroken line\n");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
