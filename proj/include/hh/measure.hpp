#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/quadrature.hpp"

namespace hh {

/// Measure on [0, 1]: an absolutely continuous part given by a density
/// plus finitely many point masses.  Atom weights must be positive;
/// atom positions must lie in [0, 1].
struct UnitMeasure {
    RealFunction density;                       // may be identically zero
    std::vector<std::pair<double, double>> atoms;  // (position, weight)
    bool is_probability = false;
    std::string name;
};

inline UnitMeasure make_measure(RealFunction density,
                                std::vector<std::pair<double, double>> atoms = {},
                                std::string name = std::string()) {
    UnitMeasure mu;
    mu.density = std::move(density);
    mu.name = name.empty() ? "density:" + mu.density.name : std::move(name);
    for (auto& [t, w] : atoms) {
        if (t < 0.0 || t > 1.0)
            throw input_error("UnitMeasure: atom position " + std::to_string(t) + " outside [0, 1]");
        if (!(w > 0.0))
            throw input_error("UnitMeasure: atom weight must be positive");
    }
    mu.atoms = std::move(atoms);
    return mu;
}

inline UnitMeasure lebesgue_measure() {
    UnitMeasure mu = make_measure(make_const(1.0, Interval{-0.5, 1.5}), {}, "lebesgue");
    mu.is_probability = true;
    return mu;
}

inline UnitMeasure atomic_measure(std::vector<std::pair<double, double>> atoms) {
    UnitMeasure mu = make_measure(make_const(0.0, Interval{-0.5, 1.5}), std::move(atoms), "atoms");
    double mass = 0.0;
    for (auto& [t, w] : mu.atoms) mass += w;
    mu.is_probability = std::fabs(mass - 1.0) <= 1e-10;
    return mu;
}

/// Integral of g against mu over the interval from a to b within [0, 1].
/// The density part ignores the inclusion flags (endpoints carry no
/// Lebesgue mass); atoms at a or b are counted only when the matching
/// flag is set.
inline double integrate(const UnitMeasure& mu, const std::function<double(double)>& g, double a,
                        double b, bool include_a = true, bool include_b = true,
                        const QuadratureConfig& q = {}) {
    if (!(a <= b)) throw input_error("integrate: need a <= b");
    if (a < 0.0 || b > 1.0) throw input_error("integrate: bounds must lie in [0, 1]");
    double total = 0.0;
    if (a < b) {
        auto dens = mu.density.eval;
        total += gauss_integrate([&](double t) { return g(t) * dens(t); }, a, b, q);
    }
    for (const auto& [t, w] : mu.atoms) {
        const bool inside = (t > a && t < b) || (t == a && include_a) || (t == b && include_b);
        if (inside) {
            const double v = g(t);
            if (!std::isfinite(v))
                throw evaluation_error("integrate: integrand non-finite at atom t = " + std::to_string(t));
            total += w * v;
        }
    }
    return total;
}

/// Total mass of mu on the selected interval.
inline double mass(const UnitMeasure& mu, double a, double b, bool include_a = true,
                   bool include_b = true, const QuadratureConfig& q = {}) {
    return integrate(mu, [](double) { return 1.0; }, a, b, include_a, include_b, q);
}

inline void require_probability(const UnitMeasure& mu, const QuadratureConfig& q = {},
                                double tol = 1e-10) {
    if (!mu.is_probability)
        throw contract_error("measure '" + mu.name + "' is not marked as a probability measure");
    const double m = mass(mu, 0.0, 1.0, true, true, q);
    if (std::fabs(m - 1.0) > tol)
        throw contract_error("measure '" + mu.name + "' has total mass " + std::to_string(m));
}

/// First moment mu1 = integral of t over [0, 1].  Requires a
/// probability measure.
inline double first_moment(const UnitMeasure& mu, const QuadratureConfig& q = {}) {
    require_probability(mu, q);
    return integrate(mu, [](double t) { return t; }, 0.0, 1.0, true, true, q);
}

/// The split functional built from the blocks [0, mu1] and (mu1, 1]:
///   S(mu) = mu([0, mu1]) * int_{(mu1, 1]} t dmu  -  mu((mu1, 1]) * int_{[0, mu1]} t dmu.
/// An atom sitting exactly at mu1 belongs to the left block.  Positive
/// whenever the support is not a single point; a singleton support is
/// reported as a contract error because every downstream use divides by S.
inline double s_functional(const UnitMeasure& mu, const QuadratureConfig& q = {}) {
    const double mu1 = first_moment(mu, q);
    const double mass_left = mass(mu, 0.0, mu1, true, true, q);
    const double mass_right = mass(mu, mu1, 1.0, false, true, q);
    if (!(mass_left > 0.0) || !(mass_right > 0.0))
        throw contract_error("s_functional: support of '" + mu.name +
                             "' lies on one side of its mean (S would be 0)");
    const double t_left = integrate(mu, [](double t) { return t; }, 0.0, mu1, true, true, q);
    const double t_right = integrate(mu, [](double t) { return t; }, mu1, 1.0, false, true, q);
    return mass_left * t_right - mass_right * t_left;
}

} // namespace hh
