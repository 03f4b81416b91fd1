#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hh/errors.hpp"
#include "hh/interval.hpp"

namespace hh {

/// A scalar function together with the interval it may be evaluated on
/// and enough metadata to name it in reports.
struct RealFunction {
    std::function<double(double)> eval;
    Interval domain{-1e6, 1e6};
    std::string name;
    std::vector<double> params;

    double operator()(double t) const { return eval(t); }
};

inline RealFunction make_function(std::string name, std::function<double(double)> f,
                                  Interval dom, std::vector<double> params = {}) {
    RealFunction r;
    r.eval = std::move(f);
    r.domain = dom;
    r.name = std::move(name);
    r.params = std::move(params);
    return r;
}

// ---------------------------------------------------------------------------
// Function catalog.  These are the building blocks named in config files:
//   poly:c0,c1,...   c0 + c1*t + c2*t^2 + ...
//   exp:k            e^{k t}
//   abs:c            |t - c|
//   sin:k            sin(k t)
//   const:c          c
// ---------------------------------------------------------------------------

inline const Interval kWideDomain{-1e6, 1e6};

inline RealFunction make_poly(std::vector<double> coeffs, Interval dom = kWideDomain) {
    if (coeffs.empty()) throw input_error("poly: need at least one coefficient");
    std::string nm = "poly:";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        nm += (i ? "," : "") + std::to_string(coeffs[i]);
    auto c = coeffs;
    return make_function(nm,
                         [c](double t) {
                             double acc = 0.0;
                             for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
                             return acc;
                         },
                         dom, std::move(coeffs));
}

inline RealFunction make_exp(double k, Interval dom = kWideDomain) {
    return make_function("exp:" + std::to_string(k),
                         [k](double t) { return std::exp(k * t); }, dom, {k});
}

inline RealFunction make_abs(double center, Interval dom = kWideDomain) {
    return make_function("abs:" + std::to_string(center),
                         [center](double t) { return std::fabs(t - center); }, dom, {center});
}

inline RealFunction make_sin(double freq, Interval dom = kWideDomain) {
    return make_function("sin:" + std::to_string(freq),
                         [freq](double t) { return std::sin(freq * t); }, dom, {freq});
}

inline RealFunction make_const(double c, Interval dom = kWideDomain) {
    return make_function("const:" + std::to_string(c), [c](double) { return c; }, dom, {c});
}

inline RealFunction make_power(double a, Interval dom) {
    return make_function("power:" + std::to_string(a),
                         [a](double t) { return std::pow(t, a); }, dom, {a});
}

/// The trace of f along the segment from x to y, as a function of t in [0,1].
inline RealFunction segment_trace(const RealFunction& f, double x, double y) {
    auto g = f.eval;
    return make_function(f.name + "@[" + std::to_string(x) + "," + std::to_string(y) + "]",
                         [g, x, y](double t) { return g((1.0 - t) * x + t * y); },
                         Interval{-0.5, 1.5});
}

} // namespace hh
