#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/quadrature.hpp"

namespace hh {

/// A pair (omega0, omega1) on an open interval, intended to satisfy
///   omega0 > 0  and  Det(x, y) := omega0(x) omega1(y) - omega1(x) omega0(y) > 0
/// for all x < y in the domain.  check_chebyshev() probes exactly that.
struct ChebyshevSystem {
    RealFunction omega0;
    RealFunction omega1;
    Interval domain{-1e6, 1e6};
    std::string name;
};

inline ChebyshevSystem make_system(std::string name, RealFunction w0, RealFunction w1,
                                   Interval dom) {
    ChebyshevSystem s;
    s.omega0 = std::move(w0);
    s.omega1 = std::move(w1);
    s.domain = dom;
    s.name = std::move(name);
    return s;
}

/// Det(x, y) = omega0(x) omega1(y) - omega1(x) omega0(y).
/// Antisymmetric; positive for x < y when the pair really is a
/// positive two-function Chebyshev system.
inline double omega_det(const ChebyshevSystem& sys, double x, double y) {
    return sys.omega0(x) * sys.omega1(y) - sys.omega1(x) * sys.omega0(y);
}

struct ChebyshevCheck {
    bool pass = false;
    bool omega0_positive = false;
    bool det_positive = false;
    double min_omega0 = 0.0;     // smallest omega0 value seen
    double min_det = 0.0;        // smallest Det(x_i, x_j), i < j, seen
    std::optional<std::pair<double, double>> first_violation;
    std::string detail;
};

/// Probe omega0 > 0 and Det > 0 on a uniform grid over the domain.
/// The grid is inset from the open endpoints by 1e-6 of the width and
/// covers all ordered pairs of grid points.
inline ChebyshevCheck check_chebyshev(const ChebyshevSystem& sys, int grid_n = 257) {
    if (grid_n < 3) throw input_error("check_chebyshev: grid_n must be >= 3");
    const Interval box = sys.domain.inset();
    std::vector<double> ts(grid_n), w0(grid_n), w1(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        ts[i] = box.lo + box.width() * i / (grid_n - 1);
        w0[i] = sys.omega0(ts[i]);
        w1[i] = sys.omega1(ts[i]);
        if (!std::isfinite(w0[i]) || !std::isfinite(w1[i]))
            throw evaluation_error("check_chebyshev: non-finite omega at t = " + std::to_string(ts[i]));
    }
    ChebyshevCheck r;
    r.omega0_positive = true;
    r.det_positive = true;
    r.min_omega0 = w0[0];
    r.min_det = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        r.min_omega0 = std::min(r.min_omega0, w0[i]);
        if (w0[i] <= 0.0 && r.omega0_positive) {
            r.omega0_positive = false;
            if (!r.first_violation) {
                r.first_violation = {ts[i], ts[i]};
                r.detail = "omega0 <= 0 at t = " + std::to_string(ts[i]);
            }
        }
    }
    for (int i = 0; i < grid_n && r.det_positive; ++i) {
        for (int j = i + 1; j < grid_n; ++j) {
            const double d = w0[i] * w1[j] - w1[i] * w0[j];
            r.min_det = std::min(r.min_det, d);
            if (d <= 0.0) {
                r.det_positive = false;
                if (!r.first_violation) {
                    r.first_violation = {ts[i], ts[j]};
                    r.detail = "Det(" + std::to_string(ts[i]) + ", " + std::to_string(ts[j]) +
                               ") = " + std::to_string(d) + " <= 0";
                }
                break;
            }
        }
    }
    r.pass = r.omega0_positive && r.det_positive;
    return r;
}

/// Solve (omega1/omega0)(u) = v for u in [lo, hi] by bisection.
/// The ratio is strictly increasing for a positive Chebyshev pair, so a
/// unique solution exists whenever v lies between the endpoint ratios.
inline double ratio_inverse(const ChebyshevSystem& sys, double v, double lo, double hi,
                            double tol = 1e-12) {
    if (!(lo < hi)) throw input_error("ratio_inverse: need lo < hi");
    auto ratio = [&sys](double u) {
        const double w0 = sys.omega0(u);
        if (w0 == 0.0) throw evaluation_error("ratio_inverse: omega0 vanishes at u = " + std::to_string(u));
        return sys.omega1(u) / w0;
    };
    const double rlo = ratio(lo), rhi = ratio(hi);
    if (!(rlo < rhi))
        throw internal_error("ratio_inverse: omega1/omega0 not increasing on bracket");
    if (v < rlo || v > rhi)
        throw range_error("ratio_inverse: value " + std::to_string(v) + " outside ratio range [" +
                          std::to_string(rlo) + ", " + std::to_string(rhi) + "]");
    if (v == rlo) return lo;
    if (v == rhi) return hi;
    return bisect([&](double u) { return ratio(u) - v; }, lo, hi, tol).x;
}

/// The unique span combination matching f at x and y:
///   u -> f(x) Det(u, y)/Det(x, y) + f(y) Det(x, u)/Det(x, y).
inline RealFunction interpolant(const ChebyshevSystem& sys, double x, double y, double fx,
                                double fy) {
    if (!(x < y)) throw input_error("interpolant: need x < y");
    const double det = omega_det(sys, x, y);
    if (!(det > 0.0)) throw degeneracy_error("interpolant: Det(x, y) not positive");
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    const double w0x = w0(x), w1x = w1(x), w0y = w0(y), w1y = w1(y);
    return make_function(
        "interp", [=](double u) {
            const double duy = w0(u) * w1y - w1(u) * w0y;
            const double dxu = w0x * w1(u) - w1x * w0(u);
            return (fx * duy + fy * dxu) / det;
        },
        sys.domain);
}

// ---------------------------------------------------------------------------
// System catalog:
//   linear      (1, t)
//   exp         (1, e^t)
//   trig        (cos, sin) on (-pi/2 + delta, pi/2 - delta)
//   power(a,b)  (t^a, t^b) on a positive interval, a < b
// plus arbitrary pairs built from the function catalog via make_system.
// ---------------------------------------------------------------------------

inline ChebyshevSystem system_linear(Interval dom = {-10.0, 10.0}) {
    return make_system("linear", make_const(1.0, dom), make_poly({0.0, 1.0}, dom), dom);
}

inline ChebyshevSystem system_exp(Interval dom = {-3.0, 3.0}) {
    return make_system("exp", make_const(1.0, dom), make_exp(1.0, dom), dom);
}

inline ChebyshevSystem system_trig(double delta = 0.1) {
    if (!(delta > 0.0) || !(delta < M_PI / 4))
        throw input_error("system_trig: delta must be in (0, pi/4)");
    Interval dom{-M_PI / 2 + delta, M_PI / 2 - delta};
    return make_system("trig",
                       make_function("cos", [](double t) { return std::cos(t); }, dom),
                       make_function("sin", [](double t) { return std::sin(t); }, dom), dom);
}

inline ChebyshevSystem system_power(double a, double b, Interval dom = {0.1, 5.0}) {
    if (!(a < b)) throw input_error("system_power: need a < b");
    if (!(dom.lo > 0.0)) throw input_error("system_power: domain must be positive");
    return make_system("power(" + std::to_string(a) + "," + std::to_string(b) + ")",
                       make_power(a, dom), make_power(b, dom), dom);
}

} // namespace hh
