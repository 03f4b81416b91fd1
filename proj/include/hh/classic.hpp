#pragma once

#include <cmath>
#include <string>

#include "hh/chebyshev.hpp"
#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/quadrature.hpp"

namespace hh {

/// The weighted mean point xi in (x, y) defined by
///   (omega1/omega0)(xi) = int_x^y omega1 rho / int_x^y omega0 rho.
/// rho must be positive on [x, y].
inline double xi_point(const ChebyshevSystem& sys, const RealFunction& rho, double x, double y,
                       const QuadratureConfig& q = {}, double tol = 1e-13) {
    if (!(x < y)) throw input_error("xi_point: need x < y");
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    auto r = rho.eval;
    const double m0 = gauss_integrate([&](double t) { return w0(t) * r(t); }, x, y, q);
    const double m1 = gauss_integrate([&](double t) { return w1(t) * r(t); }, x, y, q);
    if (!(m0 > 0.0))
        throw degeneracy_error("xi_point: int omega0 rho must be positive (rho > 0 required)");
    return ratio_inverse(sys, m1 / m0, x, y, tol);
}

/// Coefficients of the two-sided integral comparison
///
///   c f(xi)  <=  int_x^y f rho  <=  c1 f(x) + c2 f(y)
///
/// for f convex w.r.t. the pair.  Determinant forms:
///   c  = int omega0 rho / omega0(xi)
///   c1 = [int omega0 rho * omega1(y) - int omega1 rho * omega0(y)] / Det(x, y)
///   c2 = [omega0(x) * int omega1 rho - omega1(x) * int omega0 rho] / Det(x, y)
///
/// Because int omega_i rho = c * omega_i(xi), the same coefficients can
/// be written through the determinant against xi:
///   c1 = c * Det(xi, y) / Det(x, y),   c2 = c * Det(x, xi) / Det(x, y).
/// Both routes are returned so callers can cross-check them.
struct ClassicCoeffs {
    double xi = 0.0;
    double c = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c1_cross = 0.0;  // c * Det(xi, y) / Det(x, y)
    double c2_cross = 0.0;  // c * Det(x, xi) / Det(x, y)
};

inline ClassicCoeffs c_coeffs(const ChebyshevSystem& sys, const RealFunction& rho, double x,
                              double y, const QuadratureConfig& q = {}) {
    if (!(x < y)) throw input_error("c_coeffs: need x < y");
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    auto r = rho.eval;
    const double m0 = gauss_integrate([&](double t) { return w0(t) * r(t); }, x, y, q);
    const double m1 = gauss_integrate([&](double t) { return w1(t) * r(t); }, x, y, q);
    if (!(m0 > 0.0)) throw degeneracy_error("c_coeffs: int omega0 rho must be positive");
    const double det = omega_det(sys, x, y);
    if (!(det > 0.0)) throw degeneracy_error("c_coeffs: Det(x, y) not positive");

    ClassicCoeffs out;
    out.xi = ratio_inverse(sys, m1 / m0, x, y, q.tol < 1e-13 ? q.tol : 1e-13);
    const double w0xi = w0(out.xi);
    if (w0xi == 0.0) throw degeneracy_error("c_coeffs: omega0 vanishes at xi");
    out.c = m0 / w0xi;
    out.c1 = (m0 * w1(y) - m1 * w0(y)) / det;
    out.c2 = (w0(x) * m1 - w1(x) * m0) / det;
    out.c1_cross = out.c * omega_det(sys, out.xi, y) / det;
    out.c2_cross = out.c * omega_det(sys, x, out.xi) / det;
    return out;
}

/// Both sides of the comparison above, evaluated for a concrete f.
struct ClassicReport {
    double xi = 0.0;
    double c = 0.0, c1 = 0.0, c2 = 0.0;
    double lower = 0.0;     // c f(xi)
    double integral = 0.0;  // int_x^y f rho
    double upper = 0.0;     // c1 f(x) + c2 f(y)
    double lower_margin = 0.0;  // integral - lower
    double upper_margin = 0.0;  // upper - integral
};

inline ClassicReport classic_bounds(const RealFunction& f, const ChebyshevSystem& sys,
                                    const RealFunction& rho, double x, double y,
                                    const QuadratureConfig& q = {}) {
    const ClassicCoeffs k = c_coeffs(sys, rho, x, y, q);
    auto fe = f.eval;
    auto r = rho.eval;
    ClassicReport rep;
    rep.xi = k.xi;
    rep.c = k.c;
    rep.c1 = k.c1;
    rep.c2 = k.c2;
    rep.lower = k.c * fe(k.xi);
    rep.integral = gauss_integrate([&](double t) { return fe(t) * r(t); }, x, y, q);
    rep.upper = k.c1 * fe(x) + k.c2 * fe(y);
    rep.lower_margin = rep.integral - rep.lower;
    rep.upper_margin = rep.upper - rep.integral;
    return rep;
}

} // namespace hh
