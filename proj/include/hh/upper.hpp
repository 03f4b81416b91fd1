#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "hh/bound_report.hpp"
#include "hh/error_model.hpp"
#include "hh/errors.hpp"
#include "hh/lower.hpp"
#include "hh/mean_system.hpp"
#include "hh/measure.hpp"

namespace hh {

/// Error side of the endpoint upper bound:
///   int Lambda(t) eps_{x,y}(M(t)) dmu(t).
/// Measured grids are queried at (x, y, M(t)); power and dyadic models
/// at the straight-line position (M(t) - x)/(y - x) with segment
/// length y - x.
inline double upper_error_thm5(const MeanSystem& ms, const ErrorModel& eps, double x, double y,
                               const QuadratureConfig& q = {}) {
    if (!(x < y)) throw input_error("upper_error_thm5: need x < y");
    const MeanSection sec = ms.section(x, y);
    return integrate(
        ms.base,
        [&](double t) {
            const double m = sec.mean(t);
            TripleQuery qq;
            qq.v = x;
            qq.w = y;
            qq.u = m;
            qq.t = std::clamp((m - x) / (y - x), 0.0, 1.0);
            qq.s = y - x;
            return sec.lambda(t) * eps(qq);
        },
        0.0, 1.0, true, true, q);
}

/// Endpoint upper bound for the weighted mean of f:
///
///   int Lambda f(M) dmu <= [Det(M0,y) f(x) + Det(x,M0) f(y)] / Det(x,y)
///                          + int Lambda eps_{x,y}(M) dmu.
///
/// Requires the reproducing identity at (x, y).
inline BoundReport upper_bound_thm5(const RealFunction& f, const MeanSystem& ms,
                                    const ChebyshevSystem& sys, const ErrorModel& eps, double x,
                                    double y, const QuadratureConfig& q = {},
                                    double reproducing_tol = 1e-8) {
    const ReproducingCheck rc = check_reproducing(ms, sys, x, y, reproducing_tol, q);
    if (!rc.pass)
        throw contract_error("upper_bound_thm5: reproducing identity fails (defects " +
                             std::to_string(rc.defect0) + ", " + std::to_string(rc.defect1) + ")");
    const MeanSection sec = ms.section(x, y);
    const double det = omega_det(sys, x, y);
    if (!(det > 0.0)) throw degeneracy_error("upper_bound_thm5: Det(x, y) not positive");
    const double m0 = sec.mean0;
    auto fe = f.eval;
    const double lhs =
        integrate(ms.base, [&](double t) { return sec.lambda(t) * fe(sec.mean(t)); }, 0.0, 1.0,
                  true, true, q);
    const double rhs =
        (omega_det(sys, m0, y) * fe(x) + omega_det(sys, x, m0) * fe(y)) / det;
    const double err = upper_error_thm5(ms, eps, x, y, q);
    return BoundReport::make("thm5", lhs, rhs, err);
}

/// Endpoint upper bound for a segment trace g on [0, 1]:
///   int g dmu <= (1 - mu1) g(0) + mu1 g(1) + int eta_{0,1}(t) dmu(t).
inline BoundReport upper_bound_thm6(const RealFunction& g, const UnitMeasure& mu,
                                    const ErrorModel& eta, double s,
                                    const QuadratureConfig& q = {}) {
    if (!(s >= 0.0)) throw input_error("upper_bound_thm6: s must be >= 0");
    const double mu1 = first_moment(mu, q);
    auto ge = g.eval;
    const double lhs = integrate(mu, ge, 0.0, 1.0, true, true, q);
    const double rhs = (1.0 - mu1) * ge(0.0) + mu1 * ge(1.0);
    const double err = integrate(
        mu,
        [&](double t) {
            TripleQuery qq;
            qq.v = 0.0;
            qq.w = 1.0;
            qq.u = t;
            qq.t = t;
            qq.s = s;
            return eta(qq);
        },
        0.0, 1.0, true, true, q);
    return BoundReport::make("thm6", lhs, rhs, err);
}

/// upper_bound_thm6 specialized to a three-index power model, with the
/// error accumulated atom by atom:
///   sum_i c_i s^{r_i} int t^{p_i} (1-t)^{q_i} dmu(t).
inline BoundReport upper_bound_cor6a(const RealFunction& g, const UnitMeasure& mu,
                                     const PowerMeasure3& nu, double s,
                                     const QuadratureConfig& q = {}) {
    if (!(s >= 0.0)) throw input_error("upper_bound_cor6a: s must be >= 0");
    const double mu1 = first_moment(mu, q);
    auto ge = g.eval;
    const double lhs = integrate(mu, ge, 0.0, 1.0, true, true, q);
    const double rhs = (1.0 - mu1) * ge(0.0) + mu1 * ge(1.0);
    double err = 0.0;
    for (const auto& atom : nu.atoms) {
        const double moment = integrate(
            mu,
            [&](double t) {
                return detail::pow00(t, atom.p, "cor6a") * detail::pow00(1.0 - t, atom.q, "cor6a");
            },
            0.0, 1.0, true, true, q);
        err += atom.c * detail::pow00(s, atom.r, "cor6a") * moment;
    }
    return BoundReport::make("cor6a", lhs, rhs, err);
}

/// Midpoint form against Lebesgue measure, with the moment integrals
/// evaluated through the beta function:
///   g(1/2) <= (g(0) + g(1))/2 + sum_i c_i B(p_i + 1, q_i + 1) s^{r_i}.
inline BoundReport upper_bound_cor6b(const RealFunction& g, const PowerMeasure3& nu, double s) {
    if (!(s >= 0.0)) throw input_error("upper_bound_cor6b: s must be >= 0");
    auto ge = g.eval;
    const double lhs = ge(0.5);
    const double rhs = 0.5 * (ge(0.0) + ge(1.0));
    double err = 0.0;
    for (const auto& atom : nu.atoms)
        err += atom.c * beta_fn(atom.p + 1.0, atom.q + 1.0) * detail::pow00(s, atom.r, "cor6b");
    return BoundReport::make("cor6b", lhs, rhs, err);
}

} // namespace hh
