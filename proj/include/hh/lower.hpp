#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hh/bound_report.hpp"
#include "hh/error_model.hpp"
#include "hh/errors.hpp"
#include "hh/mean_system.hpp"
#include "hh/measure.hpp"
#include "hh/residual.hpp"

namespace hh {

namespace detail {

struct ClassifiedNodes {
    // weight * Lambda and the mean value, per node, split by class
    std::vector<double> wl_p, m_p;    // T'  : Lambda > 0, M <  M0
    std::vector<double> wl_pp, m_pp;  // T'' : Lambda > 0, M >= M0
    PartitionSums sums;
};

inline ClassifiedNodes classify_nodes(const MeanSystem& ms, const ChebyshevSystem& sys, double x,
                                      double y, const QuadratureConfig& q) {
    const MeanSection sec = ms.section(x, y);
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    ClassifiedNodes out;
    for (const auto& node : measure_nodes(ms.base, q)) {
        const double lam = sec.lambda(node.t);
        if (!(lam > 0.0)) continue;
        const double m = sec.mean(node.t);
        const double wl = node.weight * lam;
        if (m < sec.mean0) {
            out.wl_p.push_back(wl);
            out.m_p.push_back(m);
            out.sums.s0p += wl * w0(m);
            out.sums.s1p += wl * w1(m);
        } else {
            out.wl_pp.push_back(wl);
            out.m_pp.push_back(m);
            out.sums.s0pp += wl * w0(m);
            out.sums.s1pp += wl * w1(m);
        }
    }
    out.sums.denom = out.sums.s0p * out.sums.s1pp - out.sums.s1p * out.sums.s0pp;
    return out;
}

} // namespace detail

/// Weighted average of eps over the split pairs (M', M'') with
/// M' < M0 <= M'':
///
///          int_{T'} int_{T''} L L' Det(M', M'') eps(M', M'', M0)
///   E  =  ---------------------------------------------------------
///          int_{T'} int_{T''} L L' Det(M', M'')
///
/// The denominator is accumulated both as the pairwise double sum and
/// through the factored partition sums s0' s1'' - s1' s0''; the two
/// must agree, and must be positive.  Power and dyadic models are
/// queried at the determinant weight position t = Det(M', M0)/Det(M', M'')
/// with segment length M'' - M'.
inline double lower_error_E(const MeanSystem& ms, const ChebyshevSystem& sys,
                            const ErrorModel& eps, double x, double y,
                            const QuadratureConfig& q = {}) {
    const detail::ClassifiedNodes cn = detail::classify_nodes(ms, sys, x, y, q);
    const double denom_parts = cn.sums.denom;
    if (!(denom_parts > 0.0))
        throw degeneracy_error("lower_error_E: split denominator not positive (denom = " +
                               std::to_string(denom_parts) + ")");
    if (eps.is_constant()) {
        // Weighted average of a constant is the constant itself.
        return eps({x, y, 0.5 * (x + y), 0.5, y - x});
    }
    const MeanSection sec = ms.section(x, y);
    const double m0 = sec.mean0;
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    double num = 0.0;
    double denom_pairs = 0.0;
    for (std::size_t i = 0; i < cn.m_p.size(); ++i) {
        const double mi = cn.m_p[i];
        const double w0i = w0(mi), w1i = w1(mi);
        const double det_i0 = w0i * w1(m0) - w1i * w0(m0);  // Det(M', M0)
        double num_i = 0.0, den_i = 0.0;
        for (std::size_t j = 0; j < cn.m_pp.size(); ++j) {
            const double mj = cn.m_pp[j];
            const double det = w0i * w1(mj) - w1i * w0(mj);
            // Det is positive across the split up to roundoff on
            // near-coincident pairs, which carry no weight anyway.
            if (!(det > 0.0)) continue;
            TripleQuery qq;
            qq.v = mi;
            qq.w = mj;
            qq.u = m0;
            qq.t = std::clamp(det_i0 / det, 0.0, 1.0);
            qq.s = mj - mi;
            const double contrib = cn.wl_pp[j] * det;
            num_i += contrib * eps(qq);
            den_i += contrib;
        }
        num += cn.wl_p[i] * num_i;
        denom_pairs += cn.wl_p[i] * den_i;
    }
    if (std::fabs(denom_pairs - denom_parts) > 1e-9 * std::max(1.0, std::fabs(denom_parts)))
        throw internal_error("lower_error_E: pairwise and factored denominators disagree");
    return num / denom_pairs;
}

/// Lower bound at the distinguished mean:
///   f(M0) <= int Lambda f(M) dmu + E.
/// Requires the reproducing identity to hold at (x, y).
inline BoundReport lower_bound_thm3(const RealFunction& f, const MeanSystem& ms,
                                    const ChebyshevSystem& sys, const ErrorModel& eps, double x,
                                    double y, const QuadratureConfig& q = {},
                                    double reproducing_tol = 1e-8) {
    const ReproducingCheck rc = check_reproducing(ms, sys, x, y, reproducing_tol, q);
    if (!rc.pass)
        throw contract_error("lower_bound_thm3: reproducing identity fails (defects " +
                             std::to_string(rc.defect0) + ", " + std::to_string(rc.defect1) + ")");
    const MeanSection sec = ms.section(x, y);
    auto fe = f.eval;
    const double lhs = fe(sec.mean0);
    const double rhs =
        integrate(ms.base, [&](double t) { return sec.lambda(t) * fe(sec.mean(t)); }, 0.0, 1.0,
                  true, true, q);
    const double err = lower_error_E(ms, sys, eps, x, y, q);
    return BoundReport::make("thm3", lhs, rhs, err);
}

/// The two-block error integral over [0, mu1] x (mu1, 1]:
///
///   I = int int (t'' - t') eta_{(t', t'')}((mu1 - t')/(t'' - t')) dmu(t') dmu(t'')
///
/// where the eta model sees the rescaled segment length (t'' - t') s.
/// An atom at mu1 belongs to the left block.
inline double i_double_integral(const UnitMeasure& mu, const ErrorModel& eta, double s,
                                const QuadratureConfig& q = {}) {
    if (!(s >= 0.0)) throw input_error("i_double_integral: s must be >= 0");
    const double mu1 = first_moment(mu, q);

    auto block_nodes = [&](double a, double b, bool closed_left, bool closed_right) {
        std::vector<detail::WeightedNode> nodes;
        std::vector<double> ts, ws;
        if (a < b) {
            gauss_nodes(a, b, q, ts, ws);
            auto dens = mu.density.eval;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                const double d = dens(ts[i]);
                if (d != 0.0) nodes.push_back({ts[i], ws[i] * d});
            }
        }
        for (const auto& [t, w] : mu.atoms) {
            const bool inside = (t > a && t < b) || (t == a && closed_left) || (t == b && closed_right);
            if (inside) nodes.push_back({t, w});
        }
        return nodes;
    };

    const auto left = block_nodes(0.0, mu1, true, true);    // [0, mu1]
    const auto right = block_nodes(mu1, 1.0, false, true);  // (mu1, 1]

    double total = 0.0;
    for (const auto& lp : left) {
        double inner = 0.0;
        for (const auto& rp : right) {
            const double gap = rp.t - lp.t;
            if (!(gap > 0.0)) continue;
            TripleQuery qq;
            qq.v = lp.t;
            qq.w = rp.t;
            qq.u = mu1;
            qq.t = (mu1 - lp.t) / gap;
            qq.s = gap * s;
            inner += rp.weight * gap * eta(qq);
        }
        total += lp.weight * inner;
    }
    return total;
}

/// Lower bound at the measure's barycenter for a segment trace g on [0, 1]:
///   g(mu1) <= int g dmu + I / S(mu).
inline BoundReport lower_bound_thm4(const RealFunction& g, const UnitMeasure& mu,
                                    const ErrorModel& eta, double s,
                                    const QuadratureConfig& q = {}) {
    const double S = s_functional(mu, q);
    if (!(S > 0.0)) throw degeneracy_error("lower_bound_thm4: S(mu) not positive");
    const double mu1 = first_moment(mu, q);
    const double lhs = g(mu1);
    const double rhs = integrate(mu, g.eval, 0.0, 1.0, true, true, q);
    const double err = i_double_integral(mu, eta, s, q) / S;
    return BoundReport::make("thm4", lhs, rhs, err);
}

/// Lebesgue specialization: mu1 = 1/2 and S = 1/8, so the error
/// prefactor is exactly 8.
inline BoundReport lower_bound_cor2hp1(const RealFunction& g, const ErrorModel& eta, double s,
                                       const QuadratureConfig& q = {}) {
    const UnitMeasure mu = lebesgue_measure();
    const double S = s_functional(mu, q);
    if (std::fabs(S - 0.125) > 1e-12)
        throw internal_error("lower_bound_cor2hp1: S(lebesgue) != 1/8");
    const double lhs = g(0.5);
    const double rhs = integrate(mu, g.eval, 0.0, 1.0, true, true, q);
    const double err = 8.0 * i_double_integral(mu, eta, s, q);
    BoundReport rep = BoundReport::make("cor2hp1", lhs, rhs, err);
    return rep;
}

/// Separable form of the two-block integral for a two-index power
/// model: per atom (p, q, c),
///
///   c * [int_{[0,mu1]} (mu1 - t')^p dmu] * [int_{(mu1,1]} (t'' - mu1)^q dmu] * s^{p+q-1}.
inline double j_functional(const PowerMeasure2& nu, const UnitMeasure& mu, double s,
                           const QuadratureConfig& q = {}) {
    if (!(s >= 0.0)) throw input_error("j_functional: s must be >= 0");
    const double mu1 = first_moment(mu, q);
    double total = 0.0;
    for (const auto& atom : nu.atoms) {
        const double left = integrate(
            mu, [&](double t) { return detail::pow00(std::max(0.0, mu1 - t), atom.p, "j_functional"); },
            0.0, mu1, true, true, q);
        const double right = integrate(
            mu, [&](double t) { return detail::pow00(std::max(0.0, t - mu1), atom.q, "j_functional"); },
            mu1, 1.0, false, true, q);
        total += atom.c * left * right * detail::pow00(s, atom.p + atom.q - 1.0, "j_functional");
    }
    return total;
}

/// Closed form of 8 * j_functional(nu, lebesgue, s):
///   sum_i c_i s^{p+q-1} / (2^{p+q-1} (p+1) (q+1)).
inline double cor4c2_error(const PowerMeasure2& nu, double s) {
    if (!(s >= 0.0)) throw input_error("cor4c2_error: s must be >= 0");
    double total = 0.0;
    for (const auto& atom : nu.atoms) {
        const double e = atom.p + atom.q - 1.0;
        total += atom.c * detail::pow00(s, e, "cor4c2_error") * std::exp2(-e) /
                 ((atom.p + 1.0) * (atom.q + 1.0));
    }
    return total;
}

} // namespace hh
