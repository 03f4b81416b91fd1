#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hh/classic.hpp"
#include "hh/errors.hpp"
#include "hh/measure.hpp"

namespace hh {

/// A weighted family of means restricted to one endpoint pair (x, y):
/// the weight t -> Lambda(t, x, y), the mean t -> M(t, x, y), and the
/// distinguished point M0(x, y).  The defining property, checked by
/// check_reproducing(), is
///
///   omega_i(M0) = int Lambda(t) omega_i(M(t)) dmu(t),   i = 0, 1.
struct MeanSection {
    std::function<double(double)> lambda;
    std::function<double(double)> mean;
    double mean0 = 0.0;
};

struct MeanSystem {
    std::function<MeanSection(double, double)> section;
    UnitMeasure base;  // the measure dmu on t in [0, 1]
    std::string name;
};

/// The mean system induced by a weight rho > 0 on the system's
/// interval: straight-line means M(t) = (1-t) x + t y against Lebesgue
/// base measure, with
///
///   Lambda(t) = (y - x) rho(M(t)) / c(x, y),   M0(x, y) = xi(x, y),
///
/// so that int Lambda f(M) dt = (1/c) int_x^y f rho.
inline MeanSystem lift_weighted_system(const ChebyshevSystem& sys, const RealFunction& rho,
                                       const QuadratureConfig& q = {}) {
    MeanSystem ms;
    ms.base = lebesgue_measure();
    ms.name = "lift(" + sys.name + ";" + rho.name + ")";
    ms.section = [sys, rho, q](double x, double y) {
        if (!(x < y)) throw input_error("lift_weighted_system: need x < y");
        auto r = rho.eval;
        const ClassicCoeffs k = c_coeffs(sys, rho, x, y, q);
        const double c = k.c;
        if (!(c > 0.0)) throw degeneracy_error("lift_weighted_system: c(x, y) not positive");
        MeanSection sec;
        sec.lambda = [r, x, y, c](double t) { return (y - x) * r((1.0 - t) * x + t * y) / c; };
        sec.mean = [x, y](double t) { return (1.0 - t) * x + t * y; };
        sec.mean0 = k.xi;
        return sec;
    };
    return ms;
}

struct ReproducingCheck {
    bool pass = false;
    double defect0 = 0.0;
    double defect1 = 0.0;
};

/// Verify the reproducing identity at (x, y) to tolerance tol.
inline ReproducingCheck check_reproducing(const MeanSystem& ms, const ChebyshevSystem& sys,
                                          double x, double y, double tol = 1e-8,
                                          const QuadratureConfig& q = {}) {
    const MeanSection sec = ms.section(x, y);
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    const double i0 =
        integrate(ms.base, [&](double t) { return sec.lambda(t) * w0(sec.mean(t)); }, 0.0, 1.0,
                  true, true, q);
    const double i1 =
        integrate(ms.base, [&](double t) { return sec.lambda(t) * w1(sec.mean(t)); }, 0.0, 1.0,
                  true, true, q);
    ReproducingCheck r;
    r.defect0 = std::fabs(i0 - w0(sec.mean0));
    r.defect1 = std::fabs(i1 - w1(sec.mean0));
    r.pass = r.defect0 <= tol && r.defect1 <= tol;
    return r;
}

/// Moment sums of the two node classes
///   T'  : Lambda > 0 and M <  M0
///   T'' : Lambda > 0 and M >= M0
/// accumulated on the quadrature grid (atoms of the base measure
/// included).  Nodes are classified pointwise; a node with M exactly
/// equal to M0 lands in T''.
struct PartitionSums {
    double s0p = 0.0;   // int_{T'}  Lambda omega0(M)
    double s0pp = 0.0;  // int_{T''} Lambda omega0(M)
    double s1p = 0.0;   // int_{T'}  Lambda omega1(M)
    double s1pp = 0.0;  // int_{T''} Lambda omega1(M)
    double denom = 0.0; // s0p * s1pp - s1p * s0pp
};

namespace detail {

struct WeightedNode {
    double t = 0.0;
    double weight = 0.0;  // quadrature weight times density, or atom weight
};

/// The discrete representation of the base measure that every
/// node-classified sum and double integral shares.
inline std::vector<WeightedNode> measure_nodes(const UnitMeasure& mu, const QuadratureConfig& q) {
    std::vector<double> ts, ws;
    gauss_nodes(0.0, 1.0, q, ts, ws);
    std::vector<WeightedNode> nodes;
    nodes.reserve(ts.size() + mu.atoms.size());
    auto dens = mu.density.eval;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double d = dens(ts[i]);
        if (!std::isfinite(d))
            throw evaluation_error("measure_nodes: density non-finite at t = " + std::to_string(ts[i]));
        if (d != 0.0) nodes.push_back({ts[i], ws[i] * d});
    }
    for (const auto& [t, w] : mu.atoms) nodes.push_back({t, w});
    return nodes;
}

} // namespace detail

inline PartitionSums partition_sums(const MeanSystem& ms, const ChebyshevSystem& sys, double x,
                                    double y, const QuadratureConfig& q = {}) {
    const MeanSection sec = ms.section(x, y);
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    PartitionSums ps;
    for (const auto& node : detail::measure_nodes(ms.base, q)) {
        const double lam = sec.lambda(node.t);
        if (!(lam > 0.0)) continue;
        const double m = sec.mean(node.t);
        const double a0 = node.weight * lam * w0(m);
        const double a1 = node.weight * lam * w1(m);
        if (m < sec.mean0) {
            ps.s0p += a0;
            ps.s1p += a1;
        } else {
            ps.s0pp += a0;
            ps.s1pp += a1;
        }
    }
    ps.denom = ps.s0p * ps.s1pp - ps.s1p * ps.s0pp;
    return ps;
}

} // namespace hh
