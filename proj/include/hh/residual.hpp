#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hh/chebyshev.hpp"
#include "hh/error_model.hpp"
#include "hh/errors.hpp"

namespace hh {

/// How far f at u sticks out above the span interpolant through
/// (x, f(x)) and (y, f(y)):
///
///   f(u) - [Det(u,y) f(x) + Det(x,u) f(y)] / Det(x,y)
///
/// Nonpositive for every x < u < y exactly when f is convex with
/// respect to the pair.
inline double convexity_residual(const RealFunction& f, const ChebyshevSystem& sys, double x,
                                 double u, double y) {
    if (!(x < u && u < y)) throw input_error("convexity_residual: need x < u < y");
    const double det = omega_det(sys, x, y);
    if (!(det > 0.0)) throw degeneracy_error("convexity_residual: Det(x, y) not positive");
    const double wx = omega_det(sys, u, y) / det;
    const double wy = omega_det(sys, x, u) / det;
    return f(u) - wx * f(x) - wy * f(y);
}

struct ConvexityScan {
    bool convex = false;
    double worst_residual = 0.0;
    double x = 0.0, u = 0.0, y = 0.0;  // triple attaining worst_residual
};

/// Scan all ordered grid triples in the common domain of f and the
/// system.  `tol` is the slack allowed before declaring a violation.
inline ConvexityScan is_omega_convex(const RealFunction& f, const ChebyshevSystem& sys,
                                     int grid_n = 33, double tol = 1e-9) {
    if (grid_n < 3) throw input_error("is_omega_convex: grid_n must be >= 3");
    const Interval box =
        Interval{std::max(f.domain.lo, sys.domain.lo), std::min(f.domain.hi, sys.domain.hi)}.inset();
    std::vector<double> ts(grid_n), fv(grid_n), w0(grid_n), w1(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        ts[i] = box.lo + box.width() * i / (grid_n - 1);
        fv[i] = f(ts[i]);
        w0[i] = sys.omega0(ts[i]);
        w1[i] = sys.omega1(ts[i]);
    }
    ConvexityScan scan;
    scan.worst_residual = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        for (int k = i + 2; k < grid_n; ++k) {
            const double det = w0[i] * w1[k] - w1[i] * w0[k];
            if (!(det > 0.0))
                throw degeneracy_error("is_omega_convex: grid pair with nonpositive Det");
            for (int j = i + 1; j < k; ++j) {
                const double wx = (w0[j] * w1[k] - w1[j] * w0[k]) / det;
                const double wy = (w0[i] * w1[j] - w1[i] * w0[j]) / det;
                const double r = fv[j] - wx * fv[i] - wy * fv[k];
                if (r > scan.worst_residual) {
                    scan.worst_residual = r;
                    scan.x = ts[i];
                    scan.u = ts[j];
                    scan.y = ts[k];
                }
            }
        }
    }
    scan.convex = scan.worst_residual <= tol;
    return scan;
}

/// Jensen-style residual of a segment trace g on [0, 1]:
///   g(t) - (1-t) g(0) - t g(1).
inline double jensen_residual(const RealFunction& g, double t) {
    if (t < 0.0 || t > 1.0) throw input_error("jensen_residual: t must be in [0, 1]");
    return g(t) - (1.0 - t) * g(0.0) - t * g(1.0);
}

/// Measure f's convexity defect against sys and tabulate it as an
/// ErrorModel: entries are max(0, residual) on a grid_n^3 lattice over
/// the common domain, zero where the triple is not ordered.  Lookups
/// interpolate trilinearly.
inline ErrorModel measured_eps(const RealFunction& f, const ChebyshevSystem& sys, int grid_n = 33) {
    const Interval box =
        Interval{std::max(f.domain.lo, sys.domain.lo), std::min(f.domain.hi, sys.domain.hi)}.inset();
    MeasuredGrid grid = sample_grid(box.lo, box.hi, grid_n, [&](double v, double w, double u) {
        if (!(v < u && u < w)) return 0.0;
        return std::max(0.0, convexity_residual(f, sys, v, u, w));
    });
    return ErrorModel::measured(std::move(grid));
}

/// Constant over-estimate of the Jensen residual of g over every
/// sub-segment of [0, 1]: the max of the scanned residuals, clipped
/// at 0.  Suitable wherever an eta model for arbitrary sub-segments is
/// needed and a single safe constant is enough.
inline ErrorModel measured_eta_sup(const RealFunction& g, int grid_n = 65) {
    if (grid_n < 3) throw input_error("measured_eta_sup: grid_n must be >= 3");
    std::vector<double> ts(grid_n), gv(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        ts[i] = static_cast<double>(i) / (grid_n - 1);
        gv[i] = g(ts[i]);
    }
    double sup = 0.0;
    for (int i = 0; i < grid_n; ++i)
        for (int k = i + 2; k < grid_n; ++k)
            for (int j = i + 1; j < k; ++j) {
                const double th = (ts[j] - ts[i]) / (ts[k] - ts[i]);
                sup = std::max(sup, gv[j] - (1.0 - th) * gv[i] - th * gv[k]);
            }
    return ErrorModel::constant(sup);
}

/// Query-time residual model for the pair inequality: every lookup
/// evaluates the clipped convexity residual of f at (v, u, w) exactly.
/// By construction the model dominates the residual at every point the
/// bound integrals touch, so certificates hold even for functions that
/// are far from convex.
inline ErrorModel pointwise_residual_model(const RealFunction& f, const ChebyshevSystem& sys) {
    return ErrorModel::functional([sys, f](const TripleQuery& q) {
        if (!(q.v < q.u && q.u < q.w)) return 0.0;
        return std::max(0.0, convexity_residual(f, sys, q.v, q.u, q.w));
    });
}

/// Query-time chord residual model for a trace g on [0, 1]: the slack
/// at relative position t of the block pair (v, w) is the exactly
/// evaluated excess of g over the chord through (v, g(v)), (w, g(w)).
inline ErrorModel trace_residual_model(const RealFunction& g) {
    auto ge = g.eval;
    return ErrorModel::functional([ge](const TripleQuery& q) {
        const double gap = q.w - q.v;
        if (!(gap > 0.0)) return 0.0;
        const double chord = (1.0 - q.t) * ge(q.v) + q.t * ge(q.w);
        return std::max(0.0, ge(q.v + gap * q.t) - chord);
    });
}

} // namespace hh
