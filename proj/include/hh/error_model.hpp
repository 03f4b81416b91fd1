#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hh/errors.hpp"
#include "hh/function.hpp"

namespace hh {

/// Distance from s to the nearest integer.  Periodic with period 1,
/// even, and bounded by 1/2.
inline double dist_to_integers(double s) {
    return std::fabs(s - std::round(s));
}

// ---------------------------------------------------------------------------
// Dyadic series model.  For an error gauge alpha >= 0, segment length s
// and position t in [0, 1]:
//
//   eta(t) = sum_{n >= 0} 2^{-n} alpha(2 dZ(2^n t) s)
//
// truncated at n_terms.  The dropped tail is at most
// 2^{1 - n_terms} * sup alpha over [0, s].
// ---------------------------------------------------------------------------

struct DyadicErrorModel {
    RealFunction alpha;
    int n_terms = 40;
};

inline double dyadic_eta(const DyadicErrorModel& model, double s, double t) {
    if (model.n_terms < 1) throw input_error("dyadic_eta: n_terms must be >= 1");
    if (!(s >= 0.0)) throw input_error("dyadic_eta: segment length must be >= 0");
    double sum = 0.0;
    double scale = 1.0;
    double arg = t;
    for (int n = 0; n < model.n_terms; ++n) {
        const double a = model.alpha(2.0 * dist_to_integers(arg) * s);
        if (!std::isfinite(a))
            throw evaluation_error("dyadic_eta: alpha non-finite");
        sum += scale * a;
        scale *= 0.5;
        arg *= 2.0;
        // Once 2^n t is too large for the double grid to resolve its
        // fractional part the remaining terms all see dZ = 0.
        if (arg > 9.0e15) {
            sum += 2.0 * scale * model.alpha(0.0);
            break;
        }
    }
    return sum;
}

/// Crude bound on the truncated tail of dyadic_eta: 2^{1-n} sup alpha,
/// with the sup estimated on a uniform sample of [0, s].
inline double dyadic_tail_bound(const DyadicErrorModel& model, double s) {
    double sup = 0.0;
    const int n = 129;
    for (int i = 0; i < n; ++i) sup = std::max(sup, model.alpha(s * i / (n - 1)));
    return std::ldexp(2.0 * sup, -model.n_terms);
}

// ---------------------------------------------------------------------------
// The kernel that shows up when the dyadic model with alpha(u) = u is
// pushed through the two-block double integral:
//
//   Phi(s) = (1 - s)(3 s + 1)
//          + sum_{m >= 1} (1 - (2m+1) s / P)^+ * [ (s (2m+3) + P) / (P (m+1)^2)
//                                                + (s (2m-1) + P) / (P m^2) ]
//
// with P = 2^{floor(log2 m) + 1}, the power of two just above m.
// Values: Phi(1) = 0, Phi(0) = pi^2 / 3, and Phi >= 1 on [0, 2/3].
// ---------------------------------------------------------------------------

/// Evaluate Phi(s) for s in [0, 1] by summing until a doubling of the
/// cutoff moves the value by less than tol/2.  Terms are nonnegative
/// and O(1/m^2), so the remaining tail after the loop stops is below
/// tol; the crude certificate for cutoff M is 16/M.
inline double phi_kernel(double s, double tol = 1e-6) {
    if (s < 0.0 || s > 1.0) throw input_error("phi_kernel: s must be in [0, 1]");
    if (!(tol > 0.0)) throw input_error("phi_kernel: tol must be > 0");
    auto term = [s](std::uint64_t m) {
        const double P = 2.0 * static_cast<double>(std::bit_floor(m));
        const double hinge = 1.0 - (2.0 * m + 1.0) * s / P;
        if (hinge <= 0.0) return 0.0;
        const double md = static_cast<double>(m);
        const double bracket = (s * (2.0 * md + 3.0) + P) / (P * (md + 1.0) * (md + 1.0)) +
                               (s * (2.0 * md - 1.0) + P) / (P * md * md);
        return hinge * bracket;
    };
    double sum = (1.0 - s) * (3.0 * s + 1.0);
    std::uint64_t m = 1;
    std::uint64_t cutoff = 1024;
    const std::uint64_t max_cutoff = std::uint64_t(1) << 40;
    while (true) {
        double block = 0.0;
        for (; m <= cutoff; ++m) block += term(m);
        sum += block;
        if (block < 0.5 * tol) break;
        if (cutoff >= max_cutoff)
            throw internal_error("phi_kernel: series did not settle below tol");
        cutoff *= 2;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Power-law error gauges, stored as finite sums of exponent atoms.
// The convention 0^0 = 1 applies throughout.
//
//   two-index atom  (p, q, c):    c * t^p (1-t)^q * s^{p+q-1}
//   three-index atom (p, q, r, c): c * t^p (1-t)^q * s^r
// ---------------------------------------------------------------------------

struct PowerAtom2 {
    double p = 0.0, q = 0.0, c = 0.0;
    friend bool operator==(const PowerAtom2&, const PowerAtom2&) = default;
};

struct PowerMeasure2 {
    std::vector<PowerAtom2> atoms;
    friend bool operator==(const PowerMeasure2&, const PowerMeasure2&) = default;
};

struct PowerAtom3 {
    double p = 0.0, q = 0.0, r = 0.0, c = 0.0;
    friend bool operator==(const PowerAtom3&, const PowerAtom3&) = default;
};

struct PowerMeasure3 {
    std::vector<PowerAtom3> atoms;
    friend bool operator==(const PowerMeasure3&, const PowerMeasure3&) = default;
};

namespace detail {

/// pow with the 0^0 = 1 convention and an input check for the
/// zero-length, negative-exponent case.
inline double pow00(double base, double expo, const char* what) {
    if (expo == 0.0) return 1.0;
    if (base == 0.0 && expo < 0.0)
        throw input_error(std::string(what) + ": zero base with negative exponent");
    return std::pow(base, expo);
}

inline void validate_power_args(double t, double s, const char* what) {
    if (t < 0.0 || t > 1.0) throw input_error(std::string(what) + ": t must be in [0, 1]");
    if (!(s >= 0.0)) throw input_error(std::string(what) + ": s must be >= 0");
}

} // namespace detail

inline double power_eta2(const PowerMeasure2& nu, double t, double s) {
    detail::validate_power_args(t, s, "power_eta2");
    double sum = 0.0;
    for (const auto& a : nu.atoms)
        sum += a.c * detail::pow00(t, a.p, "power_eta2") * detail::pow00(1.0 - t, a.q, "power_eta2") *
               detail::pow00(s, a.p + a.q - 1.0, "power_eta2");
    return sum;
}

inline double power_eta3(const PowerMeasure3& nu, double t, double s) {
    detail::validate_power_args(t, s, "power_eta3");
    double sum = 0.0;
    for (const auto& a : nu.atoms)
        sum += a.c * detail::pow00(t, a.p, "power_eta3") * detail::pow00(1.0 - t, a.q, "power_eta3") *
               detail::pow00(s, a.r, "power_eta3");
    return sum;
}

/// Euler beta function via log-gamma.  Arguments must be positive.
inline double beta_fn(double p1, double p2) {
    if (!(p1 > 0.0) || !(p2 > 0.0)) throw input_error("beta_fn: arguments must be positive");
    return std::exp(std::lgamma(p1) + std::lgamma(p2) - std::lgamma(p1 + p2));
}

// ---------------------------------------------------------------------------
// Tabulated residual model: values on a uniform (v, w, u) grid with
// trilinear interpolation, clamped to the grid box and clipped at 0 on
// lookup.  Built by measured_eps() from scanned convexity residuals,
// but any sampled function works.
// ---------------------------------------------------------------------------

struct MeasuredGrid {
    double lo = 0.0, hi = 1.0;  // common range of all three axes
    int n = 33;                 // points per axis
    std::vector<double> values; // n^3, index (i*n + j)*n + k for (v_i, w_j, u_k)

    [[nodiscard]] double axis_point(int i) const { return lo + (hi - lo) * i / (n - 1); }

    [[nodiscard]] double at(int i, int j, int k) const {
        return values[(static_cast<std::size_t>(i) * n + j) * n + k];
    }

    [[nodiscard]] double lookup(double v, double w, double u) const {
        auto locate = [this](double t, int& idx, double& frac) {
            const double step = (hi - lo) / (n - 1);
            double pos = (t - lo) / step;
            pos = std::clamp(pos, 0.0, static_cast<double>(n - 1));
            idx = std::min(static_cast<int>(pos), n - 2);
            frac = pos - idx;
        };
        int i, j, k;
        double fi, fj, fk;
        locate(v, i, fi);
        locate(w, j, fj);
        locate(u, k, fk);
        double c00 = at(i, j, k) * (1 - fi) + at(i + 1, j, k) * fi;
        double c01 = at(i, j, k + 1) * (1 - fi) + at(i + 1, j, k + 1) * fi;
        double c10 = at(i, j + 1, k) * (1 - fi) + at(i + 1, j + 1, k) * fi;
        double c11 = at(i, j + 1, k + 1) * (1 - fi) + at(i + 1, j + 1, k + 1) * fi;
        double c0 = c00 * (1 - fj) + c10 * fj;
        double c1 = c01 * (1 - fj) + c11 * fj;
        return std::max(0.0, c0 * (1 - fk) + c1 * fk);
    }
};

/// Build a MeasuredGrid by sampling fn(v, w, u) at every grid point.
inline MeasuredGrid sample_grid(double lo, double hi, int n,
                                const std::function<double(double, double, double)>& fn) {
    if (n < 2) throw input_error("sample_grid: need at least 2 points per axis");
    if (!(lo < hi)) throw input_error("sample_grid: need lo < hi");
    MeasuredGrid g;
    g.lo = lo;
    g.hi = hi;
    g.n = n;
    g.values.resize(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                g.values[(static_cast<std::size_t>(i) * n + j) * n + k] =
                    fn(g.axis_point(i), g.axis_point(j), g.axis_point(k));
    return g;
}

// ---------------------------------------------------------------------------
// ErrorModel: the tagged union the bound routines consume.  A query
// carries the segment endpoints (v, w), the probe point u between them,
// the normalized position t of u in the segment, and the segment
// length argument s.  Each variant uses the part it understands:
// constants ignore everything, power/dyadic models use (t, s), and
// measured grids interpolate at (v, w, u).
// ---------------------------------------------------------------------------

struct TripleQuery {
    double v = 0.0;
    double w = 1.0;
    double u = 0.5;
    double t = 0.5;
    double s = 1.0;
};

struct ConstantError {
    double value = 0.0;
    friend bool operator==(const ConstantError&, const ConstantError&) = default;
};

// Callback-backed model: the slack is computed fresh for every query
// instead of being interpolated from a table.  Used to certify a
// specimen against its own exactly-evaluated residuals, where a grid
// would undershoot between samples.
struct FunctionalError {
    std::function<double(const TripleQuery&)> fn;
};

class ErrorModel {
  public:
    using Variant = std::variant<ConstantError, PowerMeasure2, PowerMeasure3, DyadicErrorModel,
                                 MeasuredGrid, FunctionalError>;

    ErrorModel() : v_(ConstantError{0.0}) {}
    explicit ErrorModel(Variant v) : v_(std::move(v)) {}

    static ErrorModel zero() { return ErrorModel(ConstantError{0.0}); }
    static ErrorModel constant(double c) { return ErrorModel(ConstantError{c}); }
    static ErrorModel power2(PowerMeasure2 nu) { return ErrorModel(std::move(nu)); }
    static ErrorModel power3(PowerMeasure3 nu) { return ErrorModel(std::move(nu)); }
    static ErrorModel dyadic(RealFunction alpha, int n_terms = 40) {
        return ErrorModel(DyadicErrorModel{std::move(alpha), n_terms});
    }
    static ErrorModel measured(MeasuredGrid g) { return ErrorModel(std::move(g)); }
    static ErrorModel functional(std::function<double(const TripleQuery&)> fn) {
        return ErrorModel(FunctionalError{std::move(fn)});
    }

    [[nodiscard]] bool is_zero() const {
        const auto* c = std::get_if<ConstantError>(&v_);
        return c && c->value == 0.0;
    }

    [[nodiscard]] bool is_constant() const { return std::holds_alternative<ConstantError>(v_); }

    [[nodiscard]] const Variant& variant() const { return v_; }

    [[nodiscard]] double operator()(const TripleQuery& q) const {
        return std::visit(
            [&q](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, ConstantError>) {
                    return m.value;
                } else if constexpr (std::is_same_v<T, PowerMeasure2>) {
                    return power_eta2(m, q.t, q.s);
                } else if constexpr (std::is_same_v<T, PowerMeasure3>) {
                    return power_eta3(m, q.t, q.s);
                } else if constexpr (std::is_same_v<T, DyadicErrorModel>) {
                    return dyadic_eta(m, q.s, q.t);
                } else if constexpr (std::is_same_v<T, MeasuredGrid>) {
                    return m.lookup(q.v, q.w, q.u);
                } else {
                    return m.fn(q);
                }
            },
            v_);
    }

  private:
    Variant v_;
};

} // namespace hh
