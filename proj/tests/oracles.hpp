#pragma once

// Brute-force reference computations for the tests.  Everything here is
// deliberately independent of the library's quadrature and series code:
// slow, simple, and written from the definitions.

#include <cmath>
#include <cstdlib>
#include <functional>

namespace oracle {

/// Double-exponential (tanh-sinh) quadrature on (a, b).  Converges fast
/// even with integrable endpoint singularities such as t^(p-1).
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double h = 1.0 / 64.0;
    double sum = 0.0;
    for (int k = -320; k <= 320; ++k) {
        const double t = k * h;
        const double u = 1.5707963267948966 * std::sinh(t);
        const double x = std::tanh(u);
        if (1.0 - std::fabs(x) < 1e-17) continue;
        const double ch = std::cosh(u);
        const double w = 1.5707963267948966 * std::cosh(t) / (ch * ch);
        if (!(w > 0.0) || !std::isfinite(w)) continue;
        const double fx = f(mid + half * x);
        if (std::isfinite(fx)) sum += w * fx;
    }
    return sum * h * half;
}

/// Midpoint rule with n cells.
inline double riemann(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

/// Midpoint rule on a rectangle with n x n cells.
inline double riemann2(const std::function<double(double, double)>& f, double ax, double bx,
                       double ay, double by, int n) {
    const double hx = (bx - ax) / n;
    const double hy = (by - ay) / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = ax + (i + 0.5) * hx;
        for (int j = 0; j < n; ++j) sum += f(x, ay + (j + 0.5) * hy);
    }
    return sum * hx * hy;
}

/// Truncated dyadic series written from the definition, for alpha(u) = u.
inline double takagi_eta(double t, double scale, int n_terms) {
    double sum = 0.0;
    double pow2 = 1.0;  // 2^n
    for (int n = 0; n < n_terms; ++n) {
        const double v = pow2 * t;
        const double d = std::fabs(v - std::nearbyint(v));
        sum += (2.0 * d * scale) / pow2;
        pow2 *= 2.0;
    }
    return sum;
}

} // namespace oracle
