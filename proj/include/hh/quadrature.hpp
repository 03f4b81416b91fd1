#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hh/errors.hpp"

namespace hh {

/// Composite Gauss-Legendre settings.  `panels` equal subintervals,
/// `nodes_per_panel` Gauss nodes on each.  `tol` is the target used by
/// iterative helpers built on top (root finding, series cutoffs).
struct QuadratureConfig {
    int panels = 64;
    int nodes_per_panel = 16;
    double tol = 1e-10;

    void validate() const {
        if (panels < 1) throw input_error("QuadratureConfig: panels must be >= 1");
        if (nodes_per_panel < 2) throw input_error("QuadratureConfig: nodes_per_panel must be >= 2");
        if (!(tol > 0.0)) throw input_error("QuadratureConfig: tol must be > 0");
    }
};

/// Default configuration; the HH_QUAD_PANELS environment variable
/// overrides the panel count when set to a positive integer.
inline QuadratureConfig default_quadrature() {
    QuadratureConfig q;
    if (const char* env = std::getenv("HH_QUAD_PANELS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) q.panels = static_cast<int>(v);
    }
    return q;
}

namespace detail {

struct GaussRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

/// Nodes are the roots of the Legendre polynomial P_n, found by Newton
/// iteration from the Chebyshev-like initial guess; weights are
/// 2 / ((1 - x^2) P_n'(x)^2).
inline GaussRule compute_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

inline const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_rule(n)).first;
    return it->second;
}

} // namespace detail

/// Composite Gauss-Legendre integral of g over [a, b].  Throws
/// evaluation_error if g produces a non-finite value at any node.
inline double gauss_integrate(const std::function<double(double)>& g, double a, double b,
                              const QuadratureConfig& q = {}) {
    q.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) throw input_error("gauss_integrate: non-finite bounds");
    if (a == b) return 0.0;
    const double sign = (a < b) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const detail::GaussRule& rule = detail::gauss_rule(q.nodes_per_panel);
    const double h = (hi - lo) / q.panels;
    double total = 0.0;
    for (int p = 0; p < q.panels; ++p) {
        const double c = lo + (p + 0.5) * h;
        double acc = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = c + 0.5 * h * rule.nodes[k];
            const double v = g(t);
            if (!std::isfinite(v))
                throw evaluation_error("gauss_integrate: integrand non-finite at t = " + std::to_string(t));
            acc += rule.weights[k] * v;
        }
        total += acc * 0.5 * h;
    }
    return sign * total;
}

/// The quadrature nodes and weights gauss_integrate would use on [a, b],
/// exposed so that double integrals and node-classified sums can share
/// exactly the same grid.
inline void gauss_nodes(double a, double b, const QuadratureConfig& q,
                        std::vector<double>& nodes, std::vector<double>& weights) {
    q.validate();
    nodes.clear();
    weights.clear();
    if (a == b) return;
    const detail::GaussRule& rule = detail::gauss_rule(q.nodes_per_panel);
    const double h = (b - a) / q.panels;
    nodes.reserve(static_cast<std::size_t>(q.panels) * rule.nodes.size());
    weights.reserve(nodes.capacity());
    for (int p = 0; p < q.panels; ++p) {
        const double c = a + (p + 0.5) * h;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            nodes.push_back(c + 0.5 * h * rule.nodes[k]);
            weights.push_back(rule.weights[k] * 0.5 * h);
        }
    }
}

/// Bisection for a root of g on [lo, hi]; g must change sign.  Returns
/// the midpoint of the final bracket of width <= tol.
struct BisectResult {
    double x = 0.0;
    int iters = 0;
};

inline BisectResult bisect(const std::function<double(double)>& g, double lo, double hi,
                           double tol = 1e-12) {
    if (!(lo < hi)) throw input_error("bisect: need lo < hi");
    double flo = g(lo), fhi = g(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw evaluation_error("bisect: non-finite value at bracket endpoint");
    if (flo == 0.0) return {lo, 0};
    if (fhi == 0.0) return {hi, 0};
    if ((flo > 0.0) == (fhi > 0.0))
        throw range_error("bisect: no sign change on bracket");
    BisectResult r;
    while (hi - lo > tol && r.iters < 200) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if (!std::isfinite(fm)) throw evaluation_error("bisect: non-finite value at midpoint");
        if (fm == 0.0) return {mid, r.iters};
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        ++r.iters;
    }
    r.x = 0.5 * (lo + hi);
    return r;
}

} // namespace hh
