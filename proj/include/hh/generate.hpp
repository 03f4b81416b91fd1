#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hh/chebyshev.hpp"
#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/residual.hpp"

namespace hh {

/// Generator algorithm identifier embedded in reports.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits of the engine output,
/// so results do not depend on the standard library's distribution
/// implementation.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace detail

/// Families of ordinary convex profiles h used by gen_omega_convex.
enum class ConvexFamily { quadratic, max_affine, mixed };

inline ConvexFamily convex_family_from_string(const std::string& s) {
    if (s == "quadratic") return ConvexFamily::quadratic;
    if (s == "maxaffine") return ConvexFamily::max_affine;
    if (s == "mixed") return ConvexFamily::mixed;
    throw parse_error("unknown convex family '" + s + "'");
}

/// Draw a random function that is convex with respect to the pair, by
/// composing a random ordinary-convex profile h with the ratio
/// omega1/omega0 and multiplying by omega0:
///
///   f(t) = omega0(t) * h( omega1(t) / omega0(t) ).
///
/// The construction is then confirmed by is_omega_convex on a 33-grid;
/// on (unexpected) failure the draw is retried with the next seed, and
/// ten consecutive failures raise internal_error.
inline RealFunction gen_omega_convex(const ChebyshevSystem& sys, ConvexFamily family,
                                     std::uint64_t seed) {
    const Interval box = sys.domain.inset();
    auto w0 = sys.omega0.eval;
    auto w1 = sys.omega1.eval;
    const double rlo = w1(box.lo) / w0(box.lo);
    const double rhi = w1(box.hi) / w0(box.hi);
    if (!(rlo < rhi))
        throw internal_error("gen_omega_convex: ratio not increasing on domain");

    for (int attempt = 0; attempt < 10; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
        ConvexFamily fam = family;
        if (fam == ConvexFamily::mixed)
            fam = (rng() & 1) ? ConvexFamily::quadratic : ConvexFamily::max_affine;

        std::function<double(double)> h;
        std::string hname;
        if (fam == ConvexFamily::quadratic) {
            const double a = detail::uniform(rng, 0.3, 3.0);
            const double b = detail::uniform(rng, rlo, rhi);
            const double c = detail::uniform(rng, -1.0, 1.0);
            h = [a, b, c](double v) { return a * (v - b) * (v - b) + c; };
            hname = "quad";
        } else {
            const int k = detail::uniform_int(rng, 2, 5);
            std::vector<double> slope(k), icept(k);
            for (int i = 0; i < k; ++i) {
                slope[i] = detail::uniform(rng, -2.0, 2.0);
                const double p = detail::uniform(rng, rlo, rhi);
                const double v = detail::uniform(rng, -1.0, 1.0);
                icept[i] = v - slope[i] * p;
            }
            h = [slope, icept](double v) {
                double m = slope[0] * v + icept[0];
                for (std::size_t i = 1; i < slope.size(); ++i)
                    m = std::max(m, slope[i] * v + icept[i]);
                return m;
            };
            hname = "maxaffine";
        }

        RealFunction f = make_function(
            "gen-" + hname + ":" + std::to_string(seed + static_cast<std::uint64_t>(attempt)),
            [w0, w1, h](double t) {
                const double z0 = w0(t);
                return z0 * h(w1(t) / z0);
            },
            sys.domain);
        if (is_omega_convex(f, sys, 33).convex) return f;
    }
    throw internal_error("gen_omega_convex: 10 consecutive confirmation failures");
}

/// f0 plus a random smooth oscillation delta with a hard sup-norm
/// guarantee: delta is a sum of three sine waves whose amplitudes are
/// scaled so that |a1| + |a2| + |a3| = bound.
inline RealFunction gen_perturbed(const RealFunction& f0, double bound, std::uint64_t seed) {
    if (!(bound >= 0.0)) throw input_error("gen_perturbed: bound must be >= 0");
    if (bound == 0.0) return f0;
    std::mt19937_64 rng(seed);
    std::vector<double> amp(3), freq(3), phase(3);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        amp[i] = detail::uniform(rng, 0.2, 1.0);
        freq[i] = detail::uniform(rng, 1.0, 9.0);
        phase[i] = detail::uniform(rng, 0.0, 2.0 * M_PI);
        total += amp[i];
    }
    for (int i = 0; i < 3; ++i) amp[i] *= bound / total;
    auto base = f0.eval;
    return make_function(f0.name + "+osc(" + std::to_string(bound) + ")",
                         [base, amp, freq, phase](double t) {
                             double d = 0.0;
                             for (int i = 0; i < 3; ++i)
                                 d += amp[i] * std::sin(freq[i] * t + phase[i]);
                             return base(t) + d;
                         },
                         f0.domain);
}

} // namespace hh
