#pragma once

#include <cmath>
#include <string>

#include "hh/errors.hpp"

namespace hh {

/// Open interval (lo, hi), lo < hi, both finite.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw input_error("Interval: need finite lo < hi, got [" +
                              std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    }

    [[nodiscard]] double width() const { return hi - lo; }

    [[nodiscard]] bool contains(double t) const { return lo < t && t < hi; }

    /// Shrink both ends by `frac` of the width.  Used when sampling an
    /// open interval whose endpoints cannot be evaluated.
    [[nodiscard]] Interval inset(double frac = 1e-6) const {
        double d = width() * frac;
        return {lo + d, hi - d};
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

} // namespace hh
