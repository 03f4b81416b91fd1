#pragma once

#include <string>

namespace hh {

/// Uniform result record for every one-sided bound:
///   lhs <= rhs_main + error_term, certified when margin >= 0,
/// with margin = rhs_main + error_term - lhs exactly as computed.
struct BoundReport {
    std::string theorem;
    double lhs = 0.0;
    double rhs_main = 0.0;
    double error_term = 0.0;
    double margin = 0.0;

    static BoundReport make(std::string theorem, double lhs, double rhs_main, double error_term) {
        BoundReport r;
        r.theorem = std::move(theorem);
        r.lhs = lhs;
        r.rhs_main = rhs_main;
        r.error_term = error_term;
        r.margin = rhs_main + error_term - lhs;
        return r;
    }
};

} // namespace hh
