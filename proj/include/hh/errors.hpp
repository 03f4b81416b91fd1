#pragma once

#include <stdexcept>
#include <string>

namespace hh {

// Error taxonomy used across the library.  Everything derives from
// hh::error so callers can catch one type; the concrete classes say
// what went wrong:
//
//   input_error       malformed argument (x >= y, empty system, bad flag)
//   range_error       requested value outside the reachable range
//   contract_error    a documented precondition fails at runtime
//                     (non-probability measure, reproducing identity off)
//   degeneracy_error  a denominator that must be positive is not
//   evaluation_error  a user function returned NaN/Inf at a needed point
//   parse_error       config or catalog syntax error
//   internal_error    invariant the library itself maintains was broken

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct input_error : error {
    using error::error;
};

struct range_error : error {
    using error::error;
};

struct contract_error : error {
    using error::error;
};

struct degeneracy_error : error {
    using error::error;
};

struct evaluation_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

struct internal_error : error {
    using error::error;
};

} // namespace hh
