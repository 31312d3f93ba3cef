#pragma once

// Plain-text model files:
//
//   carrier: 0 a 1
//   zero: 0
//   one: 1
//   tests: 0 1
//   plus: 0 a -> a        (one line per pair; every pair required)
//   times: a a -> 0
//   star: a -> 1          (optional table; all rows once present)
//   adom: a -> 0
//   aran: a -> 0
//   not: 0 -> 1           (one line per test)
//
// '#' starts a comment.

#include <iosfwd>
#include <string>
#include <string_view>

#include "kad/algebra.hpp"

namespace kad {

/// Throws ParseError with the offending line, or ModelError when the
/// tables are complete but violate an algebra invariant.
FiniteAlgebra parse_model(std::string_view text);
FiniteAlgebra load_model(const std::string &path);

/// Inverse of parse_model; rows in carrier order.
std::string write_model(const FiniteAlgebra &algebra);

} // namespace kad
