#pragma once

// Invertibility of the sequential-composition rule as a first-order sentence
// over a finite algebra:
//   for all x, y and tests p, q:  {p} x;y {q}  implies  exists test r with
//   {p} x {r} and {r} y {q},
// where {p} x {q} abbreviates p;x;!q = 0.

#include <optional>
#include <string>

#include "kad/algebra.hpp"

namespace kad {

struct PhiWitness {
  Elem x;
  Elem y;
  Elem p;
  Elem q;
};

struct PhiResult {
  bool holds = true;
  /// First (x, y, p, q) in carrier order whose premise holds but which has
  /// no intermediate test.
  std::optional<PhiWitness> witness;
};

/// {p} x {q} in the algebra's own encoding.
bool triple_holds(const FiniteAlgebra &algebra, Elem p, Elem x, Elem q);

/// Brute force over every x, y and test p, q. Throws MissingTableError when
/// the algebra has no tests with a complement.
PhiResult check_phi(const FiniteAlgebra &algebra);

/// Replaces the tests by the image of d = a;a with complement a. Throws
/// PreconditionError naming the first violated antidomain-semiring axiom.
FiniteAlgebra derive_test_algebra(const FiniteAlgebra &algebra);

std::string describe(const FiniteAlgebra &algebra, const PhiResult &result);

} // namespace kad
