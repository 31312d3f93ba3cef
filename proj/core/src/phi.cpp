#include "kad/phi.hpp"

#include <algorithm>

#include "kad/axioms.hpp"

namespace kad {

bool triple_holds(const FiniteAlgebra &algebra, Elem p, Elem x, Elem q) {
  return algebra.times(algebra.times(p, x), algebra.complement(q)) == algebra.zero();
}

PhiResult check_phi(const FiniteAlgebra &algebra) {
  if (!algebra.has_complement())
    throw MissingTableError("checking the sequencing sentence needs tests with a complement");
  const std::vector<Elem> &tests = algebra.tests();
  const std::size_t n = algebra.size();

  // Precompute complements once; the inner loop is hot on 16-element models.
  std::vector<Elem> compl_of(n);
  for (Elem t : tests)
    compl_of[t.id] = algebra.complement(t);
  auto valid = [&](Elem p, Elem x, Elem q) {
    return algebra.times(algebra.times(p, x), compl_of[q.id]) == algebra.zero();
  };

  for (Elem x : algebra.elements())
    for (Elem y : algebra.elements())
      for (Elem p : tests)
        for (Elem q : tests) {
          if (!valid(p, algebra.times(x, y), q))
            continue;
          const bool found = std::any_of(tests.begin(), tests.end(), [&](Elem r) {
            return valid(p, x, r) && valid(r, y, q);
          });
          if (!found)
            return PhiResult{false, PhiWitness{x, y, p, q}};
        }
  return PhiResult{true, std::nullopt};
}

FiniteAlgebra derive_test_algebra(const FiniteAlgebra &algebra) {
  if (!algebra.has_adom())
    throw MissingTableError("deriving tests needs an adom table");
  CheckReport report = check_axioms(algebra, AxiomProfile::AS);
  if (!report.passed) {
    const Violation &v = report.violations.front();
    std::string where;
    for (const auto &[var, value] : v.assignment)
      where += " " + var + "=" + value;
    throw PreconditionError("not an antidomain semiring: " + v.axiom + " fails at" + where);
  }
  std::vector<Elem> tests;
  for (Elem e : algebra.elements())
    tests.push_back(algebra.dom(e));
  std::sort(tests.begin(), tests.end());
  tests.erase(std::unique(tests.begin(), tests.end()), tests.end());

  std::vector<Elem> complement(algebra.size());
  for (Elem t : tests)
    complement[t.id] = algebra.adom(t);
  return algebra.with_tests(std::move(tests), std::move(complement));
}

std::string describe(const FiniteAlgebra &algebra, const PhiResult &result) {
  if (result.holds)
    return "sequencing sentence holds: every valid {p} x;y {q} has an intermediate test\n";
  const PhiWitness &w = *result.witness;
  return "sequencing sentence fails at x=" + algebra.name(w.x) + " y=" + algebra.name(w.y) +
         " p=" + algebra.name(w.p) + " q=" + algebra.name(w.q) +
         ": {p} x;y {q} holds but no test r gives {p} x {r} and {r} y {q}\n";
}

} // namespace kad
