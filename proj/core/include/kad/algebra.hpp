#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kad/term.hpp"

namespace kad {

/// Index of an element in a finite carrier.
struct Elem {
  std::uint16_t id = 0;

  friend auto operator<=>(const Elem &, const Elem &) = default;
};

/// Raw operation tables. Binary tables are row-major: table[a * n + b].
/// Unary tables are indexed by element. `complement` is indexed by element
/// as well; entries for non-tests are ignored.
struct AlgebraTables {
  std::vector<std::string> carrier;
  Elem zero;
  Elem one;
  std::vector<Elem> plus;
  std::vector<Elem> times;
  std::optional<std::vector<Elem>> star;
  std::optional<std::vector<Elem>> adom;
  std::optional<std::vector<Elem>> aran;
  /// Test subset. Left empty when adom/aran is present, it is derived as
  /// the image of that operation.
  std::vector<Elem> tests;
  std::optional<std::vector<Elem>> complement;
};

/// A finite algebra given by operation tables, with an optional test subset.
/// Immutable once created.
class FiniteAlgebra {
public:
  using value_type = Elem;

  /// Validates the tables and builds the algebra. Throws ModelError.
  static FiniteAlgebra create(AlgebraTables tables);

  [[nodiscard]] std::size_t size() const { return t_.carrier.size(); }
  [[nodiscard]] const std::string &name(Elem e) const { return t_.carrier.at(e.id); }
  [[nodiscard]] std::optional<Elem> find(std::string_view name) const;
  [[nodiscard]] std::vector<Elem> elements() const;
  [[nodiscard]] const AlgebraTables &tables() const { return t_; }

  [[nodiscard]] Elem zero() const { return t_.zero; }
  [[nodiscard]] Elem one() const { return t_.one; }
  [[nodiscard]] Elem plus(Elem a, Elem b) const { return t_.plus[index(a, b)]; }
  [[nodiscard]] Elem times(Elem a, Elem b) const { return t_.times[index(a, b)]; }
  [[nodiscard]] Elem star(Elem a) const;
  [[nodiscard]] Elem adom(Elem a) const;
  [[nodiscard]] Elem aran(Elem a) const;
  /// Test complement; uses adom when present, then the complement table,
  /// then aran. Throws EvalError on non-tests.
  [[nodiscard]] Elem complement(Elem a) const;
  [[nodiscard]] Elem dom(Elem a) const { return adom(adom(a)); }
  [[nodiscard]] Elem ran(Elem a) const { return aran(aran(a)); }

  [[nodiscard]] bool is_test(Elem a) const { return is_test_.at(a.id); }
  [[nodiscard]] const std::vector<Elem> &tests() const { return t_.tests; }
  [[nodiscard]] bool leq(Elem a, Elem b) const { return plus(a, b) == b; }

  [[nodiscard]] bool has_star() const { return t_.star.has_value(); }
  [[nodiscard]] bool has_adom() const { return t_.adom.has_value(); }
  [[nodiscard]] bool has_aran() const { return t_.aran.has_value(); }
  [[nodiscard]] bool has_complement() const {
    return !t_.tests.empty() &&
           (t_.adom.has_value() || t_.complement.has_value() || t_.aran.has_value());
  }

  /// Same carrier and tables, with the test algebra replaced.
  [[nodiscard]] FiniteAlgebra with_tests(std::vector<Elem> tests,
                                         std::optional<std::vector<Elem>> complement) const;

private:
  explicit FiniteAlgebra(AlgebraTables tables);
  [[nodiscard]] std::size_t index(Elem a, Elem b) const { return a.id * size() + b.id; }

  AlgebraTables t_;
  std::vector<bool> is_test_;
};

using Env = BasicEnv<Elem>;

/// The three-element KAT {0 < a < 1} with a;a = 0, every star 1, and tests {0, 1}.
FiniteAlgebra lemma4_model();

/// The one-element algebra where 0 = 1, with every operation present.
FiniteAlgebra trivial_algebra();

/// The two-element boolean algebra {0, 1} as a KAD (adom swaps 0 and 1).
FiniteAlgebra boolean_kad();

/// Structure-preserving bijection between two algebras, if one exists.
/// Compares zero, one, every table both carry, and the test subsets.
bool are_isomorphic(const FiniteAlgebra &a, const FiniteAlgebra &b);

} // namespace kad
