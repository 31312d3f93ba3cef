#pragma once

// Binary relations over a finite state space, stored as one 64-bit row mask
// per state. Tests are the subidentity relations.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kad/algebra.hpp"

namespace kad {

class StateSpace {
public:
  static constexpr std::size_t kMaxStates = 64;

  /// Throws ModelError on empty, duplicate, or too many names.
  static StateSpace create(std::vector<std::string> names);
  /// States named "1" .. "n".
  static StateSpace numbered(std::size_t n);

  [[nodiscard]] std::size_t size() const { return names_->size(); }
  [[nodiscard]] const std::string &name(std::size_t i) const { return (*names_)[i]; }
  [[nodiscard]] const std::vector<std::string> &names() const { return *names_; }
  /// Index of the named state; throws ModelError if absent.
  [[nodiscard]] std::size_t index_of(std::string_view name) const;

  friend bool operator==(const StateSpace &a, const StateSpace &b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

private:
  explicit StateSpace(std::shared_ptr<const std::vector<std::string>> names)
      : names_(std::move(names)) {}

  std::shared_ptr<const std::vector<std::string>> names_;
};

class Rel {
public:
  static Rel empty(const StateSpace &space);
  static Rel identity(const StateSpace &space);
  static Rel full(const StateSpace &space);
  static Rel from_pairs(const StateSpace &space,
                        const std::vector<std::pair<std::size_t, std::size_t>> &pairs);
  /// Subidentity on the given states.
  static Rel test(const StateSpace &space, const std::vector<std::size_t> &states);
  /// Bit (i * n + j) of `bits` encodes the pair (i, j). Requires n * n <= 64.
  static Rel from_bits(const StateSpace &space, std::uint64_t bits);
  static Rel random(const StateSpace &space, std::mt19937_64 &rng, double density = 0.5);
  static Rel random_test(const StateSpace &space, std::mt19937_64 &rng);

  [[nodiscard]] const StateSpace &space() const { return space_; }
  [[nodiscard]] std::size_t size() const { return space_.size(); }
  [[nodiscard]] bool contains(std::size_t from, std::size_t to) const {
    return (rows_[from] >> to) & 1u;
  }
  [[nodiscard]] std::uint64_t row(std::size_t from) const { return rows_[from]; }
  [[nodiscard]] bool is_empty() const;
  [[nodiscard]] bool is_subidentity() const;
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  /// Inverse of from_bits.
  [[nodiscard]] std::uint64_t bits() const;

  friend bool operator==(const Rel &a, const Rel &b) {
    return a.rows_ == b.rows_ && a.space_ == b.space_;
  }

private:
  Rel(StateSpace space, std::vector<std::uint64_t> rows)
      : space_(std::move(space)), rows_(std::move(rows)) {}

  friend Rel compose(const Rel &, const Rel &);
  friend Rel unite(const Rel &, const Rel &);
  friend Rel intersect(const Rel &, const Rel &);
  friend Rel converse(const Rel &);
  friend Rel adom(const Rel &);

  StateSpace space_;
  std::vector<std::uint64_t> rows_;
};

/// Relational product. Throws ModelError on mismatched spaces.
Rel compose(const Rel &r, const Rel &s);
Rel unite(const Rel &r, const Rel &s);
Rel intersect(const Rel &r, const Rel &s);
Rel converse(const Rel &r);
/// States with no outgoing edge, as a subidentity.
Rel adom(const Rel &r);
/// States with no incoming edge: adom of the converse.
Rel aran(const Rel &r);
inline Rel domain(const Rel &r) { return adom(adom(r)); }
inline Rel range(const Rel &r) { return aran(aran(r)); }
/// Reflexive-transitive closure by repeated squaring of (r + id).
Rel star(const Rel &r);
/// id minus p. Throws ModelError unless p is a subidentity.
Rel test_complement(const Rel &p);
/// Weakest liberal precondition: states all of whose r-successors satisfy q.
/// Throws ModelError unless q is a subidentity.
Rel box(const Rel &r, const Rel &q);
/// Inclusion.
bool leq(const Rel &r, const Rel &s);

/// `{(s1,s2),(s3,s3)}`, `{}`, or the keywords `id`, `empty`, `full`.
Rel parse_relation(std::string_view text, const StateSpace &space);
std::string print_relation(const Rel &r);

/// Every relation on the space in bit order. Requires size <= 4.
std::vector<Rel> all_relations(const StateSpace &space);
/// Every subidentity in bit order of its diagonal.
std::vector<Rel> all_tests(const StateSpace &space);

/// The relation algebra over a state space, as a term model whose values
/// are relations. Evaluation is lazy, so any space size is supported.
struct RelModel {
  using value_type = Rel;
  StateSpace space;

  Rel zero() const { return Rel::empty(space); }
  Rel one() const { return Rel::identity(space); }
  Rel plus(const Rel &a, const Rel &b) const { return unite(a, b); }
  Rel times(const Rel &a, const Rel &b) const { return compose(a, b); }
  Rel star(const Rel &a) const { return kad::star(a); }
  Rel adom(const Rel &a) const { return kad::adom(a); }
  Rel aran(const Rel &a) const { return kad::aran(a); }
  Rel complement(const Rel &a) const { return test_complement(a); }
  bool is_test(const Rel &a) const { return a.is_subidentity(); }
};

/// Full relation algebra over the space as operation tables, elements in
/// bit order. Carries star, adom, aran; tests are the subidentities.
/// Throws BoundError when the space has more than `max_states` states; the
/// eager tables are capped at three states (512 elements) regardless.
FiniteAlgebra as_finite_algebra(const StateSpace &space, std::size_t max_states = 2);

} // namespace kad
