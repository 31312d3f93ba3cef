#pragma once

// Eventually periodic subsets of the naturals, and the KAT over them whose
// tests are the finite and cofinite sets. In that KAT the weakest liberal
// precondition of an element outside the test algebra need not exist; the
// refuter below defeats any proposed candidate.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kad/error.hpp"

namespace kad {

/// Membership of n is head[n] below the threshold and residues[n % period]
/// from the threshold on. Always kept in canonical form (minimal period,
/// then minimal threshold), so == is set equality.
class EvPeriodicSet {
public:
  /// Members of the head must lie below `threshold`, residues below `period`.
  /// Throws ModelError otherwise.
  static EvPeriodicSet make(std::size_t threshold, const std::vector<std::size_t> &head,
                            std::size_t period, const std::vector<std::size_t> &residues);
  static EvPeriodicSet empty();
  static EvPeriodicSet naturals();
  static EvPeriodicSet evens();
  static EvPeriodicSet odds();
  static EvPeriodicSet finite(const std::vector<std::size_t> &members);
  static EvPeriodicSet cofinite(const std::vector<std::size_t> &non_members);

  [[nodiscard]] bool contains(std::size_t n) const {
    return n < head_.size() ? head_[n] : residues_[n % residues_.size()];
  }
  [[nodiscard]] std::size_t threshold() const { return head_.size(); }
  [[nodiscard]] std::size_t period() const { return residues_.size(); }
  [[nodiscard]] std::vector<std::size_t> head_members() const;
  [[nodiscard]] std::vector<std::size_t> residue_members() const;

  [[nodiscard]] bool is_empty() const;
  [[nodiscard]] bool is_finite() const;
  [[nodiscard]] bool is_cofinite() const;
  /// Least member, if any.
  [[nodiscard]] std::optional<std::size_t> least() const;
  /// Members below `bound`, ascending.
  [[nodiscard]] std::vector<std::size_t> members_below(std::size_t bound) const;
  /// Finite part listed explicitly: members if finite, non-members if cofinite.
  [[nodiscard]] std::vector<std::size_t> exceptions() const;

  friend bool operator==(const EvPeriodicSet &, const EvPeriodicSet &) = default;

private:
  EvPeriodicSet(std::vector<bool> head, std::vector<bool> residues)
      : head_(std::move(head)), residues_(std::move(residues)) {
    normalize();
  }
  void normalize();

  friend EvPeriodicSet unite(const EvPeriodicSet &, const EvPeriodicSet &);
  friend EvPeriodicSet intersect(const EvPeriodicSet &, const EvPeriodicSet &);
  friend EvPeriodicSet complement(const EvPeriodicSet &);

  std::vector<bool> head_;
  std::vector<bool> residues_;
};

EvPeriodicSet unite(const EvPeriodicSet &s, const EvPeriodicSet &t);
EvPeriodicSet intersect(const EvPeriodicSet &s, const EvPeriodicSet &t);
EvPeriodicSet complement(const EvPeriodicSet &s);
/// Star in this KAT maps every set to the whole of the naturals.
EvPeriodicSet kat_star(const EvPeriodicSet &s);
bool in_test_algebra(const EvPeriodicSet &s);

/// `evens`, `odds`, `empty`, `all`, `finite{1,2}`, `cofinite{5}`,
/// `periodic(threshold; head; period; residues)` with comma lists.
EvPeriodicSet parse_set(std::string_view text);
/// Canonical spelling; parse_set(print_set(s)) == s.
std::string print_set(const EvPeriodicSet &s);

/// The KAT (sets, union, intersection, empty, naturals, star = naturals)
/// with finite/cofinite tests, as a term model.
struct CofiniteKat {
  using value_type = EvPeriodicSet;

  EvPeriodicSet zero() const { return EvPeriodicSet::empty(); }
  EvPeriodicSet one() const { return EvPeriodicSet::naturals(); }
  EvPeriodicSet plus(const EvPeriodicSet &a, const EvPeriodicSet &b) const { return unite(a, b); }
  EvPeriodicSet times(const EvPeriodicSet &a, const EvPeriodicSet &b) const {
    return intersect(a, b);
  }
  EvPeriodicSet star(const EvPeriodicSet &a) const { return kat_star(a); }
  EvPeriodicSet adom(const EvPeriodicSet &) const;
  EvPeriodicSet aran(const EvPeriodicSet &) const;
  /// Throws EvalError outside the test algebra.
  EvPeriodicSet complement(const EvPeriodicSet &a) const;
  bool is_test(const EvPeriodicSet &a) const { return in_test_algebra(a); }
};

/// The candidate meets the set, so it is not a precondition for reaching
/// the empty postcondition.
struct NotAPrecondition {
  std::size_t witness;
};

/// The candidate is a precondition but a strictly larger test is one too.
struct NotMaximal {
  std::size_t added;
  EvPeriodicSet extension;
};

using WlpVerdict = std::variant<NotAPrecondition, NotMaximal>;

/// Shows that `candidate` is not the weakest test disjoint from `set`.
/// Requires `set` to be neither finite nor cofinite and `candidate` to be a
/// test; throws PreconditionError naming the violated requirement.
WlpVerdict refute_wlp_candidate(const EvPeriodicSet &set, const EvPeriodicSet &candidate);

/// Re-checks a verdict independently: the witness lies in both sets, or the
/// extension is a test, strictly contains the candidate, and avoids `set`.
bool verdict_is_sound(const EvPeriodicSet &set, const EvPeriodicSet &candidate,
                      const WlpVerdict &verdict);

std::string describe(const WlpVerdict &verdict);

/// Finite and cofinite sets in a fixed order: for k = 0, 1, 2, ... the
/// finite set whose characteristic bit string is k (so shorter strings
/// first, then lexicographic), followed by its complement. Only candidates
/// disjoint from `avoid` are produced.
class CandidateEnumerator {
public:
  explicit CandidateEnumerator(EvPeriodicSet avoid);

  /// Next candidate; throws BoundError once 64-bit masks are exhausted.
  EvPeriodicSet next();
  /// Candidates considered so far, including those rejected for meeting `avoid`.
  [[nodiscard]] std::uint64_t considered() const { return considered_; }

private:
  EvPeriodicSet avoid_;
  std::uint64_t avoid_mask_ = 0;
  std::uint64_t mask_ = 0;
  bool cofinite_turn_ = false;
  std::uint64_t considered_ = 0;
};

} // namespace kad
