#include "kad/ev_periodic.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace kad {

void EvPeriodicSet::normalize() {
  const std::size_t p = residues_.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0)
      continue;
    bool periodic = true;
    for (std::size_t k = d; periodic && k < p; ++k)
      periodic = residues_[k] == residues_[k % d];
    if (periodic) {
      residues_.resize(d);
      break;
    }
  }
  while (!head_.empty() &&
         head_.back() == residues_[(head_.size() - 1) % residues_.size()])
    head_.pop_back();
}

EvPeriodicSet EvPeriodicSet::make(std::size_t threshold, const std::vector<std::size_t> &head,
                                  std::size_t period, const std::vector<std::size_t> &residues) {
  if (period == 0)
    throw ModelError("period must be positive");
  std::vector<bool> h(threshold, false);
  for (std::size_t n : head) {
    if (n >= threshold)
      throw ModelError("head member " + std::to_string(n) + " is not below the threshold");
    h[n] = true;
  }
  std::vector<bool> r(period, false);
  for (std::size_t k : residues) {
    if (k >= period)
      throw ModelError("residue " + std::to_string(k) + " is not below the period");
    r[k] = true;
  }
  return EvPeriodicSet(std::move(h), std::move(r));
}

EvPeriodicSet EvPeriodicSet::empty() { return EvPeriodicSet({}, {false}); }
EvPeriodicSet EvPeriodicSet::naturals() { return EvPeriodicSet({}, {true}); }
EvPeriodicSet EvPeriodicSet::evens() { return EvPeriodicSet({}, {true, false}); }
EvPeriodicSet EvPeriodicSet::odds() { return EvPeriodicSet({}, {false, true}); }

EvPeriodicSet EvPeriodicSet::finite(const std::vector<std::size_t> &members) {
  std::size_t bound = 0;
  for (std::size_t n : members)
    bound = std::max(bound, n + 1);
  return make(bound, members, 1, {});
}

EvPeriodicSet EvPeriodicSet::cofinite(const std::vector<std::size_t> &non_members) {
  return complement(finite(non_members));
}

std::vector<std::size_t> EvPeriodicSet::head_members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < head_.size(); ++i)
    if (head_[i])
      out.push_back(i);
  return out;
}

std::vector<std::size_t> EvPeriodicSet::residue_members() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < residues_.size(); ++k)
    if (residues_[k])
      out.push_back(k);
  return out;
}

bool EvPeriodicSet::is_finite() const {
  return std::none_of(residues_.begin(), residues_.end(), [](bool b) { return b; });
}

bool EvPeriodicSet::is_cofinite() const {
  return std::all_of(residues_.begin(), residues_.end(), [](bool b) { return b; });
}

bool EvPeriodicSet::is_empty() const { return is_finite() && head_members().empty(); }

std::optional<std::size_t> EvPeriodicSet::least() const {
  // Every residue class is met within one period past the threshold.
  const std::size_t bound = threshold() + period();
  for (std::size_t n = 0; n < bound; ++n)
    if (contains(n))
      return n;
  return std::nullopt;
}

std::vector<std::size_t> EvPeriodicSet::members_below(std::size_t bound) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < bound; ++n)
    if (contains(n))
      out.push_back(n);
  return out;
}

std::vector<std::size_t> EvPeriodicSet::exceptions() const {
  std::vector<std::size_t> out;
  if (is_finite())
    return head_members();
  if (is_cofinite())
    for (std::size_t i = 0; i < head_.size(); ++i)
      if (!head_[i])
        out.push_back(i);
  return out;
}

namespace {

template <class Combine>
void combine(const EvPeriodicSet &s, const EvPeriodicSet &t, Combine op, std::vector<bool> &head,
             std::vector<bool> &residues) {
  const std::size_t threshold = std::max(s.threshold(), t.threshold());
  const std::size_t period = std::lcm(s.period(), t.period());
  head.assign(threshold, false);
  for (std::size_t n = 0; n < threshold; ++n)
    head[n] = op(s.contains(n), t.contains(n));
  residues.assign(period, false);
  // Pick the representative of each class at or above the threshold.
  const std::size_t base = (threshold + period - 1) / period * period;
  for (std::size_t k = 0; k < period; ++k)
    residues[k] = op(s.contains(base + k), t.contains(base + k));
}

} // namespace

EvPeriodicSet unite(const EvPeriodicSet &s, const EvPeriodicSet &t) {
  std::vector<bool> head, residues;
  combine(s, t, [](bool a, bool b) { return a || b; }, head, residues);
  return EvPeriodicSet(std::move(head), std::move(residues));
}

EvPeriodicSet intersect(const EvPeriodicSet &s, const EvPeriodicSet &t) {
  std::vector<bool> head, residues;
  combine(s, t, [](bool a, bool b) { return a && b; }, head, residues);
  return EvPeriodicSet(std::move(head), std::move(residues));
}

EvPeriodicSet complement(const EvPeriodicSet &s) {
  std::vector<bool> head(s.head_), residues(s.residues_);
  head.flip();
  residues.flip();
  return EvPeriodicSet(std::move(head), std::move(residues));
}

EvPeriodicSet kat_star(const EvPeriodicSet &) { return EvPeriodicSet::naturals(); }

bool in_test_algebra(const EvPeriodicSet &s) { return s.is_finite() || s.is_cofinite(); }

namespace {

class SetParser {
public:
  explicit SetParser(std::string_view text) : text_(text) {}

  EvPeriodicSet parse() {
    const std::string word = ident();
    EvPeriodicSet out = EvPeriodicSet::empty();
    if (word == "evens") {
      out = EvPeriodicSet::evens();
    } else if (word == "odds") {
      out = EvPeriodicSet::odds();
    } else if (word == "empty") {
      out = EvPeriodicSet::empty();
    } else if (word == "all") {
      out = EvPeriodicSet::naturals();
    } else if (word == "finite" || word == "cofinite") {
      expect('{');
      auto members = list('}');
      expect('}');
      out = word == "finite" ? EvPeriodicSet::finite(members) : EvPeriodicSet::cofinite(members);
    } else if (word == "periodic") {
      expect('(');
      const std::size_t threshold = number();
      expect(';');
      auto head = list(';');
      expect(';');
      const std::size_t period = number();
      expect(';');
      auto residues = list(')');
      expect(')');
      out = EvPeriodicSet::make(threshold, head, period, residues);
    } else {
      fail("unknown set literal '" + word + "'");
    }
    skip();
    if (pos_ != text_.size())
      fail("trailing characters in set literal");
    return out;
  }

private:
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > (std::size_t{1} << 32))
        fail("number too large");
      ++pos_;
    }
    if (start == pos_)
      fail("expected a number");
    return value;
  }

  std::vector<std::size_t> list(char terminator) {
    std::vector<std::size_t> out;
    skip();
    if (pos_ < text_.size() && text_[pos_] == terminator)
      return out;
    out.push_back(number());
    while (accept(','))
      out.push_back(number());
    return out;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string &message) const {
    throw ParseError(message, 1, pos_ + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<std::size_t> &xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

} // namespace

EvPeriodicSet parse_set(std::string_view text) { return SetParser(text).parse(); }

std::string print_set(const EvPeriodicSet &s) {
  if (s == EvPeriodicSet::evens())
    return "evens";
  if (s == EvPeriodicSet::odds())
    return "odds";
  if (s.is_finite())
    return "finite{" + join(s.exceptions()) + "}";
  if (s.is_cofinite())
    return "cofinite{" + join(s.exceptions()) + "}";
  return "periodic(" + std::to_string(s.threshold()) + "; " + join(s.head_members()) + "; " +
         std::to_string(s.period()) + "; " + join(s.residue_members()) + ")";
}

EvPeriodicSet CofiniteKat::adom(const EvPeriodicSet &) const {
  throw MissingTableError("the finite/cofinite KAT has no antidomain");
}

EvPeriodicSet CofiniteKat::aran(const EvPeriodicSet &) const {
  throw MissingTableError("the finite/cofinite KAT has no antirange");
}

EvPeriodicSet CofiniteKat::complement(const EvPeriodicSet &a) const {
  if (!in_test_algebra(a))
    throw EvalError("complement of non-test " + print_set(a));
  return kad::complement(a);
}

WlpVerdict refute_wlp_candidate(const EvPeriodicSet &set, const EvPeriodicSet &candidate) {
  if (set.is_finite())
    throw PreconditionError("the set is finite, so it is a test");
  if (set.is_cofinite())
    throw PreconditionError("the set is cofinite, so it is a test");
  if (!in_test_algebra(candidate))
    throw PreconditionError("candidate " + print_set(candidate) +
                            " is neither finite nor cofinite");
  if (auto hit = intersect(set, candidate).least())
    return NotAPrecondition{*hit};
  // candidate avoids an infinite set, so it is finite and misses part of the
  // (infinite) complement of `set`.
  const auto added = intersect(complement(set), complement(candidate)).least();
  if (!added)
    throw PreconditionError("no element outside both sets");
  return NotMaximal{*added, unite(candidate, EvPeriodicSet::finite({*added}))};
}

bool verdict_is_sound(const EvPeriodicSet &set, const EvPeriodicSet &candidate,
                      const WlpVerdict &verdict) {
  if (const auto *np = std::get_if<NotAPrecondition>(&verdict))
    return set.contains(np->witness) && candidate.contains(np->witness);
  const auto &nm = std::get<NotMaximal>(verdict);
  const EvPeriodicSet &ext = nm.extension;
  const bool contains_candidate = unite(ext, candidate) == ext;
  return in_test_algebra(ext) && contains_candidate && !(ext == candidate) &&
         ext.contains(nm.added) && !candidate.contains(nm.added) &&
         intersect(ext, set).is_empty();
}

std::string describe(const WlpVerdict &verdict) {
  if (const auto *np = std::get_if<NotAPrecondition>(&verdict))
    return "not a precondition: " + std::to_string(np->witness) + " lies in both sets";
  const auto &nm = std::get<NotMaximal>(verdict);
  return "not weakest: adding " + std::to_string(nm.added) + " gives " +
         print_set(nm.extension) + ", still a test and still a precondition";
}

CandidateEnumerator::CandidateEnumerator(EvPeriodicSet avoid) : avoid_(std::move(avoid)) {
  for (std::size_t n : avoid_.members_below(64))
    avoid_mask_ |= std::uint64_t{1} << n;
}

EvPeriodicSet CandidateEnumerator::next() {
  for (;;) {
    const std::uint64_t mask = mask_;
    const bool cofinite = cofinite_turn_;
    if (cofinite) {
      if (mask_ == ~std::uint64_t{0})
        throw BoundError("candidate enumeration exhausted 64-bit masks");
      ++mask_;
    }
    cofinite_turn_ = !cofinite_turn_;
    ++considered_;

    // Finite F avoids `avoid` iff no bit of F is a member; the complement
    // of F avoids it iff `avoid` is a finite subset of F.
    bool disjoint;
    if (!cofinite)
      disjoint = (mask & avoid_mask_) == 0;
    else
      disjoint = avoid_.is_finite() && avoid_.threshold() <= 64 && (avoid_mask_ & ~mask) == 0;
    if (!disjoint)
      continue;

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < 64; ++i)
      if ((mask >> i) & 1u)
        members.push_back(i);
    return cofinite ? EvPeriodicSet::cofinite(members) : EvPeriodicSet::finite(members);
  }
}

} // namespace kad
