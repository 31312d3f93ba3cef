#include "kad/relation.hpp"

#include <bit>
#include <cctype>
#include <set>
#include <sstream>

namespace kad {

StateSpace StateSpace::create(std::vector<std::string> names) {
  if (names.empty())
    throw ModelError("state space must be nonempty");
  if (names.size() > kMaxStates)
    throw ModelError("state space limited to " + std::to_string(kMaxStates) + " states");
  std::set<std::string> seen;
  for (const auto &n : names)
    if (n.empty() || !seen.insert(n).second)
      throw ModelError("state names must be distinct and nonempty");
  return StateSpace(std::make_shared<const std::vector<std::string>>(std::move(names)));
}

StateSpace StateSpace::numbered(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back(std::to_string(i));
  return create(std::move(names));
}

std::size_t StateSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < size(); ++i)
    if ((*names_)[i] == name)
      return i;
  throw ModelError("unknown state '" + std::string(name) + "'");
}

namespace {

void same_space(const Rel &r, const Rel &s) {
  if (!(r.space() == s.space()))
    throw ModelError("relations over different state spaces");
}

std::uint64_t diagonal_mask(const Rel &p) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.contains(i, i))
      mask |= std::uint64_t{1} << i;
  return mask;
}

std::uint64_t all_states(std::size_t n) {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

} // namespace

Rel Rel::empty(const StateSpace &space) {
  return Rel(space, std::vector<std::uint64_t>(space.size(), 0));
}

Rel Rel::identity(const StateSpace &space) {
  std::vector<std::uint64_t> rows(space.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i] = std::uint64_t{1} << i;
  return Rel(space, std::move(rows));
}

Rel Rel::full(const StateSpace &space) {
  return Rel(space, std::vector<std::uint64_t>(space.size(), all_states(space.size())));
}

Rel Rel::from_pairs(const StateSpace &space,
                    const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
  Rel r = empty(space);
  for (auto [a, b] : pairs) {
    if (a >= space.size() || b >= space.size())
      throw ModelError("pair outside the state space");
    r.rows_[a] |= std::uint64_t{1} << b;
  }
  return r;
}

Rel Rel::test(const StateSpace &space, const std::vector<std::size_t> &states) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t s : states)
    pairs.emplace_back(s, s);
  return from_pairs(space, pairs);
}

Rel Rel::from_bits(const StateSpace &space, std::uint64_t bits) {
  const std::size_t n = space.size();
  if (n * n > 64)
    throw BoundError("bit encoding needs at most 8 states");
  Rel r = empty(space);
  for (std::size_t i = 0; i < n; ++i)
    r.rows_[i] = (bits >> (i * n)) & all_states(n);
  return r;
}

std::uint64_t Rel::bits() const {
  const std::size_t n = size();
  if (n * n > 64)
    throw BoundError("bit encoding needs at most 8 states");
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < n; ++i)
    out |= rows_[i] << (i * n);
  return out;
}

Rel Rel::random(const StateSpace &space, std::mt19937_64 &rng, double density) {
  std::bernoulli_distribution coin(density);
  Rel r = empty(space);
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = 0; j < space.size(); ++j)
      if (coin(rng))
        r.rows_[i] |= std::uint64_t{1} << j;
  return r;
}

Rel Rel::random_test(const StateSpace &space, std::mt19937_64 &rng) {
  std::bernoulli_distribution coin(0.5);
  Rel r = empty(space);
  for (std::size_t i = 0; i < space.size(); ++i)
    if (coin(rng))
      r.rows_[i] = std::uint64_t{1} << i;
  return r;
}

bool Rel::is_empty() const {
  for (auto row : rows_)
    if (row)
      return false;
  return true;
}

bool Rel::is_subidentity() const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i] & ~(std::uint64_t{1} << i))
      return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Rel::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (contains(i, j))
        out.emplace_back(i, j);
  return out;
}

Rel compose(const Rel &r, const Rel &s) {
  same_space(r, s);
  std::vector<std::uint64_t> rows(r.size(), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t mids = r.rows_[i];
    while (mids) {
      const int k = std::countr_zero(mids);
      rows[i] |= s.rows_[k];
      mids &= mids - 1;
    }
  }
  return Rel(r.space_, std::move(rows));
}

Rel unite(const Rel &r, const Rel &s) {
  same_space(r, s);
  std::vector<std::uint64_t> rows(r.rows_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i] |= s.rows_[i];
  return Rel(r.space_, std::move(rows));
}

Rel intersect(const Rel &r, const Rel &s) {
  same_space(r, s);
  std::vector<std::uint64_t> rows(r.rows_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i] &= s.rows_[i];
  return Rel(r.space_, std::move(rows));
}

Rel converse(const Rel &r) {
  std::vector<std::uint64_t> rows(r.size(), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r.contains(i, j))
        rows[j] |= std::uint64_t{1} << i;
  return Rel(r.space_, std::move(rows));
}

Rel adom(const Rel &r) {
  std::vector<std::uint64_t> rows(r.size(), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.rows_[i] == 0)
      rows[i] = std::uint64_t{1} << i;
  return Rel(r.space_, std::move(rows));
}

Rel aran(const Rel &r) {
  std::uint64_t reached = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    reached |= r.row(i);
  std::vector<std::size_t> unreached;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (!((reached >> j) & 1u))
      unreached.push_back(j);
  return Rel::test(r.space(), unreached);
}

Rel star(const Rel &r) {
  Rel closure = unite(r, Rel::identity(r.space()));
  std::size_t rounds = 1;
  for (std::size_t reach = 1; reach < r.size(); reach *= 2)
    ++rounds;
  for (std::size_t i = 0; i < rounds; ++i)
    closure = compose(closure, closure);
  return closure;
}

Rel test_complement(const Rel &p) {
  if (!p.is_subidentity())
    throw ModelError("complement of a relation that is not a test: " + print_relation(p));
  std::vector<std::size_t> states;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p.contains(i, i))
      states.push_back(i);
  return Rel::test(p.space(), states);
}

Rel box(const Rel &r, const Rel &q) {
  same_space(r, q);
  if (!q.is_subidentity())
    throw ModelError("box postcondition is not a test: " + print_relation(q));
  const std::uint64_t allowed = diagonal_mask(q);
  std::vector<std::size_t> states;
  for (std::size_t i = 0; i < r.size(); ++i)
    if ((r.row(i) & ~allowed) == 0)
      states.push_back(i);
  return Rel::test(r.space(), states);
}

bool leq(const Rel &r, const Rel &s) { return unite(r, s) == s; }

namespace {

class RelParser {
public:
  RelParser(std::string_view text, const StateSpace &space) : text_(text), space_(space) {}

  Rel parse() {
    skip();
    Rel r = Rel::empty(space_);
    if (peek_word("id"))
      r = Rel::identity(space_);
    else if (peek_word("empty"))
      r = Rel::empty(space_);
    else if (peek_word("full"))
      r = Rel::full(space_);
    else
      r = literal();
    skip();
    if (pos_ != text_.size())
      fail("trailing characters in relation literal");
    return r;
  }

private:
  Rel literal() {
    expect('{');
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    skip();
    if (accept('}'))
      return Rel::from_pairs(space_, pairs);
    do {
      expect('(');
      const std::size_t a = state();
      expect(',');
      const std::size_t b = state();
      expect(')');
      pairs.emplace_back(a, b);
    } while (accept(','));
    expect('}');
    return Rel::from_pairs(space_, pairs);
  }

  std::size_t state() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '\''))
      ++pos_;
    if (start == pos_)
      fail("expected a state name");
    const std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < space_.size(); ++i)
      if (space_.name(i) == name)
        return i;
    fail("unknown state '" + name + "'");
  }

  bool peek_word(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word)
      return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end])))
      return false;
    pos_ = end;
    return true;
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
  const StateSpace &space_;
  std::size_t pos_ = 0;
};

} // namespace

Rel parse_relation(std::string_view text, const StateSpace &space) {
  return RelParser(text, space).parse();
}

std::string print_relation(const Rel &r) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto [a, b] : r.pairs()) {
    if (!first)
      out << ',';
    first = false;
    out << '(' << r.space().name(a) << ',' << r.space().name(b) << ')';
  }
  out << '}';
  return out.str();
}

std::vector<Rel> all_relations(const StateSpace &space) {
  const std::size_t n = space.size();
  if (n > 4)
    throw BoundError("enumerating all relations is limited to 4 states");
  std::vector<Rel> out;
  const std::uint64_t count = std::uint64_t{1} << (n * n);
  out.reserve(count);
  for (std::uint64_t bits = 0; bits < count; ++bits)
    out.push_back(Rel::from_bits(space, bits));
  return out;
}

std::vector<Rel> all_tests(const StateSpace &space) {
  const std::size_t n = space.size();
  if (n > 20)
    throw BoundError("enumerating all tests is limited to 20 states");
  std::vector<Rel> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> states;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u)
        states.push_back(i);
    out.push_back(Rel::test(space, states));
  }
  return out;
}

FiniteAlgebra as_finite_algebra(const StateSpace &space, std::size_t max_states) {
  const std::size_t n = space.size();
  if (n > max_states || n > 3)
    throw BoundError("eager relation algebra limited to " +
                     std::to_string(std::min<std::size_t>(max_states, 3)) +
                     " states; use the lazy relational model for larger spaces");
  const std::vector<Rel> rels = all_relations(space);
  const std::size_t m = rels.size();
  auto id_of = [](const Rel &r) { return Elem{static_cast<std::uint16_t>(r.bits())}; };

  AlgebraTables t;
  for (const Rel &r : rels)
    t.carrier.push_back(print_relation(r));
  t.zero = id_of(Rel::empty(space));
  t.one = id_of(Rel::identity(space));
  t.plus.resize(m * m);
  t.times.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      t.plus[i * m + j] = id_of(unite(rels[i], rels[j]));
      t.times[i * m + j] = id_of(compose(rels[i], rels[j]));
    }
  t.star.emplace();
  t.adom.emplace();
  t.aran.emplace();
  for (const Rel &r : rels) {
    t.star->push_back(id_of(star(r)));
    t.adom->push_back(id_of(adom(r)));
    t.aran->push_back(id_of(aran(r)));
  }
  return FiniteAlgebra::create(std::move(t));
}

} // namespace kad
