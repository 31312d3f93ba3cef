#include "kad/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kad {

namespace {

void check_range(const std::vector<Elem> &table, std::size_t expected, std::size_t n,
                 const char *what) {
  if (table.size() != expected)
    throw ModelError(std::string(what) + " table has " + std::to_string(table.size()) +
                     " entries, expected " + std::to_string(expected));
  for (Elem e : table)
    if (e.id >= n)
      throw ModelError(std::string(what) + " table refers to element #" +
                       std::to_string(e.id) + " outside the carrier");
}

std::vector<Elem> image_of(const std::vector<Elem> &table) {
  std::vector<Elem> out(table);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

FiniteAlgebra::FiniteAlgebra(AlgebraTables tables) : t_(std::move(tables)) {
  is_test_.assign(size(), false);
  for (Elem e : t_.tests)
    is_test_[e.id] = true;
}

FiniteAlgebra FiniteAlgebra::create(AlgebraTables t) {
  const std::size_t n = t.carrier.size();
  if (n == 0)
    throw ModelError("carrier is empty");
  if (n > 0xffff)
    throw ModelError("carrier too large");
  std::set<std::string> names;
  for (const auto &name : t.carrier) {
    if (name.empty())
      throw ModelError("empty element name");
    if (!names.insert(name).second)
      throw ModelError("duplicate element name '" + name + "'");
  }
  if (t.zero.id >= n || t.one.id >= n)
    throw ModelError("zero and one must be carrier elements");
  check_range(t.plus, n * n, n, "plus");
  check_range(t.times, n * n, n, "times");
  if (t.star)
    check_range(*t.star, n, n, "star");
  if (t.adom)
    check_range(*t.adom, n, n, "adom");
  if (t.aran)
    check_range(*t.aran, n, n, "aran");

  std::sort(t.tests.begin(), t.tests.end());
  if (std::adjacent_find(t.tests.begin(), t.tests.end()) != t.tests.end())
    throw ModelError("duplicate test element");
  for (Elem e : t.tests)
    if (e.id >= n)
      throw ModelError("test element outside the carrier");

  const std::vector<Elem> *derived_from = t.adom ? &*t.adom : (t.aran ? &*t.aran : nullptr);
  if (derived_from) {
    std::vector<Elem> image = image_of(*derived_from);
    if (t.tests.empty())
      t.tests = image;
    else if (t.tests != image)
      throw ModelError(std::string("tests must equal the image of ") +
                       (t.adom ? "adom" : "aran"));
  }

  if (!t.tests.empty()) {
    auto contains = [&](Elem e) { return std::binary_search(t.tests.begin(), t.tests.end(), e); };
    if (!contains(t.zero) || !contains(t.one))
      throw ModelError("tests must contain zero and one");
    if (!derived_from && !t.complement)
      throw ModelError("tests without adom require a complement table");
    if (t.complement) {
      check_range(*t.complement, n, n, "complement");
      for (Elem p : t.tests) {
        const Elem c = (*t.complement)[p.id];
        if (!contains(c))
          throw ModelError("complement of test '" + t.carrier[p.id] + "' is not a test");
        if ((*t.complement)[c.id] != p)
          throw ModelError("complement is not an involution at '" + t.carrier[p.id] + "'");
      }
    }
  }
  return FiniteAlgebra(std::move(t));
}

std::optional<Elem> FiniteAlgebra::find(std::string_view name) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (t_.carrier[i] == name)
      return Elem{static_cast<std::uint16_t>(i)};
  return std::nullopt;
}

std::vector<Elem> FiniteAlgebra::elements() const {
  std::vector<Elem> out(size());
  for (std::size_t i = 0; i < size(); ++i)
    out[i] = Elem{static_cast<std::uint16_t>(i)};
  return out;
}

Elem FiniteAlgebra::star(Elem a) const {
  if (!t_.star)
    throw MissingTableError("algebra has no star table");
  return (*t_.star)[a.id];
}

Elem FiniteAlgebra::adom(Elem a) const {
  if (!t_.adom)
    throw MissingTableError("algebra has no adom table");
  return (*t_.adom)[a.id];
}

Elem FiniteAlgebra::aran(Elem a) const {
  if (!t_.aran)
    throw MissingTableError("algebra has no aran table");
  return (*t_.aran)[a.id];
}

Elem FiniteAlgebra::complement(Elem a) const {
  if (!is_test(a))
    throw EvalError("complement of non-test element '" + name(a) + "'");
  if (t_.adom)
    return (*t_.adom)[a.id];
  if (t_.complement)
    return (*t_.complement)[a.id];
  if (t_.aran)
    return (*t_.aran)[a.id];
  throw MissingTableError("algebra has no complement table");
}

FiniteAlgebra FiniteAlgebra::with_tests(std::vector<Elem> tests,
                                        std::optional<std::vector<Elem>> complement) const {
  AlgebraTables t = t_;
  t.tests = std::move(tests);
  t.complement = std::move(complement);
  return create(std::move(t));
}

namespace {

std::vector<Elem> elems(std::initializer_list<int> ids) {
  std::vector<Elem> out;
  for (int i : ids)
    out.push_back(Elem{static_cast<std::uint16_t>(i)});
  return out;
}

} // namespace

FiniteAlgebra lemma4_model() {
  // Carrier order 0 < a < 1; indices 0, 1, 2.
  AlgebraTables t;
  t.carrier = {"0", "a", "1"};
  t.zero = Elem{0};
  t.one = Elem{2};
  t.plus = elems({0, 1, 2,   //
                  1, 1, 2,   //
                  2, 2, 2});
  t.times = elems({0, 0, 0,  //
                   0, 0, 1,  // a;a = 0
                   0, 1, 2});
  t.star = elems({2, 2, 2});
  t.tests = elems({0, 2});
  t.complement = elems({2, 1, 0});
  return FiniteAlgebra::create(std::move(t));
}

FiniteAlgebra trivial_algebra() {
  AlgebraTables t;
  t.carrier = {"0"};
  t.plus = elems({0});
  t.times = elems({0});
  t.star = elems({0});
  t.adom = elems({0});
  t.aran = elems({0});
  t.complement = elems({0});
  return FiniteAlgebra::create(std::move(t));
}

FiniteAlgebra boolean_kad() {
  AlgebraTables t;
  t.carrier = {"0", "1"};
  t.zero = Elem{0};
  t.one = Elem{1};
  t.plus = elems({0, 1, 1, 1});
  t.times = elems({0, 0, 0, 1});
  t.star = elems({1, 1});
  t.adom = elems({1, 0});
  t.aran = elems({1, 0});
  return FiniteAlgebra::create(std::move(t));
}

bool are_isomorphic(const FiniteAlgebra &a, const FiniteAlgebra &b) {
  const std::size_t n = a.size();
  const AlgebraTables &ta = a.tables();
  const AlgebraTables &tb = b.tables();
  if (n != b.size() || ta.tests.size() != tb.tests.size() ||
      ta.star.has_value() != tb.star.has_value() ||
      ta.adom.has_value() != tb.adom.has_value() ||
      ta.aran.has_value() != tb.aran.has_value())
    return false;

  std::vector<std::uint16_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto map = [&](Elem e) { return Elem{perm[e.id]}; };
  auto unary_ok = [&](const std::optional<std::vector<Elem>> &x,
                      const std::optional<std::vector<Elem>> &y) {
    if (!x)
      return true;
    for (std::size_t i = 0; i < n; ++i)
      if (map((*x)[i]) != (*y)[perm[i]])
        return false;
    return true;
  };
  do {
    if (map(ta.zero) != tb.zero || map(ta.one) != tb.one)
      continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i)
      for (std::size_t j = 0; ok && j < n; ++j) {
        const std::size_t mapped = perm[i] * n + perm[j];
        ok = map(ta.plus[i * n + j]) == tb.plus[mapped] &&
             map(ta.times[i * n + j]) == tb.times[mapped];
      }
    if (!ok || !unary_ok(ta.star, tb.star) || !unary_ok(ta.adom, tb.adom) ||
        !unary_ok(ta.aran, tb.aran))
      continue;
    for (Elem p : ta.tests) {
      const Elem q = map(p);
      if (!b.is_test(q) || map(a.complement(p)) != b.complement(q)) {
        ok = false;
        break;
      }
    }
    if (ok)
      return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

} // namespace kad
