#include "kad/model_search.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kad/phi.hpp"

namespace kad {

std::optional<PhiConstraint> parse_constraint(std::string_view text) {
  if (text == "phi-fails")
    return PhiConstraint::Fails;
  if (text == "phi-holds")
    return PhiConstraint::Holds;
  return std::nullopt;
}

std::string_view to_string(PhiConstraint constraint) {
  return constraint == PhiConstraint::Fails ? "phi-fails" : "phi-holds";
}

namespace {

constexpr int kUnknown = -1;
constexpr int kNotApplicable = -2;

// Tables under construction. Every operation yields kUnknown as soon as an
// argument or the table cell it reads is unknown.
struct PartialModel {
  using value_type = int;

  int n = 0;
  bool complement_by_adom = false;
  bool complement_by_aran = false;
  std::vector<int> plus_t, times_t, star_t, adom_t, aran_t, test_t, comp_t;

  int zero() const { return 0; }
  int one() const { return n - 1; }
  int plus(int a, int b) const { return a < 0 || b < 0 ? kUnknown : plus_t[a * n + b]; }
  int times(int a, int b) const { return a < 0 || b < 0 ? kUnknown : times_t[a * n + b]; }
  int star(int a) const { return a < 0 ? kUnknown : star_t[a]; }
  int adom(int a) const { return a < 0 ? kUnknown : adom_t[a]; }
  int aran(int a) const { return a < 0 ? kUnknown : aran_t[a]; }
  int complement(int a) const {
    if (a < 0)
      return kUnknown;
    if (complement_by_adom)
      return adom_t[a];
    if (complement_by_aran)
      return aran_t[a];
    const int c = comp_t[a];
    return c < 0 ? kUnknown : c;
  }
  bool is_test(int a) const { return a >= 0 && test_t[a] == 1; }
};

enum class CellKind { Test, Comp, Plus, Times, Star, Adom, Aran };

struct Cell {
  CellKind kind;
  int a;
  int b;
};

struct Instance {
  const Axiom *axiom;
  std::vector<int> values;
};

class Searcher {
public:
  Searcher(std::size_t size, AxiomProfile profile, std::optional<PhiConstraint> constraint,
           const std::function<bool(const FiniteAlgebra &)> &sink, std::size_t limit)
      : n_(static_cast<int>(size)), profile_(profile), constraint_(constraint), sink_(sink),
        limit_(limit) {
    with_star_ = profile_needs_star(profile);
    with_adom_ = profile_needs_adom(profile);
    with_aran_ = profile_needs_aran(profile);
    with_tests_ = profile_needs_tests(profile);

    pm_.n = n_;
    pm_.complement_by_adom = with_adom_;
    pm_.complement_by_aran = !with_adom_ && with_aran_;
    pm_.plus_t.assign(n_ * n_, kUnknown);
    pm_.times_t.assign(n_ * n_, kUnknown);
    pm_.star_t.assign(n_, with_star_ ? kUnknown : kNotApplicable);
    pm_.adom_t.assign(n_, with_adom_ ? kUnknown : kNotApplicable);
    pm_.aran_t.assign(n_, with_aran_ ? kUnknown : kNotApplicable);
    pm_.test_t.assign(n_, with_tests_ ? kUnknown : 0);
    pm_.comp_t.assign(n_, with_tests_ ? kUnknown : kNotApplicable);

    build_cells();
    build_instances();
  }

  SearchStats run() {
    std::vector<std::uint32_t> all(instances_.size());
    std::iota(all.begin(), all.end(), 0u);
    pending_.assign(cells_.size() + 1, {});
    pending_[0] = std::move(all);
    search(0);
    return stats_;
  }

private:
  void build_cells() {
    if (with_tests_) {
      for (int i = 0; i < n_; ++i)
        cells_.push_back({CellKind::Test, i, 0});
      for (int i = 0; i < n_; ++i)
        cells_.push_back({CellKind::Comp, i, 0});
    }
    // Grow the filled sub-square one element at a time so that instances
    // over small elements are decided early.
    for (int k = 0; k < n_; ++k) {
      for (CellKind kind : {CellKind::Plus, CellKind::Times})
        for (int i = 0; i <= k; ++i)
          for (int j = 0; j <= k; ++j)
            if (std::max(i, j) == k)
              cells_.push_back({kind, i, j});
      if (with_star_)
        cells_.push_back({CellKind::Star, k, 0});
      if (with_adom_)
        cells_.push_back({CellKind::Adom, k, 0});
      if (with_aran_)
        cells_.push_back({CellKind::Aran, k, 0});
    }
  }

  void build_instances() {
    for (const Axiom &ax : axioms_for(profile_)) {
      const std::size_t nv = ax.element_vars.size() + ax.test_vars.size();
      std::vector<int> values(nv, 0);
      for (;;) {
        instances_.push_back({&ax, values});
        std::size_t k = nv;
        bool carry = true;
        for (; carry && k > 0; --k) {
          if (++values[k - 1] < n_)
            carry = false;
          else
            values[k - 1] = 0;
        }
        if (carry)
          break;
      }
    }
  }

  int &slot(const Cell &c) {
    switch (c.kind) {
    case CellKind::Test:
      return pm_.test_t[c.a];
    case CellKind::Comp:
      return pm_.comp_t[c.a];
    case CellKind::Plus:
      return pm_.plus_t[c.a * n_ + c.b];
    case CellKind::Times:
      return pm_.times_t[c.a * n_ + c.b];
    case CellKind::Star:
      return pm_.star_t[c.a];
    case CellKind::Adom:
      return pm_.adom_t[c.a];
    case CellKind::Aran:
      return pm_.aran_t[c.a];
    }
    return pm_.plus_t[0];
  }

  std::vector<int> domain(const Cell &c) const {
    std::vector<int> out;
    if (c.kind == CellKind::Test) {
      out = {0, 1};
    } else if (c.kind == CellKind::Comp) {
      if (pm_.test_t[c.a] != 1)
        return {kNotApplicable};
      for (int e = 0; e < n_; ++e)
        if (pm_.test_t[e] == 1)
          out.push_back(e);
    } else {
      out.resize(n_);
      std::iota(out.begin(), out.end(), 0);
    }
    return out;
  }

  // 1 true, 0 false, -1 undecided on the current partial tables.
  int decide(const Instance &inst) const {
    const Axiom &ax = *inst.axiom;
    const std::size_t ne = ax.element_vars.size();
    for (std::size_t i = ne; i < inst.values.size(); ++i) {
      const int membership = pm_.test_t[inst.values[i]];
      if (membership < 0)
        return -1;
      if (membership == 0)
        return 1;
    }
    detail::Assignment<int> assign{&ax, inst.values};
    switch (ax.kind) {
    case AxiomKind::Equation: {
      const int l = evaluate(pm_, ax.lhs, assign);
      if (l < 0)
        return -1;
      const int r = evaluate(pm_, ax.rhs, assign);
      if (r < 0)
        return -1;
      return l == r;
    }
    case AxiomKind::Implication: {
      const int a = evaluate(pm_, ax.premise->first, assign);
      const int b = evaluate(pm_, ax.premise->second, assign);
      const int ab = pm_.plus(a, b);
      if (ab < 0)
        return -1;
      if (ab != b)
        return 1;
      const int l = evaluate(pm_, ax.lhs, assign);
      const int r = evaluate(pm_, ax.rhs, assign);
      const int lr = pm_.plus(l, r);
      if (lr < 0)
        return -1;
      return lr == r;
    }
    case AxiomKind::Membership: {
      const int v = evaluate(pm_, ax.lhs, assign);
      if (v < 0)
        return -1;
      const int membership = pm_.test_t[v];
      return membership < 0 ? -1 : membership;
    }
    }
    return -1;
  }

  bool search(std::size_t depth) {
    if (depth == cells_.size())
      return emit(depth);
    const Cell &cell = cells_[depth];
    int &target = slot(cell);
    for (int value : domain(cell)) {
      target = value;
      ++stats_.nodes;
      std::vector<std::uint32_t> &next = pending_[depth + 1];
      next.clear();
      bool violated = false;
      for (std::uint32_t id : pending_[depth]) {
        const int verdict = decide(instances_[id]);
        if (verdict == 0) {
          violated = true;
          break;
        }
        if (verdict < 0)
          next.push_back(id);
      }
      if (!violated && !search(depth + 1)) {
        target = kUnknown;
        return false;
      }
    }
    target = kUnknown;
    return true;
  }

  // Encoding used for duplicate suppression, after relabelling by `perm`.
  std::vector<int> encode(const std::vector<int> &perm) const {
    std::vector<int> inverse(n_);
    for (int i = 0; i < n_; ++i)
      inverse[perm[i]] = i;
    auto mapped = [&](int v) { return v < 0 ? v : perm[v]; };
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      out.push_back(pm_.test_t[inverse[i]]);
    for (int i = 0; i < n_; ++i)
      out.push_back(mapped(pm_.comp_t[inverse[i]]));
    for (const auto *table : {&pm_.plus_t, &pm_.times_t})
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          out.push_back(mapped((*table)[inverse[i] * n_ + inverse[j]]));
    for (const auto *table : {&pm_.star_t, &pm_.adom_t, &pm_.aran_t})
      for (int i = 0; i < n_; ++i)
        out.push_back(mapped((*table)[inverse[i]]));
    return out;
  }

  bool is_canonical() const {
    if (n_ <= 3)
      return true; // at most one element besides 0 and 1
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    const std::vector<int> identity = encode(perm);
    while (std::next_permutation(perm.begin() + 1, perm.end() - 1))
      if (encode(perm) < identity)
        return false;
    return true;
  }

  FiniteAlgebra materialize() const {
    AlgebraTables t;
    for (int i = 0; i < n_; ++i) {
      if (i == 0)
        t.carrier.push_back("0");
      else if (i == n_ - 1)
        t.carrier.push_back("1");
      else
        t.carrier.push_back(std::string(1, static_cast<char>('a' + i - 1)));
    }
    auto elems = [](const std::vector<int> &v) {
      std::vector<Elem> out;
      for (int x : v)
        out.push_back(Elem{static_cast<std::uint16_t>(x < 0 ? 0 : x)});
      return out;
    };
    t.zero = Elem{0};
    t.one = Elem{static_cast<std::uint16_t>(n_ - 1)};
    t.plus = elems(pm_.plus_t);
    t.times = elems(pm_.times_t);
    if (with_star_)
      t.star = elems(pm_.star_t);
    if (with_adom_)
      t.adom = elems(pm_.adom_t);
    if (with_aran_)
      t.aran = elems(pm_.aran_t);
    if (with_tests_) {
      for (int i = 0; i < n_; ++i)
        if (pm_.test_t[i] == 1)
          t.tests.push_back(Elem{static_cast<std::uint16_t>(i)});
      t.complement = elems(pm_.comp_t);
    }
    return FiniteAlgebra::create(std::move(t));
  }

  bool emit(std::size_t depth) {
    if (!pending_[depth].empty())
      return true; // an instance could not be decided; not a model
    if (!is_canonical()) {
      ++stats_.duplicates;
      return true;
    }
    FiniteAlgebra algebra = materialize();
    if (constraint_) {
      const bool holds = check_phi(algebra).holds;
      if (holds != (*constraint_ == PhiConstraint::Holds))
        return true;
    }
    ++stats_.models;
    if (!sink_(algebra))
      return false;
    return limit_ == 0 || stats_.models < limit_;
  }

  int n_;
  AxiomProfile profile_;
  std::optional<PhiConstraint> constraint_;
  const std::function<bool(const FiniteAlgebra &)> &sink_;
  std::size_t limit_;
  bool with_star_ = false;
  bool with_adom_ = false;
  bool with_aran_ = false;
  bool with_tests_ = false;

  PartialModel pm_;
  std::vector<Cell> cells_;
  std::vector<Instance> instances_;
  std::vector<std::vector<std::uint32_t>> pending_;
  SearchStats stats_;
};

} // namespace

SearchStats find_models(std::size_t size, AxiomProfile profile,
                        std::optional<PhiConstraint> constraint,
                        const std::function<bool(const FiniteAlgebra &)> &sink,
                        const SearchOptions &options) {
  if (size == 0)
    throw BoundError("model size must be positive");
  if (size > options.max_size)
    throw BoundError("model size " + std::to_string(size) + " exceeds the search bound " +
                     std::to_string(options.max_size));
  const bool has_tests = profile_needs_tests(profile) || profile_needs_adom(profile) ||
                         profile_needs_aran(profile);
  if (constraint && !has_tests)
    throw PreconditionError("profile " + std::string(to_string(profile)) +
                            " has no tests; the sequencing constraint does not apply");
  Searcher searcher(size, profile, constraint, sink, options.limit);
  return searcher.run();
}

std::vector<FiniteAlgebra> find_models(std::size_t size, AxiomProfile profile,
                                       std::optional<PhiConstraint> constraint,
                                       const SearchOptions &options) {
  std::vector<FiniteAlgebra> out;
  find_models(
      size, profile, constraint,
      [&](const FiniteAlgebra &a) {
        out.push_back(a);
        return true;
      },
      options);
  return out;
}

} // namespace kad
