#pragma once

// Axiom profiles and exhaustive law checking over finite pools of elements.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kad/algebra.hpp"
#include "kad/term.hpp"

namespace kad {

enum class AxiomProfile {
  Semiring,
  Dioid,
  Kleene,
  TS,
  KAT,
  AS,
  NearAS,
  KAD,
  ARS,
  KADR,
};

/// CLI spelling: semiring, dioid, kleene, ts, kat, as, near-as, kad, ars, kadr.
std::string_view to_string(AxiomProfile profile);
std::optional<AxiomProfile> parse_profile(std::string_view text);
const std::vector<AxiomProfile> &all_profiles();

enum class AxiomKind {
  /// lhs = rhs
  Equation,
  /// premise.first <= premise.second  implies  lhs <= rhs
  Implication,
  /// lhs is a test
  Membership,
};

struct Axiom {
  std::string name;
  AxiomKind kind;
  std::vector<std::string> element_vars;
  /// Range over the test subset only.
  std::vector<std::string> test_vars;
  Term lhs;
  Term rhs;
  std::optional<std::pair<Term, Term>> premise;
};

/// Axioms of the profile, desugared, in a fixed order. Profiles are
/// cumulative: KAT is Kleene plus the test-algebra laws, KAD is Kleene plus
/// the antidomain laws, and so on.
const std::vector<Axiom> &axioms_for(AxiomProfile profile);

bool profile_needs_star(AxiomProfile profile);
bool profile_needs_adom(AxiomProfile profile);
bool profile_needs_aran(AxiomProfile profile);
bool profile_needs_tests(AxiomProfile profile);

struct Violation {
  std::string axiom;
  /// (variable, value) in variable declaration order.
  std::vector<std::pair<std::string, std::string>> assignment;
  std::string lhs;
  std::string rhs;
};

struct CheckReport {
  AxiomProfile profile;
  bool passed = true;
  std::vector<Violation> violations;
  std::uint64_t instances = 0;
};

struct CheckOptions {
  /// Violations recorded per axiom; the first ones in assignment order.
  std::size_t max_violations_per_axiom = 1;
};

namespace detail {

template <class T> struct Assignment {
  const Axiom *axiom;
  std::vector<T> values; // element vars, then test vars

  T operator()(const Term &v) const {
    const auto &ev = axiom->element_vars;
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (ev[i] == v.name())
        return values[i];
    const auto &tv = axiom->test_vars;
    for (std::size_t i = 0; i < tv.size(); ++i)
      if (tv[i] == v.name())
        return values[ev.size() + i];
    throw EvalError("axiom '" + axiom->name + "' uses undeclared variable " + v.name());
  }
};

} // namespace detail

/// Instantiates every axiom of `profile` with all assignments drawn from
/// `elements` (element variables) and `tests` (test variables), in
/// lexicographic order with the first variable most significant.
template <TermModel Model, class Printer>
CheckReport check_laws(const Model &model, AxiomProfile profile,
                       std::span<const typename Model::value_type> elements,
                       std::span<const typename Model::value_type> tests, Printer &&print,
                       const CheckOptions &options = {}) {
  using T = typename Model::value_type;
  CheckReport report{profile, true, {}, 0};
  auto leq = [&](const T &a, const T &b) { return model.plus(a, b) == b; };

  for (const Axiom &ax : axioms_for(profile)) {
    const std::size_t ne = ax.element_vars.size();
    const std::size_t nv = ne + ax.test_vars.size();
    auto pool = [&](std::size_t i) { return i < ne ? elements : tests; };
    bool empty_pool = false;
    for (std::size_t i = 0; i < nv; ++i)
      empty_pool = empty_pool || pool(i).empty();
    if (empty_pool)
      continue;

    std::vector<std::size_t> idx(nv, 0);
    detail::Assignment<T> assign{&ax, {}};
    std::size_t recorded = 0;
    for (;;) {
      assign.values.clear();
      for (std::size_t i = 0; i < nv; ++i)
        assign.values.push_back(pool(i)[idx[i]]);
      ++report.instances;

      bool ok = true;
      std::optional<T> l;
      std::optional<T> r;
      switch (ax.kind) {
      case AxiomKind::Equation:
        l = evaluate(model, ax.lhs, assign);
        r = evaluate(model, ax.rhs, assign);
        ok = *l == *r;
        break;
      case AxiomKind::Implication:
        if (leq(evaluate(model, ax.premise->first, assign),
                evaluate(model, ax.premise->second, assign))) {
          l = evaluate(model, ax.lhs, assign);
          r = evaluate(model, ax.rhs, assign);
          ok = leq(*l, *r);
        }
        break;
      case AxiomKind::Membership:
        l = evaluate(model, ax.lhs, assign);
        ok = model.is_test(*l);
        break;
      }

      if (!ok) {
        report.passed = false;
        if (recorded < options.max_violations_per_axiom) {
          ++recorded;
          Violation v;
          v.axiom = ax.name;
          for (std::size_t i = 0; i < nv; ++i)
            v.assignment.emplace_back(i < ne ? ax.element_vars[i] : ax.test_vars[i - ne],
                                      print(assign.values[i]));
          v.lhs = l ? print(*l) : std::string();
          v.rhs = r ? print(*r) : std::string(ax.kind == AxiomKind::Membership ? "not a test" : "");
          report.violations.push_back(std::move(v));
        }
      }

      bool carry = true;
      for (std::size_t k = nv; carry && k > 0; --k) {
        if (++idx[k - 1] < pool(k - 1).size())
          carry = false;
        else
          idx[k - 1] = 0;
      }
      if (carry)
        break;
    }
  }
  return report;
}

/// Exhaustive check of a finite algebra. Throws MissingTableError when the
/// profile needs a table the algebra lacks.
CheckReport check_axioms(const FiniteAlgebra &algebra, AxiomProfile profile,
                         const CheckOptions &options = {});

/// One line per violation, or "passed".
std::string describe(const CheckReport &report);

} // namespace kad
