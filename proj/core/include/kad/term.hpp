#pragma once

// Term language shared by every model: Kleene algebra operators, tests,
// antidomain/antirange and the box modality.

#include <concepts>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "kad/error.hpp"

namespace kad {

enum class Op {
  Zero,
  One,
  Var,
  TestVar,
  Plus,
  Times,
  Star,
  Not,
  ADom,
  Dom,
  ARan,
  Ran,
  Box,
};

enum class Sort { Element, Test };

/// Immutable, structurally shared term. Copies are cheap.
class Term {
public:
  static Term zero();
  static Term one();
  static Term var(std::string name);
  static Term test_var(std::string name);
  static Term plus(Term lhs, Term rhs);
  static Term times(Term lhs, Term rhs);
  static Term star(Term arg);
  static Term negate(Term arg);
  static Term adom(Term arg);
  static Term dom(Term arg);
  static Term aran(Term arg);
  static Term ran(Term arg);
  /// [program]post
  static Term box(Term program, Term post);

  [[nodiscard]] Op op() const;
  /// Variable name; empty for every other node.
  [[nodiscard]] const std::string &name() const;
  /// First operand (the only one for unary nodes).
  [[nodiscard]] const Term &lhs() const;
  [[nodiscard]] const Term &rhs() const;

  [[nodiscard]] bool is_variable() const {
    return op() == Op::Var || op() == Op::TestVar;
  }

  friend bool operator==(const Term &a, const Term &b);

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Op op, std::string name, Term lhs, Term rhs);
  static Term make(Op op, std::string name);

  std::shared_ptr<const Node> node_;
};

/// Test iff the term is built from tests, 0, 1, +/; of tests, complement,
/// and the (anti)domain, (anti)range or box operators. Plain variables whose
/// names appear in `declared_tests` count as tests as well.
/// Throws SortError when complement is applied to an element-sorted term.
Sort sort_of(const Term &t, const std::set<std::string, std::less<>> &declared_tests = {});

/// Expands box, domain and range into antidomain/antirange form.
Term desugar(const Term &t);

/// True if the term contains no Box, Dom or Ran nodes.
bool is_desugared(const Term &t);

/// Parses the ASCII term grammar. Identifiers in `tests` become test
/// variables; all other identifiers are element variables.
Term parse_term(std::string_view text,
                const std::set<std::string, std::less<>> &tests = {});

/// Prints with minimal parentheses; parse_term(print_term(t)) == t.
std::string print_term(const Term &t);

std::set<std::string> element_variables(const Term &t);
std::set<std::string> test_variables(const Term &t);

/// Operations every evaluation target provides. Models without a table for
/// an operator throw MissingTableError from the corresponding member.
template <class M>
concept TermModel = requires(const M &m, const typename M::value_type &v) {
  { m.zero() } -> std::convertible_to<typename M::value_type>;
  { m.one() } -> std::convertible_to<typename M::value_type>;
  { m.plus(v, v) } -> std::convertible_to<typename M::value_type>;
  { m.times(v, v) } -> std::convertible_to<typename M::value_type>;
  { m.star(v) } -> std::convertible_to<typename M::value_type>;
  { m.adom(v) } -> std::convertible_to<typename M::value_type>;
  { m.aran(v) } -> std::convertible_to<typename M::value_type>;
  { m.complement(v) } -> std::convertible_to<typename M::value_type>;
  { m.is_test(v) } -> std::convertible_to<bool>;
};

/// Variable bindings for one model.
template <class T> struct BasicEnv {
  std::map<std::string, T, std::less<>> elements;
  std::map<std::string, T, std::less<>> tests;
};

/// Homomorphic evaluation of a desugared term. `lookup` maps a variable
/// node to its value.
template <TermModel Model, class Lookup>
typename Model::value_type evaluate(const Model &model, const Term &t, Lookup &&lookup) {
  switch (t.op()) {
  case Op::Zero:
    return model.zero();
  case Op::One:
    return model.one();
  case Op::Var:
  case Op::TestVar:
    return lookup(t);
  case Op::Plus:
    return model.plus(evaluate(model, t.lhs(), lookup), evaluate(model, t.rhs(), lookup));
  case Op::Times:
    return model.times(evaluate(model, t.lhs(), lookup), evaluate(model, t.rhs(), lookup));
  case Op::Star:
    return model.star(evaluate(model, t.lhs(), lookup));
  case Op::Not:
    return model.complement(evaluate(model, t.lhs(), lookup));
  case Op::ADom:
    return model.adom(evaluate(model, t.lhs(), lookup));
  case Op::ARan:
    return model.aran(evaluate(model, t.lhs(), lookup));
  case Op::Dom:
  case Op::Ran:
  case Op::Box:
    break;
  }
  throw EvalError("term is not desugared: " + print_term(t));
}

/// Desugars `t` and evaluates it under `env`. Test variables must be bound
/// in env.tests to test elements of the model.
template <TermModel Model>
typename Model::value_type eval(const Model &model, const Term &t,
                                const BasicEnv<typename Model::value_type> &env) {
  const Term core = desugar(t);
  return evaluate(model, core, [&](const Term &v) -> typename Model::value_type {
    if (v.op() == Op::TestVar) {
      auto it = env.tests.find(v.name());
      if (it == env.tests.end())
        throw EvalError("unbound test variable '" + v.name() + "'");
      if (!model.is_test(it->second))
        throw EvalError("test variable '" + v.name() + "' is bound to a non-test element");
      return it->second;
    }
    auto it = env.elements.find(v.name());
    if (it == env.elements.end())
      throw EvalError("unbound variable '" + v.name() + "'");
    return it->second;
  });
}

} // namespace kad
