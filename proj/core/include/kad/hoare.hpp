#pragma once

// Relational semantics of while programs, Hoare triples, weakest liberal
// preconditions, intermediate assertions and the invertibility of the
// propositional Hoare rules.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kad/program.hpp"
#include "kad/relation.hpp"

namespace kad {

struct Bindings {
  StateSpace space;
  std::map<std::string, Rel, std::less<>> atoms;
  /// Every bound test is a subidentity.
  std::map<std::string, Rel, std::less<>> tests;
};

/// Throws EvalError for unbound names and ModelError for a bound test that
/// is not a subidentity or lives on another space.
Rel denote(const TestExpr &t, const Bindings &b);
/// skip = id, if t then x else y = t;X + !t;Y, while t do x = (t;X)*;!t.
Rel denote(const Program &p, const Bindings &b);

/// {p}x{q} iff p;x;!q is empty. Throws ModelError unless p and q are tests.
bool triple_holds(const Rel &p, const Rel &x, const Rel &q);

struct HoareTriple {
  Rel pre;
  Program prog;
  Rel post;
};

bool holds(const HoareTriple &t, const Bindings &b);
/// box(denote(p), post).
Rel wlp(const Program &p, const Rel &post, const Bindings &b);

enum class SynthMethod { Wlp, Range, Meet };
std::string to_string(SynthMethod m);
/// "wlp", "range", "meet"; throws Error otherwise.
SynthMethod parse_synth_method(std::string_view name);

/// A test r with {p}X{r} and {r}Y{q}. Wlp gives box(Y, q), Range gives
/// r(p;X) through double antirange, Meet their product. Throws
/// PreconditionError when {p}X;Y{q} fails.
Rel synth_mid(const Rel &x, const Rel &y, const Rel &p, const Rel &q, SynthMethod method);
Rel synth_mid(const Program &x, const Program &y, const Rel &p, const Rel &q,
              SynthMethod method, const Bindings &b);

enum class Rule { Seq, If, While, Conseq };
std::string to_string(Rule r);

/// {p}X;Y{q}.
struct SeqInstance {
  Rel p, x, y, q;
};
/// {p} if t then X else Y {q}.
struct IfInstance {
  Rel p, t, x, y, q;
};
/// {p} while t do X {p;!t}.
struct WhileInstance {
  Rel p, t, x;
};
/// From p <= p2, {p2}X{q2}, q2 <= q to {p}X{q}.
struct ConseqInstance {
  Rel p, p2, x, q2, q;
};
using RuleInstance = std::variant<SeqInstance, IfInstance, WhileInstance, ConseqInstance>;

struct RuleDirection {
  std::string name;
  bool premise;
  bool conclusion;
  /// Directions that must hold in every relational model; the others are
  /// reported for information only.
  bool required;

  [[nodiscard]] bool holds() const { return !premise || conclusion; }
};

struct InversionReport {
  Rule rule;
  std::vector<RuleDirection> directions;

  /// Every required direction holds.
  [[nodiscard]] bool passed() const;
};

/// Throws ModelError when a component that should be a test is not one.
InversionReport check_rule_inversion(const RuleInstance &instance);

struct VerificationCondition {
  std::string label;
  Rel lhs;
  Rel rhs;

  /// lhs <= rhs.
  [[nodiscard]] bool valid() const { return leq(lhs, rhs); }
};

struct VcResult {
  /// Precondition computed backwards from the postcondition.
  Rel precondition;
  /// Side conditions of annotated loops, then pre <= precondition last.
  std::vector<VerificationCondition> conditions;

  [[nodiscard]] bool valid() const;
};

/// Loops with an entry in `invariants` (source order) use the invariant
/// rule; the others use the exact wlp of the loop. Throws ModelError for a
/// non-test invariant and Error for more invariants than loops.
VcResult generate_vcs(const Program &p, const Rel &pre, const Rel &post, const Bindings &b,
                      const std::vector<Rel> &invariants = {});

} // namespace kad
