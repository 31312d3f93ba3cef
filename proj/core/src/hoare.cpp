#include "kad/hoare.hpp"

namespace kad {

namespace {

void require_test(const Rel &r, const char *what) {
  if (!r.is_subidentity())
    throw ModelError(std::string(what) + " is not a test: " + print_relation(r));
}

const Rel &lookup(const std::map<std::string, Rel, std::less<>> &table, const std::string &name,
                  const char *kind, const StateSpace &space) {
  auto it = table.find(name);
  if (it == table.end())
    throw EvalError(std::string("unbound ") + kind + " '" + name + "'");
  if (!(it->second.space() == space))
    throw ModelError(std::string(kind) + " '" + name + "' lives on another state space");
  return it->second;
}

} // namespace

Rel denote(const TestExpr &t, const Bindings &b) {
  switch (t.kind()) {
  case TestExpr::Kind::Zero:
    return Rel::empty(b.space);
  case TestExpr::Kind::One:
    return Rel::identity(b.space);
  case TestExpr::Kind::Id: {
    const Rel &r = lookup(b.tests, t.name(), "test", b.space);
    require_test(r, ("test '" + t.name() + "'").c_str());
    return r;
  }
  case TestExpr::Kind::Not:
    return test_complement(denote(t.lhs(), b));
  case TestExpr::Kind::And:
    return compose(denote(t.lhs(), b), denote(t.rhs(), b));
  case TestExpr::Kind::Or:
    return unite(denote(t.lhs(), b), denote(t.rhs(), b));
  }
  throw EvalError("unknown test expression");
}

Rel denote(const Program &p, const Bindings &b) {
  switch (p.kind()) {
  case Program::Kind::Skip:
    return Rel::identity(b.space);
  case Program::Kind::Atom:
    return lookup(b.atoms, p.name(), "atom", b.space);
  case Program::Kind::Seq:
    return compose(denote(p.first(), b), denote(p.second(), b));
  case Program::Kind::If: {
    const Rel t = denote(p.guard(), b);
    return unite(compose(t, denote(p.first(), b)),
                 compose(test_complement(t), denote(p.second(), b)));
  }
  case Program::Kind::While: {
    const Rel t = denote(p.guard(), b);
    return compose(star(compose(t, denote(p.first(), b))), test_complement(t));
  }
  }
  throw EvalError("unknown program");
}

bool triple_holds(const Rel &p, const Rel &x, const Rel &q) {
  require_test(p, "precondition");
  return compose(compose(p, x), test_complement(q)).is_empty();
}

bool holds(const HoareTriple &t, const Bindings &b) {
  return triple_holds(t.pre, denote(t.prog, b), t.post);
}

Rel wlp(const Program &p, const Rel &post, const Bindings &b) { return box(denote(p, b), post); }

std::string to_string(SynthMethod m) {
  switch (m) {
  case SynthMethod::Wlp:
    return "wlp";
  case SynthMethod::Range:
    return "range";
  case SynthMethod::Meet:
    return "meet";
  }
  return "?";
}

SynthMethod parse_synth_method(std::string_view name) {
  if (name == "wlp")
    return SynthMethod::Wlp;
  if (name == "range")
    return SynthMethod::Range;
  if (name == "meet")
    return SynthMethod::Meet;
  throw Error("unknown synthesis method '" + std::string(name) + "' (expected wlp, range or meet)");
}

Rel synth_mid(const Rel &x, const Rel &y, const Rel &p, const Rel &q, SynthMethod method) {
  if (!triple_holds(p, compose(x, y), q))
    throw PreconditionError("premise {p} x;y {q} does not hold");
  const Rel weakest = adom(compose(y, test_complement(q)));
  const Rel strongest = aran(aran(compose(p, x)));
  switch (method) {
  case SynthMethod::Wlp:
    return weakest;
  case SynthMethod::Range:
    return strongest;
  case SynthMethod::Meet:
    return compose(strongest, weakest);
  }
  throw Error("unknown synthesis method");
}

Rel synth_mid(const Program &x, const Program &y, const Rel &p, const Rel &q,
              SynthMethod method, const Bindings &b) {
  return synth_mid(denote(x, b), denote(y, b), p, q, method);
}

std::string to_string(Rule r) {
  switch (r) {
  case Rule::Seq:
    return "seq";
  case Rule::If:
    return "if";
  case Rule::While:
    return "while";
  case Rule::Conseq:
    return "conseq";
  }
  return "?";
}

bool InversionReport::passed() const {
  for (const auto &d : directions)
    if (d.required && !d.holds())
      return false;
  return true;
}

namespace {

InversionReport check(const SeqInstance &in) {
  const bool whole = triple_holds(in.p, compose(in.x, in.y), in.q);
  const bool split = triple_holds(in.p, in.x, box(in.y, in.q));
  return {Rule::Seq,
          {{"{p}x{[y]q} => {p}x;y{q}", split, whole, true},
           {"{p}x;y{q} => {p}x{[y]q}", whole, split, true}}};
}

InversionReport check(const IfInstance &in) {
  require_test(in.t, "guard");
  const Rel not_t = test_complement(in.t);
  const Rel program = unite(compose(in.t, in.x), compose(not_t, in.y));
  const bool branches = triple_holds(compose(in.p, in.t), in.x, in.q) &&
                        triple_holds(compose(in.p, not_t), in.y, in.q);
  const bool whole = triple_holds(in.p, program, in.q);
  return {Rule::If,
          {{"{p;t}x{q} & {p;!t}y{q} => {p} if t then x else y {q}", branches, whole, true},
           {"{p} if t then x else y {q} => {p;t}x{q} & {p;!t}y{q}", whole, branches, true}}};
}

InversionReport check(const WhileInstance &in) {
  require_test(in.t, "guard");
  const Rel not_t = test_complement(in.t);
  const Rel iterate = star(compose(in.t, in.x));
  const Rel loop = compose(iterate, not_t);
  const bool body = triple_holds(compose(in.p, in.t), in.x, in.p);
  const bool invariant = triple_holds(in.p, iterate, in.p);
  const bool whole = triple_holds(in.p, loop, compose(in.p, not_t));
  return {Rule::While,
          {{"{p;t}x{p} => {p} while t do x {p;!t}", body, whole, true},
           {"{p;t}x{p} => {p}(t;x)*{p}", body, invariant, true},
           {"{p}(t;x)*{p} => {p;t}x{p}", invariant, body, true},
           // Not valid in general: the loop may never reach a state where
           // the body breaks p on its way out.
           {"{p} while t do x {p;!t} => {p;t}x{p}", whole, body, false}}};
}

InversionReport check(const ConseqInstance &in) {
  require_test(in.p2, "p2");
  require_test(in.q2, "q2");
  const bool premise = leq(in.p, in.p2) && triple_holds(in.p2, in.x, in.q2) && leq(in.q2, in.q);
  const bool conclusion = triple_holds(in.p, in.x, in.q);
  // Inverse: p itself and q itself are admissible intermediate tests.
  const bool inverse = leq(in.p, in.p) && triple_holds(in.p, in.x, in.q) && leq(in.q, in.q);
  return {Rule::Conseq,
          {{"p <= p2 & {p2}x{q2} & q2 <= q => {p}x{q}", premise, conclusion, true},
           {"{p}x{q} => p <= p & {p}x{q} & q <= q", conclusion, inverse, true},
           {"{p}x{q} => p <= [x]q", conclusion, leq(in.p, box(in.x, in.q)), true}}};
}

} // namespace

InversionReport check_rule_inversion(const RuleInstance &instance) {
  return std::visit([](const auto &in) { return check(in); }, instance);
}

bool VcResult::valid() const {
  for (const auto &vc : conditions)
    if (!vc.valid())
      return false;
  return true;
}

namespace {

class VcGenerator {
public:
  VcGenerator(const Bindings &b, const std::vector<Rel> &invariants)
      : b_(b), invariants_(invariants) {}

  Rel precondition(const Program &p, const Rel &post) {
    switch (p.kind()) {
    case Program::Kind::Skip:
    case Program::Kind::Atom:
      return box(denote(p, b_), post);
    case Program::Kind::Seq:
      return precondition(p.first(), precondition(p.second(), post));
    case Program::Kind::If: {
      const Rel t = denote(p.guard(), b_);
      return unite(compose(t, precondition(p.first(), post)),
                   compose(test_complement(t), precondition(p.second(), post)));
    }
    case Program::Kind::While: {
      const std::size_t index = next_loop_++;
      if (index >= invariants_.size()) {
        skip_loops(p.first());
        return box(denote(p, b_), post);
      }
      const Rel &inv = invariants_[index];
      require_test(inv, "invariant");
      const Rel t = denote(p.guard(), b_);
      const std::string loop = "loop " + std::to_string(index + 1);
      const Rel body = precondition(p.first(), inv);
      conditions_.push_back({loop + " preserves invariant", compose(inv, t), body});
      conditions_.push_back({loop + " exit establishes post", compose(inv, test_complement(t)), post});
      return inv;
    }
    }
    throw EvalError("unknown program");
  }

  std::vector<VerificationCondition> take_conditions() { return std::move(conditions_); }

private:
  // Nested loops inside an unannotated loop still consume their slots.
  void skip_loops(const Program &p) { next_loop_ += count_loops(p); }

  const Bindings &b_;
  const std::vector<Rel> &invariants_;
  std::size_t next_loop_ = 0;
  std::vector<VerificationCondition> conditions_;
};

} // namespace

VcResult generate_vcs(const Program &p, const Rel &pre, const Rel &post, const Bindings &b,
                      const std::vector<Rel> &invariants) {
  require_test(pre, "precondition");
  require_test(post, "postcondition");
  if (invariants.size() > count_loops(p))
    throw Error("program has " + std::to_string(count_loops(p)) + " loop(s) but " +
                std::to_string(invariants.size()) + " invariant(s) were given");
  VcGenerator gen(b, invariants);
  VcResult out{gen.precondition(p, post), {}};
  out.conditions = gen.take_conditions();
  out.conditions.push_back({"precondition implies computed precondition", pre, out.precondition});
  return out;
}

} // namespace kad
