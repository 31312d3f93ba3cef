#include <random>

#include <gtest/gtest.h>

#include "kad/hoare.hpp"

#include "oracles.hpp"

using namespace kad;

namespace {

Bindings bindings_for(const StateSpace &s) { return Bindings{s, {}, {}}; }

Rel test_of(const StateSpace &s, std::initializer_list<std::size_t> states) {
  return Rel::test(s, std::vector<std::size_t>(states));
}

Program random_program(std::mt19937_64 &rng, int depth) {
  switch (depth <= 0 ? rng() % 3 : rng() % 6) {
  case 0:
    return Program::skip();
  case 1:
    return Program::atom("x");
  case 2:
    return Program::atom("y");
  case 3:
    return Program::seq(random_program(rng, depth - 1), random_program(rng, depth - 1));
  case 4:
    return Program::if_then_else(rng() & 1u ? TestExpr::id("t") : TestExpr::negate(TestExpr::id("t")),
                                 random_program(rng, depth - 1), random_program(rng, depth - 1));
  default:
    return Program::while_do(TestExpr::id("t"), random_program(rng, depth - 1));
  }
}

// Independent semantics over set relations.
oracle::SetRel denote_oracle(const Program &p, const Bindings &b) {
  using namespace oracle;
  const std::size_t n = b.space.size();
  switch (p.kind()) {
  case Program::Kind::Skip:
    return identity(n);
  case Program::Kind::Atom:
    return from(b.atoms.at(p.name()));
  case Program::Kind::Seq:
    return compose(denote_oracle(p.first(), b), denote_oracle(p.second(), b));
  case Program::Kind::If: {
    const SetRel t = from(denote(p.guard(), b));
    return unite(compose(t, denote_oracle(p.first(), b)),
                 compose(complement(t), denote_oracle(p.second(), b)));
  }
  case Program::Kind::While: {
    const SetRel t = from(denote(p.guard(), b));
    return compose(star(compose(t, denote_oracle(p.first(), b))), complement(t));
  }
  }
  return {};
}

} // namespace

TEST(Hoare, DenoteExamples) {
  const StateSpace s = StateSpace::numbered(3);
  Bindings b = bindings_for(s);
  b.atoms.emplace("x", parse_relation("{(1,2),(2,3)}", s));
  b.atoms.emplace("y", parse_relation("{(3,1)}", s));
  b.tests.emplace("p", test_of(s, {0, 2}));
  EXPECT_EQ(denote(Program::skip(), b), Rel::identity(s));
  const Rel X = b.atoms.at("x"), Y = b.atoms.at("y"), p = b.tests.at("p");
  EXPECT_EQ(denote(parse_program("if p then x else y fi"), b),
            unite(compose(p, X), compose(test_complement(p), Y)));
  EXPECT_EQ(denote(parse_program("while p do skip od"), b), test_complement(p));
}

TEST(Hoare, DenoteMatchesOracleOnRandomPrograms) {
  std::mt19937_64 rng(8);
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const StateSpace s = StateSpace::numbered(n);
    for (int i = 0; i < 100; ++i) {
      Bindings b = bindings_for(s);
      b.atoms.emplace("x", Rel::random(s, rng, 0.3));
      b.atoms.emplace("y", Rel::random(s, rng, 0.3));
      b.tests.emplace("t", Rel::random_test(s, rng));
      const Program p = random_program(rng, 4);
      EXPECT_EQ(oracle::from(denote(p, b)), denote_oracle(p, b)) << print_program(p);
    }
  }
}

TEST(Hoare, TripleExamples) {
  const StateSpace s = StateSpace::numbered(2);
  Bindings b = bindings_for(s);
  b.atoms.emplace("R", parse_relation("{(1,2)}", s));
  const Rel id = Rel::identity(s);
  EXPECT_TRUE(holds({id, Program::skip(), id}, b));
  EXPECT_TRUE(holds({id, Program::atom("R"), parse_relation("{(2,2)}", s)}, b));
  EXPECT_FALSE(holds({id, Program::atom("R"), parse_relation("{(1,1)}", s)}, b));
  EXPECT_THROW(holds({id, Program::atom("S"), id}, b), EvalError);
  EXPECT_THROW(holds({Rel::full(s), Program::skip(), id}, b), ModelError);
}

TEST(Hoare, WlpExamples) {
  const StateSpace s = StateSpace::numbered(2);
  Bindings b = bindings_for(s);
  b.atoms.emplace("R", parse_relation("{(1,2)}", s));
  const Rel q = parse_relation("{(2,2)}", s);
  EXPECT_EQ(wlp(Program::skip(), q, b), q);
  EXPECT_EQ(wlp(Program::atom("R"), q, b), Rel::identity(s));
  EXPECT_EQ(wlp(Program::atom("R"), parse_relation("{(1,1)}", s), b), q);
}

TEST(Hoare, WlpIsSoundMaximalAndCompositional) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {1u, 2u, 3u}) {
    const StateSpace s = StateSpace::numbered(n);
    const auto tests = all_tests(s);
    for (int i = 0; i < 150; ++i) {
      Bindings b = bindings_for(s);
      b.atoms.emplace("x", Rel::random(s, rng, 0.4));
      b.atoms.emplace("y", Rel::random(s, rng, 0.4));
      b.tests.emplace("t", Rel::random_test(s, rng));
      const Program p = random_program(rng, 3), r = random_program(rng, 2);
      const Rel q = Rel::random_test(s, rng);
      const Rel w = wlp(p, q, b);
      EXPECT_TRUE(holds({w, p, q}, b));
      for (const Rel &pre : tests)
        EXPECT_EQ(holds({pre, p, q}, b), leq(pre, w));
      EXPECT_EQ(wlp(Program::seq(p, r), q, b), wlp(p, wlp(r, q, b), b));
    }
  }
}

TEST(Hoare, SynthMidExample) {
  const StateSpace s = StateSpace::numbered(3);
  const Rel X = parse_relation("{(1,2)}", s), Y = parse_relation("{(2,3)}", s);
  const Rel p = parse_relation("{(1,1)}", s), q = parse_relation("{(3,3)}", s);
  EXPECT_EQ(synth_mid(X, Y, p, q, SynthMethod::Wlp), Rel::identity(s));
  EXPECT_EQ(synth_mid(X, Y, p, q, SynthMethod::Range), parse_relation("{(2,2)}", s));
  EXPECT_EQ(synth_mid(X, Y, p, q, SynthMethod::Meet), parse_relation("{(2,2)}", s));
  EXPECT_THROW(synth_mid(X, Y, p, parse_relation("{(2,2)}", s), SynthMethod::Wlp),
               PreconditionError);
}

TEST(Hoare, SynthMidExhaustiveAtSizeTwo) {
  const StateSpace s = StateSpace::numbered(2);
  const auto rels = all_relations(s);
  const auto tests = all_tests(s);
  std::size_t premises = 0;
  for (const Rel &X : rels)
    for (const Rel &Y : rels)
      for (const Rel &p : tests)
        for (const Rel &q : tests) {
          using namespace oracle;
          if (!triple(from(p), compose(from(X), from(Y)), from(q))) {
            EXPECT_THROW(synth_mid(X, Y, p, q, SynthMethod::Meet), PreconditionError);
            continue;
          }
          ++premises;
          const Rel lo = synth_mid(X, Y, p, q, SynthMethod::Range);
          const Rel hi = synth_mid(X, Y, p, q, SynthMethod::Wlp);
          for (SynthMethod m : {SynthMethod::Wlp, SynthMethod::Range, SynthMethod::Meet}) {
            const Rel r = synth_mid(X, Y, p, q, m);
            EXPECT_TRUE(triple(from(p), from(X), from(r)));
            EXPECT_TRUE(triple(from(r), from(Y), from(q)));
          }
          for (const Rel &r : tests) {
            const bool valid = triple(from(p), from(X), from(r)) && triple(from(r), from(Y), from(q));
            if (valid) {
              EXPECT_TRUE(leq(lo, r));
              EXPECT_TRUE(leq(r, hi));
            }
          }
        }
  EXPECT_GT(premises, 0u);
}

TEST(Hoare, RuleInversionExamples) {
  const StateSpace s = StateSpace::numbered(3);
  const Rel X = parse_relation("{(1,2)}", s), Y = parse_relation("{(2,3)}", s);
  const Rel p = parse_relation("{(1,1)}", s), q = parse_relation("{(3,3)}", s);
  const InversionReport seq = check_rule_inversion(SeqInstance{p, X, Y, q});
  ASSERT_EQ(seq.directions.size(), 2u);
  for (const auto &d : seq.directions) {
    EXPECT_TRUE(d.premise);
    EXPECT_TRUE(d.conclusion);
  }

  const Rel id = Rel::identity(s), none = Rel::empty(s);
  const InversionReport loop = check_rule_inversion(WhileInstance{id, none, Rel::full(s)});
  EXPECT_TRUE(loop.passed());
  for (const auto &d : loop.directions)
    EXPECT_TRUE(d.holds()) << d.name;

  const StateSpace two = StateSpace::numbered(2);
  const InversionReport branch = check_rule_inversion(
      IfInstance{Rel::identity(two), parse_relation("{(1,1)}", two), parse_relation("{(1,1)}", two),
                 parse_relation("{(2,2)}", two), Rel::identity(two)});
  EXPECT_TRUE(branch.directions[0].holds());
  EXPECT_TRUE(branch.passed());
}

TEST(Hoare, NaiveWhileInversionFailsInGeneral) {
  // t = id makes the loop denote 0, so the triple holds for any p, while
  // the body moves 1 to 2 and breaks p = {1}.
  const StateSpace s = StateSpace::numbered(2);
  const InversionReport r = check_rule_inversion(
      WhileInstance{parse_relation("{(1,1)}", s), Rel::identity(s), parse_relation("{(1,2)}", s)});
  EXPECT_TRUE(r.passed());
  const auto &naive = r.directions.back();
  EXPECT_FALSE(naive.required);
  EXPECT_TRUE(naive.premise);
  EXPECT_FALSE(naive.conclusion);
}

TEST(Hoare, RuleInversionExhaustiveAtSizeTwo) {
  const StateSpace s = StateSpace::numbered(2);
  const auto rels = all_relations(s);
  const auto tests = all_tests(s);
  std::size_t failures = 0;
  for (const Rel &x : rels)
    for (const Rel &t : tests)
      for (const Rel &p : tests) {
        failures += !check_rule_inversion(WhileInstance{p, t, x}).passed();
        for (const Rel &q : tests) {
          failures += !check_rule_inversion(ConseqInstance{p, p, x, q, q}).passed();
          failures += !check_rule_inversion(SeqInstance{p, x, rels[(x.bits() * 7 + 3) % 16], q}).passed();
          for (const Rel &y : rels)
            failures += !check_rule_inversion(IfInstance{p, t, x, y, q}).passed();
        }
      }
  EXPECT_EQ(failures, 0u);
}

TEST(Hoare, VcGenWithAndWithoutInvariant) {
  const StateSpace s = StateSpace::numbered(3);
  Bindings b = bindings_for(s);
  b.atoms.emplace("step", parse_relation("{(1,2),(2,3)}", s));
  b.tests.emplace("at3", parse_relation("{(3,3)}", s));
  const Program loop = parse_program("while !at3 do step od");
  const Rel start = parse_relation("{(1,1)}", s), at3 = b.tests.at("at3");

  const VcResult exact = generate_vcs(loop, start, at3, b);
  ASSERT_EQ(exact.conditions.size(), 1u);
  EXPECT_TRUE(exact.valid());
  EXPECT_EQ(exact.precondition, wlp(loop, at3, b));

  const VcResult annotated = generate_vcs(loop, start, at3, b, {Rel::identity(s)});
  ASSERT_EQ(annotated.conditions.size(), 3u);
  EXPECT_TRUE(annotated.valid());
  EXPECT_EQ(annotated.precondition, Rel::identity(s));

  // {1} is not preserved: step leaves it.
  const VcResult weak = generate_vcs(loop, start, at3, b, {start});
  EXPECT_FALSE(weak.conditions[0].valid());
  EXPECT_FALSE(weak.valid());

  EXPECT_THROW(generate_vcs(loop, start, at3, b, {start, start}), Error);
  EXPECT_THROW(generate_vcs(loop, start, at3, b, {Rel::full(s)}), ModelError);
}

TEST(Hoare, InvariantRuleIsSoundOnRandomLoops) {
  // Whenever all side conditions hold, the triple holds semantically.
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    const StateSpace s = StateSpace::numbered(1 + rng() % 3);
    Bindings b = bindings_for(s);
    b.atoms.emplace("x", Rel::random(s, rng, 0.4));
    b.atoms.emplace("y", Rel::random(s, rng, 0.4));
    b.tests.emplace("t", Rel::random_test(s, rng));
    const Program p = Program::seq(random_program(rng, 1),
                                   Program::while_do(TestExpr::id("t"), random_program(rng, 2)));
    std::vector<Rel> invariants;
    for (std::size_t k = 0; k < count_loops(p); ++k)
      invariants.push_back(Rel::random_test(s, rng));
    const Rel pre = Rel::random_test(s, rng), post = Rel::random_test(s, rng);
    const VcResult r = generate_vcs(p, pre, post, b, invariants);
    if (r.valid())
      EXPECT_TRUE(holds({pre, p, post}, b)) << print_program(p);
  }
}
