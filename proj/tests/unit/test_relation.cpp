#include <random>

#include <gtest/gtest.h>

#include "kad/relation.hpp"

#include "oracles.hpp"

using namespace kad;

namespace {

std::vector<Rel> sample(const StateSpace &s, std::mt19937_64 &rng, int count) {
  std::vector<Rel> out{Rel::empty(s), Rel::identity(s), Rel::full(s)};
  for (int i = 0; i < count; ++i)
    out.push_back(Rel::random(s, rng, (i % 4 + 1) / 5.0));
  return out;
}

} // namespace

TEST(Relation, OperationsMatchSetOracle) {
  std::mt19937_64 rng(99);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u}) {
    const StateSpace s = StateSpace::numbered(n);
    const auto rels = sample(s, rng, 20);
    for (const Rel &r : rels) {
      const auto R = oracle::from(r);
      EXPECT_EQ(oracle::from(star(r)), oracle::star(R));
      EXPECT_EQ(oracle::from(adom(r)), oracle::adom(R));
      EXPECT_EQ(oracle::from(aran(r)), oracle::aran(R));
      EXPECT_EQ(oracle::from(converse(r)), oracle::converse(R));
      for (const Rel &t : rels) {
        const auto T = oracle::from(t);
        EXPECT_EQ(oracle::from(compose(r, t)), oracle::compose(R, T));
        EXPECT_EQ(oracle::from(unite(r, t)), oracle::unite(R, T));
        EXPECT_EQ(leq(r, t), oracle::subset(R, T));
      }
    }
  }
}

TEST(Relation, BoxIsAntidomainOfFailure) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1u, 2u, 4u, 7u}) {
    const StateSpace s = StateSpace::numbered(n);
    for (int i = 0; i < 200; ++i) {
      const Rel x = Rel::random(s, rng);
      const Rel q = Rel::random_test(s, rng);
      const auto X = oracle::from(x), Q = oracle::from(q);
      EXPECT_EQ(oracle::from(box(x, q)), oracle::adom(oracle::compose(X, oracle::complement(Q))));
    }
  }
}

TEST(Relation, StarOnLargeSpace) {
  // A 64-cycle: the closure is full.
  const StateSpace s = StateSpace::numbered(64);
  std::vector<std::pair<std::size_t, std::size_t>> cycle;
  for (std::size_t i = 0; i < 64; ++i)
    cycle.emplace_back(i, (i + 1) % 64);
  EXPECT_EQ(star(Rel::from_pairs(s, cycle)), Rel::full(s));
  cycle.pop_back();
  const Rel path_closure = star(Rel::from_pairs(s, cycle));
  EXPECT_TRUE(path_closure.contains(0, 63));
  EXPECT_FALSE(path_closure.contains(63, 0));
}

TEST(Relation, RetractionLawsOnRandomRelations) {
  std::mt19937_64 rng(1234);
  for (std::size_t n = 1; n <= 4; ++n) {
    const StateSpace s = StateSpace::numbered(n);
    const Rel id = Rel::identity(s);
    for (int i = 0; i < 300; ++i) {
      const Rel x = Rel::random(s, rng), y = Rel::random(s, rng);
      EXPECT_EQ(compose(x, y).is_empty(), compose(x, domain(y)).is_empty());
      EXPECT_EQ(domain(domain(x)), domain(x));
      EXPECT_TRUE(compose(adom(x), x).is_empty());
      EXPECT_EQ(unite(adom(x), domain(x)), id);
      EXPECT_EQ(range(range(x)), range(x));
      EXPECT_TRUE(compose(x, aran(x)).is_empty());
      EXPECT_EQ(unite(aran(x), range(x)), id);
    }
  }
}

TEST(Relation, ParseAndPrint) {
  const StateSpace s = StateSpace::create({"a", "b", "c"});
  const Rel r = parse_relation("{(a,b), (c,c)}", s);
  EXPECT_TRUE(r.contains(0, 1));
  EXPECT_TRUE(r.contains(2, 2));
  EXPECT_EQ(r.pairs().size(), 2u);
  EXPECT_EQ(print_relation(r), "{(a,b),(c,c)}");
  EXPECT_EQ(parse_relation(print_relation(r), s), r);
  EXPECT_EQ(parse_relation("id", s), Rel::identity(s));
  EXPECT_EQ(parse_relation("empty", s), Rel::empty(s));
  EXPECT_EQ(parse_relation("{}", s), Rel::empty(s));
  EXPECT_EQ(parse_relation("full", s), Rel::full(s));
  EXPECT_THROW(parse_relation("{(a,d)}", s), Error);
  EXPECT_THROW(parse_relation("{(a,b)", s), ParseError);
  EXPECT_THROW(parse_relation("ident", s), ParseError);
}

TEST(Relation, EnumerationAndBits) {
  const StateSpace s = StateSpace::numbered(2);
  const auto all = all_relations(s);
  ASSERT_EQ(all.size(), 16u);
  for (std::uint64_t b = 0; b < 16; ++b)
    EXPECT_EQ(all[b].bits(), b);
  EXPECT_EQ(all_tests(s).size(), 4u);
  for (const Rel &t : all_tests(s))
    EXPECT_TRUE(t.is_subidentity());
  EXPECT_THROW(all_relations(StateSpace::numbered(5)), BoundError);
}

TEST(Relation, ErrorsOnMismatchAndNonTests) {
  const StateSpace a = StateSpace::numbered(2), b = StateSpace::numbered(3);
  EXPECT_THROW(compose(Rel::identity(a), Rel::identity(b)), ModelError);
  EXPECT_THROW(test_complement(Rel::full(a)), ModelError);
  EXPECT_THROW(box(Rel::full(a), Rel::full(a)), ModelError);
  EXPECT_THROW(StateSpace::create({}), ModelError);
  EXPECT_THROW(StateSpace::create({"x", "x"}), ModelError);
  EXPECT_THROW(StateSpace::numbered(65), ModelError);
  EXPECT_THROW(as_finite_algebra(StateSpace::numbered(3)), BoundError);
  EXPECT_THROW(as_finite_algebra(StateSpace::numbered(4), 4), BoundError);
}

TEST(Relation, FiniteAlgebraOverTwoStates) {
  const StateSpace s = StateSpace::numbered(2);
  const FiniteAlgebra alg = as_finite_algebra(s);
  ASSERT_EQ(alg.size(), 16u);
  const RelModel model{s};
  const auto rels = all_relations(s);
  for (std::size_t i = 0; i < 16; ++i) {
    const Elem x{static_cast<std::uint16_t>(i)};
    EXPECT_EQ(alg.name(x), print_relation(rels[i]));
    EXPECT_EQ(alg.star(x).id, model.star(rels[i]).bits());
    EXPECT_EQ(alg.adom(x).id, model.adom(rels[i]).bits());
    EXPECT_EQ(alg.aran(x).id, model.aran(rels[i]).bits());
    for (std::size_t j = 0; j < 16; ++j) {
      const Elem y{static_cast<std::uint16_t>(j)};
      EXPECT_EQ(alg.times(x, y).id, compose(rels[i], rels[j]).bits());
      EXPECT_EQ(alg.plus(x, y).id, unite(rels[i], rels[j]).bits());
    }
  }
}
