#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "kad/axioms.hpp"
#include "kad/relation.hpp"

#include "oracles.hpp"

using namespace kad;

namespace {

FiniteAlgebra z2_ring() {
  AlgebraTables t;
  t.carrier = {"0", "1"};
  t.zero = Elem{0};
  t.one = Elem{1};
  t.plus = {Elem{0}, Elem{1}, Elem{1}, Elem{0}};
  t.times = {Elem{0}, Elem{0}, Elem{0}, Elem{1}};
  return FiniteAlgebra::create(t);
}

} // namespace

TEST(Axioms, ProfileNamesRoundTrip) {
  for (AxiomProfile p : all_profiles())
    EXPECT_EQ(parse_profile(to_string(p)), p);
  EXPECT_EQ(parse_profile("near-as"), AxiomProfile::NearAS);
  EXPECT_FALSE(parse_profile("boolean"));
}

TEST(Axioms, ProfilesAreCumulative) {
  auto names = [](AxiomProfile p) {
    std::set<std::string> out;
    for (const auto &ax : axioms_for(p))
      out.insert(ax.name);
    return out;
  };
  auto includes = [&](AxiomProfile big, AxiomProfile small) {
    const auto b = names(big), s = names(small);
    return std::includes(b.begin(), b.end(), s.begin(), s.end());
  };
  EXPECT_TRUE(includes(AxiomProfile::Dioid, AxiomProfile::Semiring));
  EXPECT_TRUE(includes(AxiomProfile::Kleene, AxiomProfile::Dioid));
  EXPECT_TRUE(includes(AxiomProfile::KAT, AxiomProfile::Kleene));
  EXPECT_TRUE(includes(AxiomProfile::KAT, AxiomProfile::TS));
  EXPECT_TRUE(includes(AxiomProfile::KAD, AxiomProfile::AS));
  EXPECT_TRUE(includes(AxiomProfile::KADR, AxiomProfile::KAD));
  EXPECT_TRUE(includes(AxiomProfile::KADR, AxiomProfile::ARS));
  EXPECT_TRUE(includes(AxiomProfile::AS, AxiomProfile::NearAS));
  EXPECT_FALSE(names(AxiomProfile::NearAS).contains("left-distrib"));
  EXPECT_TRUE(names(AxiomProfile::AS).contains("left-distrib"));
}

TEST(Axioms, Lemma4IsAKat) {
  const CheckReport r = check_axioms(lemma4_model(), AxiomProfile::KAT);
  EXPECT_TRUE(r.passed) << describe(r);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Axioms, InstanceCountMatchesArity) {
  // Every axiom is instantiated once per assignment: 3 elements, 2 tests.
  std::uint64_t expected = 0;
  for (const auto &ax : axioms_for(AxiomProfile::KAT))
    expected += static_cast<std::uint64_t>(std::pow(3, ax.element_vars.size()) *
                                           std::pow(2, ax.test_vars.size()));
  EXPECT_EQ(check_axioms(lemma4_model(), AxiomProfile::KAT).instances, expected);
}

TEST(Axioms, Lemma4LawsByDirectLookup) {
  const auto t = oracle::tables_of(lemma4_model());
  auto add = [&](std::size_t a, std::size_t b) { return t.plus[a * t.n + b]; };
  auto mul = [&](std::size_t a, std::size_t b) { return t.times[a * t.n + b]; };
  auto leq = [&](std::size_t a, std::size_t b) { return add(a, b) == b; };
  for (std::size_t x = 0; x < t.n; ++x) {
    EXPECT_TRUE(leq(add(t.one, mul(x, t.star[x])), t.star[x]));
    EXPECT_TRUE(leq(add(t.one, mul(t.star[x], x)), t.star[x]));
    for (std::size_t y = 0; y < t.n; ++y)
      for (std::size_t z = 0; z < t.n; ++z) {
        EXPECT_EQ(mul(x, add(y, z)), add(mul(x, y), mul(x, z)));
        EXPECT_EQ(mul(add(x, y), z), add(mul(x, z), mul(y, z)));
        EXPECT_EQ(mul(mul(x, y), z), mul(x, mul(y, z)));
        // Induction: z + x;y <= y implies x*;z <= y.
        if (leq(add(z, mul(x, y)), y))
          EXPECT_TRUE(leq(mul(t.star[x], z), y));
        if (leq(add(z, mul(y, x)), y))
          EXPECT_TRUE(leq(mul(z, t.star[x]), y));
      }
  }
}

TEST(Axioms, RelationalAlgebrasPassEveryProfile) {
  for (std::size_t n : {1u, 2u}) {
    const FiniteAlgebra rel = as_finite_algebra(StateSpace::numbered(n));
    for (AxiomProfile p : all_profiles()) {
      const CheckReport r = check_axioms(rel, p);
      EXPECT_TRUE(r.passed) << "n=" << n << " " << describe(r);
    }
  }
}

TEST(Axioms, BuiltinKadsPass) {
  for (const FiniteAlgebra &m : {boolean_kad(), trivial_algebra()})
    for (AxiomProfile p : {AxiomProfile::KAT, AxiomProfile::KAD, AxiomProfile::KADR})
      EXPECT_TRUE(check_axioms(m, p).passed) << to_string(p);
}

TEST(Axioms, RingIsASemiringButNotADioid) {
  const FiniteAlgebra z2 = z2_ring();
  EXPECT_TRUE(check_axioms(z2, AxiomProfile::Semiring).passed);
  const CheckReport r = check_axioms(z2, AxiomProfile::Dioid);
  EXPECT_FALSE(r.passed);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].axiom, "plus-idem");
  ASSERT_EQ(r.violations[0].assignment.size(), 1u);
  EXPECT_EQ(r.violations[0].assignment[0].second, "1");
  EXPECT_EQ(r.violations[0].lhs, "0");
  EXPECT_EQ(r.violations[0].rhs, "1");
}

TEST(Axioms, MissingTablesAreReported) {
  EXPECT_THROW(check_axioms(lemma4_model(), AxiomProfile::AS), MissingTableError);
  EXPECT_THROW(check_axioms(z2_ring(), AxiomProfile::Kleene), MissingTableError);
  EXPECT_THROW(check_axioms(z2_ring(), AxiomProfile::TS), MissingTableError);
}

TEST(Axioms, ViolationLimitPerAxiom) {
  AlgebraTables t = lemma4_model().tables();
  const Elem a{1};
  t.times[1 * 3 + 0] = a; // a;0 = a breaks several laws at once
  const FiniteAlgebra broken = FiniteAlgebra::create(t);
  CheckOptions many;
  many.max_violations_per_axiom = 100;
  const CheckReport one = check_axioms(broken, AxiomProfile::Semiring);
  const CheckReport all = check_axioms(broken, AxiomProfile::Semiring, many);
  EXPECT_FALSE(one.passed);
  EXPECT_GE(all.violations.size(), one.violations.size());
  std::map<std::string, int> per_axiom;
  for (const auto &v : one.violations)
    ++per_axiom[v.axiom];
  for (const auto &[name, count] : per_axiom)
    EXPECT_EQ(count, 1) << name;
}

TEST(Axioms, SampledRelationsAtSizeThreeSatisfyKadr) {
  const StateSpace s = StateSpace::numbered(3);
  std::mt19937_64 rng(2024);
  std::vector<Rel> elements{Rel::empty(s), Rel::identity(s), Rel::full(s)};
  for (int i = 0; i < 5; ++i)
    elements.push_back(Rel::random(s, rng));
  const std::vector<Rel> tests = all_tests(s);
  const CheckReport r = check_laws(RelModel{s}, AxiomProfile::KADR, std::span<const Rel>(elements),
                                   std::span<const Rel>(tests), print_relation);
  EXPECT_TRUE(r.passed) << describe(r);
}
