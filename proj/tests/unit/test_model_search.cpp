#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "kad/axioms.hpp"
#include "kad/model_io.hpp"
#include "kad/model_search.hpp"
#include "kad/phi.hpp"

using namespace kad;

namespace {

using Table = std::vector<Elem>;

Elem el(std::size_t i) { return Elem{static_cast<std::uint16_t>(i)}; }

// Calls f for every vector of `length` values drawn from [0, n).
void each_vector(std::size_t length, std::size_t n, const std::function<void(const Table &)> &f) {
  Table v(length, el(0));
  for (;;) {
    f(v);
    std::size_t k = 0;
    for (; k < length; ++k) {
      if (++v[k].id < n)
        break;
      v[k] = el(0);
    }
    if (k == length)
      return;
  }
}

// Brute-force model enumeration over {0 = 0, n-1 = 1}. Only unit and
// annihilator cells are fixed up front (they are axioms of every profile);
// everything else is enumerated and filtered with check_axioms.
std::set<std::string> brute_force(std::size_t n, AxiomProfile profile) {
  const bool near = profile == AxiomProfile::NearAS;
  const std::size_t one = n - 1;
  std::vector<std::size_t> plus_free, times_free;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j)
      plus_free.push_back(i * n + j);
  for (std::size_t i = 1; i < one; ++i) {
    for (std::size_t j = 1; j < one; ++j)
      times_free.push_back(i * n + j);
    if (near)
      times_free.push_back(i * n + 0);
  }
  Table plus(n * n), times(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    plus[x] = plus[x * n] = el(x);
    times[x] = times[x * n] = el(0);
    times[one * n + x] = times[x * n + one] = el(x);
  }

  std::set<std::string> out;
  auto consider = [&](AlgebraTables t) {
    try {
      const FiniteAlgebra a = FiniteAlgebra::create(std::move(t));
      if (check_axioms(a, profile).passed)
        out.insert(write_model(a));
    } catch (const ModelError &) {
    }
  };

  each_vector(plus_free.size(), n, [&](const Table &pv) {
    for (std::size_t k = 0; k < pv.size(); ++k)
      plus[plus_free[k]] = pv[k];
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (plus[x * n + y] != plus[y * n + x])
          return;
        for (std::size_t z = 0; z < n; ++z)
          if (plus[plus[x * n + y].id * n + z] != plus[x * n + plus[y * n + z].id])
            return;
      }
    each_vector(times_free.size(), n, [&](const Table &tv) {
      for (std::size_t k = 0; k < tv.size(); ++k)
        times[times_free[k]] = tv[k];
      AlgebraTables base;
      for (std::size_t i = 0; i < n; ++i)
        base.carrier.push_back(i == 0 ? "0" : i == one ? "1" : std::string(1, char('a' + i - 1)));
      base.zero = el(0);
      base.one = el(one);
      base.plus = plus;
      base.times = times;
      auto unary = [&](std::optional<Table> AlgebraTables::*member, bool needed,
                       std::function<void(AlgebraTables)> next) {
        return [=](AlgebraTables t) {
          if (!needed)
            return next(t);
          each_vector(n, n, [&](const Table &v) {
            AlgebraTables u = t;
            u.*member = v;
            next(u);
          });
        };
      };
      std::function<void(AlgebraTables)> with_tests = [&](AlgebraTables t) {
        if (!profile_needs_tests(profile))
          return consider(t);
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          if (!(mask & 1u) || !((mask >> one) & 1u))
            continue;
          Table tests;
          for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u)
              tests.push_back(el(i));
          each_vector(tests.size(), tests.size(), [&](const Table &choice) {
            AlgebraTables u = t;
            u.tests = tests;
            Table comp(n, el(0));
            for (std::size_t k = 0; k < tests.size(); ++k)
              comp[tests[k].id] = tests[choice[k].id];
            u.complement = comp;
            consider(u);
          });
        }
      };
      auto with_aran = unary(&AlgebraTables::aran, profile_needs_aran(profile), with_tests);
      auto with_adom = unary(&AlgebraTables::adom, profile_needs_adom(profile), with_aran);
      auto with_star = unary(&AlgebraTables::star, profile_needs_star(profile), with_adom);
      with_star(base);
    });
  });
  return out;
}

std::set<std::string> searched(std::size_t n, AxiomProfile profile) {
  std::set<std::string> out;
  for (const auto &m : find_models(n, profile))
    out.insert(write_model(m));
  return out;
}

} // namespace

TEST(ModelSearch, MatchesBruteForceAtSizeTwo) {
  for (AxiomProfile p : all_profiles())
    EXPECT_EQ(searched(2, p), brute_force(2, p)) << to_string(p);
}

TEST(ModelSearch, MatchesBruteForceAtSizeThree) {
  // With a single element besides 0 and 1 every model is its own class.
  for (AxiomProfile p : {AxiomProfile::Semiring, AxiomProfile::Dioid, AxiomProfile::Kleene,
                         AxiomProfile::TS, AxiomProfile::KAT, AxiomProfile::AS,
                         AxiomProfile::NearAS, AxiomProfile::ARS})
    EXPECT_EQ(searched(3, p), brute_force(3, p)) << to_string(p);
}

TEST(ModelSearch, FindsLemma4AsTheOnlyPhiFailingKatOfSizeThree) {
  const auto models = find_models(3, AxiomProfile::KAT, PhiConstraint::Fails);
  ASSERT_EQ(models.size(), 1u);
  EXPECT_TRUE(are_isomorphic(models[0], lemma4_model()));
}

TEST(ModelSearch, SizeFourModelsArePairwiseNonIsomorphicAndValid) {
  const auto models = find_models(4, AxiomProfile::KAT);
  ASSERT_FALSE(models.empty());
  for (std::size_t i = 0; i < models.size(); ++i) {
    EXPECT_TRUE(check_axioms(models[i], AxiomProfile::KAT).passed);
    for (std::size_t j = i + 1; j < models.size(); ++j)
      EXPECT_FALSE(are_isomorphic(models[i], models[j])) << i << " " << j;
  }
}

TEST(ModelSearch, PhiHoldsInEveryAntidomainModelUpToFour) {
  for (AxiomProfile p : {AxiomProfile::AS, AxiomProfile::NearAS})
    for (std::size_t n = 1; n <= 4; ++n)
      EXPECT_TRUE(find_models(n, p, PhiConstraint::Fails).empty()) << to_string(p) << n;
}

TEST(ModelSearch, NearAsModelsWithoutLeftDistributivityExist) {
  // None at size 3; the first ones appear at size 4.
  auto count_non_distributive = [](std::size_t n, bool stop_at_first) {
    std::size_t found = 0;
    find_models(n, AxiomProfile::NearAS, std::nullopt, [&](const FiniteAlgebra &m) {
      bool distributive = true;
      for (Elem x : m.elements())
        for (Elem y : m.elements())
          for (Elem z : m.elements())
            distributive = distributive &&
                           m.times(x, m.plus(y, z)) == m.plus(m.times(x, y), m.times(x, z));
      if (!distributive) {
        ++found;
        EXPECT_TRUE(check_phi(m).holds);
      }
      return !(stop_at_first && found > 0);
    });
    return found;
  };
  EXPECT_EQ(count_non_distributive(3, false), 0u);
  EXPECT_EQ(count_non_distributive(4, true), 1u);
}

TEST(ModelSearch, LimitAndSinkStopTheSearch) {
  SearchOptions opts;
  opts.limit = 2;
  EXPECT_EQ(find_models(4, AxiomProfile::KAT, std::nullopt, opts).size(), 2u);
  std::size_t seen = 0;
  find_models(4, AxiomProfile::KAT, std::nullopt, [&](const FiniteAlgebra &) {
    ++seen;
    return false;
  });
  EXPECT_EQ(seen, 1u);
}

TEST(ModelSearch, DeterministicOrder) {
  std::vector<std::string> a, b;
  for (const auto &m : find_models(4, AxiomProfile::KAT))
    a.push_back(write_model(m));
  for (const auto &m : find_models(4, AxiomProfile::KAT))
    b.push_back(write_model(m));
  EXPECT_EQ(a, b);
}

TEST(ModelSearch, Errors) {
  EXPECT_THROW(find_models(0, AxiomProfile::KAT), BoundError);
  EXPECT_THROW(find_models(5, AxiomProfile::KAT), BoundError);
  EXPECT_THROW(find_models(2, AxiomProfile::Dioid, PhiConstraint::Fails), PreconditionError);
  EXPECT_EQ(parse_constraint("phi-fails"), PhiConstraint::Fails);
  EXPECT_EQ(parse_constraint("phi-holds"), PhiConstraint::Holds);
  EXPECT_FALSE(parse_constraint("phi"));
}
