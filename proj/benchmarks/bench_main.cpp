#include <random>

#include <benchmark/benchmark.h>

#include "kad/axioms.hpp"
#include "kad/ev_periodic.hpp"
#include "kad/model_search.hpp"
#include "kad/phi.hpp"
#include "kad/relation.hpp"

using namespace kad;

static void BM_CheckAxiomsRel2(benchmark::State &state) {
  const FiniteAlgebra m = as_finite_algebra(StateSpace::numbered(2));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_axioms(m, AxiomProfile::KADR));
}
BENCHMARK(BM_CheckAxiomsRel2)->Unit(benchmark::kMillisecond);

static void BM_CheckPhiRel2(benchmark::State &state) {
  const FiniteAlgebra m = as_finite_algebra(StateSpace::numbered(2));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_phi(m));
}
BENCHMARK(BM_CheckPhiRel2);

static void BM_FindModels(benchmark::State &state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(find_models(size, AxiomProfile::KAT));
}
BENCHMARK(BM_FindModels)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_RelationStar(benchmark::State &state) {
  const StateSpace s = StateSpace::numbered(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(1);
  const Rel r = Rel::random(s, rng, 2.0 / static_cast<double>(s.size()));
  for (auto _ : state)
    benchmark::DoNotOptimize(star(r));
}
BENCHMARK(BM_RelationStar)->RangeMultiplier(2)->Range(4, 64);

static void BM_RelationBox(benchmark::State &state) {
  const StateSpace s = StateSpace::numbered(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  const Rel x = Rel::random(s, rng), q = Rel::random_test(s, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(box(x, q));
}
BENCHMARK(BM_RelationBox)->RangeMultiplier(4)->Range(4, 64);

static void BM_PeriodicOps(benchmark::State &state) {
  const auto a = EvPeriodicSet::make(5, {1, 3}, 6, {0, 2});
  const auto b = EvPeriodicSet::make(3, {0}, 4, {1, 3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(unite(a, b));
    benchmark::DoNotOptimize(intersect(a, complement(b)));
  }
}
BENCHMARK(BM_PeriodicOps);

static void BM_RefuteCandidates(benchmark::State &state) {
  const auto evens = EvPeriodicSet::evens();
  for (auto _ : state) {
    CandidateEnumerator e(evens);
    for (int i = 0; i < 100; ++i)
      benchmark::DoNotOptimize(refute_wlp_candidate(evens, e.next()));
  }
}
BENCHMARK(BM_RefuteCandidates);

BENCHMARK_MAIN();
