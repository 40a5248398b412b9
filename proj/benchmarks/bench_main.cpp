#include <benchmark/benchmark.h>

#include "ordmatch/ordmatch.hpp"

namespace {

using namespace ordmatch;

Instance halving_quotas(std::size_t n) {
  std::vector<std::size_t> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = std::size_t{1} << (n - 1 - i);
  return Instance(q);
}

void BM_OptimalMatchingDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Instance inst = Instance::one_to_one(n);
  RandomStream rng(7, 0);
  const auto values = sample_profile(IidUniform01{}, inst, rng);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_matching(inst, values).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OptimalMatchingDense)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_OptimalMatchingQuotas(benchmark::State& state) {
  const Instance inst = halving_quotas(static_cast<std::size_t>(state.range(0)));
  RandomStream rng(7, 1);
  const auto values = sample_profile(IidUniform01{}, inst, rng);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_matching(inst, values).value);
}
BENCHMARK(BM_OptimalMatchingQuotas)->DenseRange(3, 7);

void BM_OptimalMatchingSparse(benchmark::State& state) {
  const Instance inst = Instance::one_to_one(50);
  std::uint64_t t = 0;
  for (auto _ : state) {
    RandomStream rng(11, t++);
    const auto values = sample_profile(LowerBoundBernoulli{}, inst, rng);
    benchmark::DoNotOptimize(optimal_matching(inst, values).value);
  }
}
BENCHMARK(BM_OptimalMatchingSparse);

void BM_DerivePreferences(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Instance inst = Instance::one_to_one(n);
  RandomStream rng(3, 0);
  const auto values = sample_profile(IidUniform01{}, inst, rng);
  for (auto _ : state) benchmark::DoNotOptimize(derive_preferences(inst, values, rng));
}
BENCHMARK(BM_DerivePreferences)->Arg(10)->Arg(50)->Arg(200);

void BM_Trial(benchmark::State& state, MechanismSpec spec) {
  const Instance inst({5, 4, 2, 1});
  const PreparedMechanism mech(spec, inst);
  const DistributionSpec dist = IidUniform01{};
  std::uint64_t t = 0;
  for (auto _ : state) {
    RandomStream rng(5, t++);
    benchmark::DoNotOptimize(simulate_trial(mech, dist, rng, true).sw);
  }
}
BENCHMARK_CAPTURE(BM_Trial, rs, MechanismSpec{RandomSurvivors{}});
BENCHMARK_CAPTURE(BM_Trial, rsbs, MechanismSpec{RandomSurvivorsBurnSteal{}});
BENCHMARK_CAPTURE(BM_Trial, hql, MechanismSpec{HighestQuotaLast{}});
BENCHMARK_CAPTURE(BM_Trial, secretary_rs, MechanismSpec{SecretaryRandomSurvivors{}});

}  // namespace
BENCHMARK_MAIN();
