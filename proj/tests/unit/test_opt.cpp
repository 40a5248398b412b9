#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ordmatch/distributions.hpp"
#include "ordmatch/mechanisms.hpp"
#include "ordmatch/opt.hpp"

using namespace ordmatch;

namespace {

Instance random_instance(RandomStream& rng, std::size_t max_n, std::size_t max_m) {
  const std::size_t m = 1 + rng.uniform_index(max_m);
  const std::size_t n = 1 + rng.uniform_index(std::min(max_n, m));
  std::vector<std::size_t> quotas(n, 1);
  for (std::size_t extra = m - n; extra > 0; --extra) ++quotas[rng.uniform_index(n)];
  return Instance(quotas);
}

// Values mixing zeros, exact ties and continuous draws.
ValuationProfile mixed_values(const Instance& inst, RandomStream& rng) {
  std::vector<double> flat(inst.num_agents() * inst.num_items());
  for (double& v : flat) {
    const double u = rng.uniform01();
    v = u < 0.3 ? 0.0 : (u < 0.45 ? 0.5 : rng.uniform01());
  }
  return ValuationProfile(inst.num_agents(), inst.num_items(), flat);
}

void expect_valid(const Instance& inst, const ValuationProfile& v, const OptResult& r) {
  EXPECT_TRUE(r.matching.respects_quotas(inst));
  EXPECT_EQ(r.matching.num_assigned(), inst.num_items());
  EXPECT_EQ(r.value, social_welfare(r.matching, v));
}

}  // namespace

TEST(OptimalMatching, IdentityValues) {
  const std::size_t n = 6;
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) flat[i * n + i] = 1.0;
  const ValuationProfile id(n, n, flat);
  const auto r = optimal_matching(Instance::one_to_one(n), id);
  EXPECT_EQ(r.value, 6.0);
  expect_valid(Instance::one_to_one(n), id, r);
}

TEST(OptimalMatching, AllZeroStillComplete) {
  const Instance inst({2, 3});
  const ValuationProfile v(2, 5);
  const auto r = optimal_matching(inst, v);
  EXPECT_EQ(r.value, 0.0);
  expect_valid(inst, v, r);
}

TEST(OptimalMatching, QuotasBind) {
  // Agent 0 values everything most but can take only one item.
  const Instance inst({1, 2});
  const auto v = ValuationProfile::from_rows({{10.0, 9.0, 8.0}, {1.0, 2.0, 3.0}});
  const auto r = optimal_matching(inst, v);
  EXPECT_DOUBLE_EQ(r.value, 15.0);  // 10 + 2 + 3
  EXPECT_TRUE(r.matching.is_assigned_to(0, 0));
  expect_valid(inst, v, r);
}

TEST(OptimalMatching, RejectsDimensionMismatch) {
  EXPECT_THROW(optimal_matching(Instance({1, 1}), ValuationProfile(2, 3)), std::invalid_argument);
}

TEST(BruteForce, SingleItem) {
  EXPECT_DOUBLE_EQ(brute_force_opt(Instance({1}), ValuationProfile::from_rows({{0.37}})), 0.37);
}

TEST(BruteForce, ContentionForcesLoss) {
  EXPECT_EQ(brute_force_opt(Instance({1, 1}), ValuationProfile::from_rows({{1, 0}, {1, 0}})), 1.0);
}

TEST(BruteForce, RejectsLargeInstances) {
  EXPECT_THROW(brute_force_opt(Instance({9}), ValuationProfile(1, 9)), std::invalid_argument);
}

TEST(OptimalMatching, AgreesWithBruteForceThreeAgents) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    RandomStream rng(20261018, t);
    const std::size_t m = 3 + rng.uniform_index(5);
    std::vector<std::size_t> quotas{1, 1, 1};
    for (std::size_t extra = m - 3; extra > 0; --extra) ++quotas[rng.uniform_index(3)];
    const Instance inst(quotas);
    const auto v = sample_profile(IidUniform01{}, inst, rng);
    const auto r = optimal_matching(inst, v);
    EXPECT_NEAR(r.value, brute_force_opt(inst, v), 1e-9) << "case " << t;
    expect_valid(inst, v, r);
  }
}

TEST(OptimalMatching, AgreesWithBruteForceMixedValues) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    RandomStream rng(77, t);
    const Instance inst = random_instance(rng, 8, 8);
    const auto v = mixed_values(inst, rng);
    const auto r = optimal_matching(inst, v);
    ASSERT_NEAR(r.value, brute_force_opt(inst, v), 1e-9) << "case " << t;
    expect_valid(inst, v, r);
  }
}

TEST(OptimalMatching, ExactOnIntegerValues) {
  // Small integers sum exactly in double, so agreement must be bitwise.
  for (std::uint64_t t = 0; t < 200; ++t) {
    RandomStream rng(78, t);
    const Instance inst = random_instance(rng, 5, 8);
    std::vector<double> flat(inst.num_agents() * inst.num_items());
    for (double& x : flat) x = static_cast<double>(rng.uniform_index(4));
    const ValuationProfile v(inst.num_agents(), inst.num_items(), flat);
    ASSERT_EQ(optimal_matching(inst, v).value, brute_force_opt(inst, v)) << "case " << t;
  }
}

TEST(OptimalMatching, DominatesEveryMechanism) {
  const MechanismSpec specs[] = {{RandomSurvivors{}, true}, {RandomSurvivorsBurnSteal{}, true},
                                 {HighestQuotaLast{}, true}, {SecretaryRandomSurvivors{}, true}};
  for (std::uint64_t t = 0; t < 300; ++t) {
    RandomStream rng(79, t);
    const Instance inst = random_instance(rng, 8, 30);
    const auto v = mixed_values(inst, rng);
    const auto prefs = derive_preferences(inst, v, rng);
    const double opt = optimal_matching(inst, v).value;
    for (const auto& spec : specs) {
      ASSERT_LE(social_welfare(PreparedMechanism(spec, inst).run(prefs, rng), v), opt);
    }
  }
}

TEST(OptimalMatching, ScaleEquivariant) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    RandomStream rng(80, t);
    const Instance inst = random_instance(rng, 6, 20);
    const auto v = sample_profile(IidUniform01{}, inst, rng);
    std::vector<double> scaled(v.data().begin(), v.data().end());
    for (double& x : scaled) x *= 4.0;  // power of two keeps every sum exact relative
    const ValuationProfile w(inst.num_agents(), inst.num_items(), scaled);
    const auto rv = optimal_matching(inst, v);
    const auto rw = optimal_matching(inst, w);
    EXPECT_NEAR(rw.value, 4.0 * rv.value, 1e-9 * rw.value);
    // The optimum for v stays optimal for w.
    EXPECT_NEAR(social_welfare(rv.matching, w), rw.value, 1e-9 * rw.value);
  }
}

TEST(OptimalMatching, ItemPermutationEquivariant) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    RandomStream rng(81, t);
    const Instance inst = random_instance(rng, 6, 20);
    const auto v = sample_profile(IidUniform01{}, inst, rng);
    const std::size_t n = inst.num_agents(), m = inst.num_items();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> flat(n * m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t g = 0; g < m; ++g) flat[i * m + perm[g]] = v.value(i, g);
    }
    const ValuationProfile w(n, m, flat);
    const auto rv = optimal_matching(inst, v);
    const auto rw = optimal_matching(inst, w);
    EXPECT_NEAR(rv.value, rw.value, 1e-9);
    Matching moved(m);
    for (ItemIndex g = 0; g < m; ++g) moved.assign(perm[g], *rv.matching.owner(g));
    EXPECT_NEAR(social_welfare(moved, w), rw.value, 1e-9);
  }
}

TEST(OptimalMatching, SparseLargeOneToOne) {
  // Mostly-zero profile on n = 200: only the support matters.
  const Instance inst = Instance::one_to_one(200);
  RandomStream rng(82, 0);
  const auto v = sample_profile(IidBernoulli{0.002}, inst, rng);
  const auto r = optimal_matching(inst, v);
  expect_valid(inst, v, r);
  double ones = 0.0;
  for (double x : v.data()) ones += x;
  EXPECT_LE(r.value, ones);
}
