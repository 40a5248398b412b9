#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ordmatch/distributions.hpp"
#include "test_support.hpp"

using namespace ordmatch;
using ordmatch::testing::within_three_sigma;

namespace {

// Every composition of m into positive parts, for m = 1..max_m.
std::vector<Instance> all_compositions(std::size_t max_m) {
  std::vector<Instance> out;
  for (std::size_t m = 1; m <= max_m; ++m) {
    for (std::uint32_t cuts = 0; cuts < (1u << (m - 1)); ++cuts) {
      std::vector<std::size_t> quotas;
      std::size_t run = 1;
      for (std::size_t k = 0; k + 1 < m; ++k) {
        if (cuts >> k & 1u) {
          quotas.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      quotas.push_back(run);
      out.emplace_back(quotas);
    }
  }
  return out;
}

std::vector<DistributionSpec> shipped_specs(const Instance& inst) {
  std::vector<double> base(inst.num_items());
  for (std::size_t g = 0; g < base.size(); ++g) base[g] = static_cast<double>(g / 2);  // pairs tie
  return {IidUniform01{},
          IidBernoulli{0.3},
          LowerBoundBernoulli{},
          SingleAgentAdversarial{inst.num_agents() - 1, false},
          SingleAgentAdversarial{0, true},
          ExchangeablePermutation{base},
          FavoriteBundleUniform{2.0, 1.0}};
}

}  // namespace

TEST(DistributionNames, AreStable) {
  EXPECT_EQ(distribution_name(IidUniform01{}), "iid-uniform");
  EXPECT_EQ(distribution_name(IidBernoulli{0.2}), "iid-bernoulli");
  EXPECT_EQ(distribution_name(LowerBoundBernoulli{}), "lower-bound-bernoulli");
  EXPECT_EQ(distribution_name(SingleAgentAdversarial{}), "single-agent-adversarial");
  EXPECT_EQ(distribution_name(ExchangeablePermutation{}), "exchangeable-permutation");
  EXPECT_EQ(distribution_name(FavoriteBundleUniform{}), "favorite-bundle-uniform");
}

TEST(Validate, RejectsBadParameters) {
  const Instance inst({1, 2});
  EXPECT_THROW(validate(IidBernoulli{1.5}, inst), std::invalid_argument);
  EXPECT_THROW(validate(IidBernoulli{-0.1}, inst), std::invalid_argument);
  EXPECT_THROW(validate(SingleAgentAdversarial{2}, inst), std::invalid_argument);
  EXPECT_THROW(validate(ExchangeablePermutation{{1.0, 2.0}}, inst), std::invalid_argument);
  EXPECT_THROW(validate(ExchangeablePermutation{{1.0, -2.0, 0.0}}, inst), std::invalid_argument);
  EXPECT_THROW(validate(FavoriteBundleUniform{1.0, 1.0}, inst), std::invalid_argument);
  EXPECT_THROW(validate(FavoriteBundleUniform{1.0, -1.0}, inst), std::invalid_argument);
  EXPECT_THROW(validate(FavoriteBundleUniform{INFINITY, 0.0}, inst), std::invalid_argument);
  EXPECT_NO_THROW(validate(IidBernoulli{0.0}, inst));
  EXPECT_NO_THROW(validate(IidBernoulli{1.0}, inst));
  EXPECT_NO_THROW(validate(ExchangeablePermutation{{1.0, 1.0, 0.0}}, inst));
  RandomStream rng(1, 1);
  EXPECT_THROW(sample_profile(SingleAgentAdversarial{5}, inst, rng), std::invalid_argument);
}

TEST(SampleProfile, BernoulliOneIsAllOnes) {
  const Instance inst({2, 3});
  RandomStream rng(1, 2);
  const auto v = sample_profile(IidBernoulli{1.0}, inst, rng);
  for (double x : v.data()) EXPECT_EQ(x, 1.0);
  const auto z = sample_profile(IidBernoulli{0.0}, inst, rng);
  for (double x : z.data()) EXPECT_EQ(x, 0.0);
}

TEST(SampleProfile, LowerBoundBernoulliRate) {
  // n = 10: p = 1/100, 10^6 entries over 10^4 draws.
  const auto inst = Instance::one_to_one(10);
  std::uint64_t ones = 0, entries = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    RandomStream rng(20261018, t);
    const auto v = sample_profile(LowerBoundBernoulli{}, inst, rng);
    for (double x : v.data()) {
      ASSERT_TRUE(x == 0.0 || x == 1.0);
      ones += x == 1.0;
      ++entries;
    }
  }
  const double mean = static_cast<double>(ones) / static_cast<double>(entries);
  EXPECT_NEAR(mean, 0.01, 0.002);
  EXPECT_NEAR(mean / 0.01, 1.0, 0.1);
}

TEST(SampleProfile, BernoulliEntriesIndependentByPosition) {
  // The geometric-gap sampler must hit every column at the same rate and
  // show no adjacency correlation.
  const Instance inst({3, 3});
  const double p = 0.3;
  const std::uint64_t trials = 40000;
  std::vector<std::uint64_t> col(6, 0);
  std::uint64_t both = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream rng(17, t);
    const auto v = sample_profile(IidBernoulli{p}, inst, rng);
    for (std::size_t g = 0; g < 6; ++g) col[g] += v.value(1, g) == 1.0;
    both += v.value(0, 2) == 1.0 && v.value(0, 3) == 1.0;
  }
  for (auto c : col) EXPECT_TRUE(within_three_sigma(c, trials, p)) << c;
  EXPECT_TRUE(within_three_sigma(both, trials, p * p)) << both;
}

TEST(SampleProfile, SingleAgentAdversarialShape) {
  const Instance inst({1, 1});
  for (std::uint64_t t = 0; t < 100; ++t) {
    RandomStream rng(3, t);
    const auto v = sample_profile(SingleAgentAdversarial{1}, inst, rng);
    EXPECT_EQ(v.value(0, 0) + v.value(0, 1), 0.0);
    EXPECT_EQ(v.value(1, 0) + v.value(1, 1), 1.0);
  }
}

TEST(SampleProfile, SingleAgentAdversarialWithReplacementCanCollapse) {
  const Instance inst({3, 1});
  std::set<double> sizes;
  for (std::uint64_t t = 0; t < 200; ++t) {
    RandomStream rng(4, t);
    const auto v = sample_profile(SingleAgentAdversarial{0, false}, inst, rng);
    double ones = 0.0;
    for (double x : v.row(0)) ones += x;
    for (double x : v.row(1)) EXPECT_EQ(x, 0.0);
    sizes.insert(ones);
    RandomStream rng2(4, t);
    const auto w = sample_profile(SingleAgentAdversarial{0, true}, inst, rng2);
    double distinct = 0.0;
    for (double x : w.row(0)) distinct += x;
    EXPECT_EQ(distinct, 3.0);
  }
  EXPECT_TRUE(sizes.contains(3.0));
  EXPECT_TRUE(sizes.contains(2.0) || sizes.contains(1.0));
  EXPECT_FALSE(sizes.contains(4.0));
}

TEST(SampleProfile, ExchangeablePermutationRowsArePermutations) {
  const Instance inst({2, 1, 1});
  const std::vector<double> base{0.5, 3.0, 0.5, 7.0};
  auto sorted_base = base;
  std::sort(sorted_base.begin(), sorted_base.end());
  for (std::uint64_t t = 0; t < 50; ++t) {
    RandomStream rng(6, t);
    const auto v = sample_profile(ExchangeablePermutation{base}, inst, rng);
    for (AgentIndex i = 0; i < 3; ++i) {
      std::vector<double> row(v.row(i).begin(), v.row(i).end());
      std::sort(row.begin(), row.end());
      EXPECT_EQ(row, sorted_base);
    }
  }
}

TEST(SampleProfile, FavoriteBundleUniformMarksExactlyQuota) {
  const Instance inst({3, 1, 2});
  RandomStream rng(8, 0);
  const auto v = sample_profile(FavoriteBundleUniform{5.0, 0.5}, inst, rng);
  for (AgentIndex i = 0; i < 3; ++i) {
    EXPECT_EQ(std::count(v.row(i).begin(), v.row(i).end(), 5.0),
              static_cast<long>(inst.quota(i)));
    EXPECT_EQ(std::count(v.row(i).begin(), v.row(i).end(), 0.5),
              static_cast<long>(inst.num_items() - inst.quota(i)));
  }
}

TEST(SampleProfile, ReproducibleFromStreamKey) {
  const Instance inst({2, 3, 1});
  const DistributionSpec specs[] = {IidUniform01{}, IidBernoulli{0.4}, FavoriteBundleUniform{}};
  for (const auto& spec : specs) {
    RandomStream a(99, 5), b(99, 5), c(99, 6);
    const auto va = sample_profile(spec, inst, a);
    EXPECT_EQ(va, sample_profile(spec, inst, b));
    EXPECT_FALSE(va == sample_profile(spec, inst, c));
  }
}

TEST(UfAudit, ExchangeablePermutationTwoSubsets) {
  const Instance inst({2, 2});
  RandomStream rng(20261018, 0);
  const auto report =
      uf_audit(ExchangeablePermutation{{4.0, 3.0, 2.0, 1.0}}, inst, 100000, rng);
  for (const auto& agent : report.agents) {
    ASSERT_EQ(agent.bundles.size(), 6u);
    for (auto c : agent.counts) EXPECT_TRUE(within_three_sigma(c, 100000, 1.0 / 6.0)) << c;
    EXPECT_GT(agent.p_value, 1e-3);
  }
}

TEST(UfAudit, IidUniformSingletons) {
  const Instance inst({1, 1, 1});
  RandomStream rng(20261018, 1);
  const auto report = uf_audit(IidUniform01{}, inst, 60000, rng);
  for (const auto& agent : report.agents) {
    ASSERT_EQ(agent.counts.size(), 3u);
    for (auto c : agent.counts) EXPECT_TRUE(within_three_sigma(c, 60000, 1.0 / 3.0)) << c;
  }
}

TEST(UfAudit, FavoriteBundleTwoItemsExact) {
  const Instance inst({1, 1});
  RandomStream rng(20261018, 2);
  const auto report = uf_audit(FavoriteBundleUniform{}, inst, 50000, rng);
  for (const auto& agent : report.agents) {
    ASSERT_EQ(agent.counts.size(), 2u);
    EXPECT_EQ(agent.counts[0] + agent.counts[1], 50000u);
    const double p = ordmatch::testing::chi_square_p_value(agent.counts, {0.5, 0.5});
    EXPECT_DOUBLE_EQ(agent.p_value, p);
    EXPECT_GT(agent.p_value, 1e-3);
  }
}

TEST(UfAudit, SingleBundleAgentIsTrivial) {
  const Instance inst({3});
  RandomStream rng(1, 0);
  const auto report = uf_audit(IidUniform01{}, inst, 10, rng);
  EXPECT_EQ(report.agents[0].counts, std::vector<std::uint64_t>{10});
  EXPECT_EQ(report.agents[0].p_value, 1.0);
}

TEST(UfAudit, RejectsLargeOrEmptyRuns) {
  RandomStream rng(1, 0);
  EXPECT_THROW(uf_audit(IidUniform01{}, Instance({13}), 10, rng), std::invalid_argument);
  EXPECT_THROW(uf_audit(IidUniform01{}, Instance({1}), 0, rng), std::invalid_argument);
}

TEST(UfAudit, EveryShippedSpecOnEveryInstanceUpToEightItems) {
  // All 255 compositions with m <= 8, seven specs, every agent. Family-wise
  // level 0.001 via Bonferroni over the number of agent tables.
  const auto instances = all_compositions(8);
  std::size_t tables = 0;
  for (const auto& inst : instances) tables += inst.num_agents() * shipped_specs(inst).size();
  const double per_table_alpha = 1e-3 / static_cast<double>(tables);

  double smallest = 1.0;
  std::uint64_t stream = 0;
  for (const auto& inst : instances) {
    for (const auto& spec : shipped_specs(inst)) {
      RandomStream rng(20261018, stream++);
      const auto report = uf_audit(spec, inst, 2000, rng);
      for (const auto& agent : report.agents) {
        smallest = std::min(smallest, agent.p_value);
        EXPECT_GE(agent.p_value, per_table_alpha)
            << distribution_name(spec) << " agent " << agent.agent << " m " << inst.num_items();
      }
    }
  }
  RecordProperty("smallest_p_value", std::to_string(smallest));
}
