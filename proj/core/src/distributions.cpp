#include "ordmatch/distributions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <boost/math/distributions/chi_squared.hpp>

namespace ordmatch {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

// Marks each entry with probability p, jumping between successes with
// geometric gaps; far cheaper than one draw per entry when p is small.
void fill_bernoulli(std::span<double> out, double p, RandomStream& rng) {
  std::fill(out.begin(), out.end(), 0.0);
  if (p <= 0.0) return;
  if (p >= 1.0) {
    std::fill(out.begin(), out.end(), 1.0);
    return;
  }
  const double log_q = std::log1p(-p);
  std::size_t pos = 0;
  while (true) {
    // 1 - u lies in (0, 1], so the log is finite.
    const double u = 1.0 - rng.uniform01();
    const double gap = std::floor(std::log(u) / log_q);
    if (gap >= static_cast<double>(out.size() - pos)) return;
    pos += static_cast<std::size_t>(gap);
    out[pos] = 1.0;
    if (++pos >= out.size()) return;
  }
}

// Partial Fisher-Yates: the first k entries of idx become a uniform k-subset.
void choose_subset(std::vector<std::size_t>& idx, std::size_t k, RandomStream& rng) {
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t b = a + rng.uniform_index(idx.size() - a);
    std::swap(idx[a], idx[b]);
  }
}

}  // namespace

std::string distribution_name(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const IidUniform01&) -> std::string { return "iid-uniform"; },
          [](const IidBernoulli&) -> std::string { return "iid-bernoulli"; },
          [](const LowerBoundBernoulli&) -> std::string { return "lower-bound-bernoulli"; },
          [](const SingleAgentAdversarial&) -> std::string {
            return "single-agent-adversarial";
          },
          [](const ExchangeablePermutation&) -> std::string {
            return "exchangeable-permutation";
          },
          [](const FavoriteBundleUniform&) -> std::string {
            return "favorite-bundle-uniform";
          },
      },
      spec);
}

void validate(const DistributionSpec& spec, const Instance& inst) {
  std::visit(Overloaded{
                 [](const IidUniform01&) {},
                 [](const IidBernoulli& d) {
                   require(d.p >= 0.0 && d.p <= 1.0, "iid-bernoulli: p must lie in [0,1]");
                 },
                 [](const LowerBoundBernoulli&) {},
                 [&](const SingleAgentAdversarial& d) {
                   require(d.agent < inst.num_agents(),
                           "single-agent-adversarial: agent index out of range");
                 },
                 [&](const ExchangeablePermutation& d) {
                   require(d.base.size() == inst.num_items(),
                           "exchangeable-permutation: base must have m entries");
                   require(std::all_of(d.base.begin(), d.base.end(), finite_nonnegative),
                           "exchangeable-permutation: base values must be finite and >= 0");
                 },
                 [](const FavoriteBundleUniform& d) {
                   require(finite_nonnegative(d.hi) && finite_nonnegative(d.lo) && d.hi > d.lo,
                           "favorite-bundle-uniform: need finite hi > lo >= 0");
                 },
             },
             spec);
}

ValuationProfile sample_profile(const DistributionSpec& spec, const Instance& inst,
                                RandomStream& rng) {
  validate(spec, inst);
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_items();
  ValuationProfile values(n, m);

  std::visit(
      Overloaded{
          [&](const IidUniform01&) {
            for (AgentIndex i = 0; i < n; ++i) {
              for (double& v : values.mutable_row(i)) v = rng.uniform01();
            }
          },
          [&](const IidBernoulli& d) {
            for (AgentIndex i = 0; i < n; ++i) fill_bernoulli(values.mutable_row(i), d.p, rng);
          },
          [&](const LowerBoundBernoulli&) {
            const double p = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
            for (AgentIndex i = 0; i < n; ++i) fill_bernoulli(values.mutable_row(i), p, rng);
          },
          [&](const SingleAgentAdversarial& d) {
            auto row = values.mutable_row(d.agent);
            const std::size_t draws = inst.quota(d.agent);
            if (d.without_replacement) {
              std::vector<std::size_t> idx(m);
              std::iota(idx.begin(), idx.end(), 0);
              choose_subset(idx, draws, rng);
              for (std::size_t k = 0; k < draws; ++k) row[idx[k]] = 1.0;
            } else {
              for (std::size_t k = 0; k < draws; ++k) row[rng.uniform_index(m)] = 1.0;
            }
          },
          [&](const ExchangeablePermutation& d) {
            std::vector<std::size_t> idx(m);
            for (AgentIndex i = 0; i < n; ++i) {
              std::iota(idx.begin(), idx.end(), 0);
              choose_subset(idx, m, rng);
              auto row = values.mutable_row(i);
              for (std::size_t g = 0; g < m; ++g) row[g] = d.base[idx[g]];
            }
          },
          [&](const FavoriteBundleUniform& d) {
            std::vector<std::size_t> idx(m);
            for (AgentIndex i = 0; i < n; ++i) {
              std::iota(idx.begin(), idx.end(), 0);
              choose_subset(idx, inst.quota(i), rng);
              auto row = values.mutable_row(i);
              std::fill(row.begin(), row.end(), d.lo);
              for (std::size_t k = 0; k < inst.quota(i); ++k) row[idx[k]] = d.hi;
            }
          },
      },
      spec);
  return values;
}

UfAuditReport uf_audit(const DistributionSpec& spec, const Instance& inst,
                       std::uint64_t trials, RandomStream& rng) {
  const std::size_t m = inst.num_items();
  if (m > kMaxAuditItems) {
    throw std::invalid_argument("uf_audit: m = " + std::to_string(m) +
                                " is too large to tabulate (limit 12)");
  }
  if (trials == 0) throw std::invalid_argument("uf_audit: trials must be positive");
  validate(spec, inst);

  UfAuditReport report;
  report.trials = trials;
  std::vector<std::unordered_map<std::uint32_t, std::size_t>> slot(inst.num_agents());
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    AgentAudit audit;
    audit.agent = i;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) == inst.quota(i)) {
        slot[i].emplace(mask, audit.bundles.size());
        audit.bundles.push_back(mask);
      }
    }
    audit.counts.assign(audit.bundles.size(), 0);
    report.agents.push_back(std::move(audit));
  }

  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto values = sample_profile(spec, inst, rng);
    const auto prefs = derive_preferences(inst, values, rng);
    for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
      std::uint32_t mask = 0;
      for (ItemIndex g : prefs.favorites(i)) mask |= 1u << g;
      ++report.agents[i].counts[slot[i].at(mask)];
    }
  }

  for (auto& audit : report.agents) {
    const std::size_t cells = audit.bundles.size();
    audit.degrees_of_freedom = cells - 1;
    if (cells < 2) continue;  // b_i = m: a single possible bundle
    const double expected = static_cast<double>(trials) / static_cast<double>(cells);
    double chi2 = 0.0;
    for (auto c : audit.counts) {
      const double d = static_cast<double>(c) - expected;
      chi2 += d * d / expected;
    }
    audit.chi_square = chi2;
    boost::math::chi_squared_distribution<double> law(
        static_cast<double>(audit.degrees_of_freedom));
    audit.p_value = boost::math::cdf(boost::math::complement(law, chi2));
  }
  return report;
}

}  // namespace ordmatch
