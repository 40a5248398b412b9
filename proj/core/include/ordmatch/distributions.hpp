#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ordmatch/model.hpp"
#include "ordmatch/random_stream.hpp"

namespace ordmatch {

// Valuation generators. Every variant has the unbiased-favorites property:
// each b_i-subset of items is equally likely to be agent i's favorite bundle
// once ties are broken uniformly.

struct IidUniform01 {};

struct IidBernoulli {
  double p = 0.5;
};

// Bernoulli entries with success probability 1/n^2 (one-to-one lower-bound ensemble).
struct LowerBoundBernoulli {};

// All rows zero except `agent`, which gets value 1 on b_agent draws made with
// replacement, so duplicates can leave fewer than b_agent ones. Set
// without_replacement to mark exactly b_agent distinct items instead.
struct SingleAgentAdversarial {
  AgentIndex agent = 0;
  bool without_replacement = false;
};

// Row i is a uniformly random permutation of `base` (length m).
struct ExchangeablePermutation {
  std::vector<double> base;
};

// Row i is `hi` on a uniformly random b_i-subset and `lo` elsewhere.
struct FavoriteBundleUniform {
  double hi = 1.0;
  double lo = 0.0;
};

using DistributionSpec =
    std::variant<IidUniform01, IidBernoulli, LowerBoundBernoulli, SingleAgentAdversarial,
                 ExchangeablePermutation, FavoriteBundleUniform>;

/// Short stable name used in CSV output and configs (e.g. "iid-uniform").
std::string distribution_name(const DistributionSpec& spec);

/// Throws std::invalid_argument if spec parameters are invalid for inst.
void validate(const DistributionSpec& spec, const Instance& inst);

ValuationProfile sample_profile(const DistributionSpec& spec, const Instance& inst,
                                RandomStream& rng);

struct AgentAudit {
  AgentIndex agent = 0;
  std::vector<std::uint32_t> bundles;  // bitmask per b_i-subset, ascending
  std::vector<std::uint64_t> counts;   // favorite-bundle hits per subset
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

struct UfAuditReport {
  std::uint64_t trials = 0;
  std::vector<AgentAudit> agents;
};

inline constexpr std::size_t kMaxAuditItems = 12;

/// Tabulates favorite-bundle frequencies over `trials` draws and tests each
/// agent's table against the uniform law on b_i-subsets. Requires m <= 12.
UfAuditReport uf_audit(const DistributionSpec& spec, const Instance& inst,
                       std::uint64_t trials, RandomStream& rng);

}  // namespace ordmatch
