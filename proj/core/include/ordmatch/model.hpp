#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ordmatch/random_stream.hpp"

namespace ordmatch {

using AgentIndex = std::size_t;
using ItemIndex = std::size_t;

/// A b-matching instance: n agents with positive quotas b_i summing to m items.
class Instance {
 public:
  /// Throws std::invalid_argument on an empty or non-positive quota vector.
  explicit Instance(std::vector<std::size_t> quotas);

  std::size_t num_agents() const { return quotas_.size(); }
  std::size_t num_items() const { return num_items_; }
  std::size_t quota(AgentIndex i) const { return quotas_.at(i); }
  std::span<const std::size_t> quotas() const { return quotas_; }

  std::size_t max_quota() const { return max_quota_; }
  /// Lowest-index agent among those with maximum quota.
  AgentIndex max_quota_agent() const { return max_quota_agent_; }

  /// Builds the one-to-one instance with n unit quotas.
  static Instance one_to_one(std::size_t n);

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.quotas_ == b.quotas_;
  }

 private:
  std::vector<std::size_t> quotas_;
  std::size_t num_items_ = 0;
  std::size_t max_quota_ = 0;
  AgentIndex max_quota_agent_ = 0;
};

/// Dense n x m matrix of nonnegative finite values, row i = agent i.
class ValuationProfile {
 public:
  ValuationProfile(std::size_t num_agents, std::size_t num_items,
                   std::vector<double> row_major_values);
  ValuationProfile(std::size_t num_agents, std::size_t num_items);  // all zero
  static ValuationProfile from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t num_agents() const { return num_agents_; }
  std::size_t num_items() const { return num_items_; }

  double value(AgentIndex i, ItemIndex j) const { return values_[i * num_items_ + j]; }
  std::span<const double> row(AgentIndex i) const {
    return {values_.data() + i * num_items_, num_items_};
  }
  std::span<const double> data() const { return values_; }

  /// Unchecked write access for generators; callers must keep entries finite and >= 0.
  std::span<double> mutable_row(AgentIndex i) {
    return {values_.data() + i * num_items_, num_items_};
  }

  /// Throws std::invalid_argument unless dimensions match inst.
  void check_dimensions(const Instance& inst) const;

  friend bool operator==(const ValuationProfile&, const ValuationProfile&) = default;

 private:
  std::size_t num_agents_;
  std::size_t num_items_;
  std::vector<double> values_;
};

/// Strict per-agent rankings of the items plus the derived favorite sets.
///
/// favorites(i) is the first b_i entries of ranking(i).
class PreferenceProfile {
 public:
  /// Validates that every ranking is a permutation of [m].
  PreferenceProfile(const Instance& inst, std::vector<std::vector<ItemIndex>> rankings);

  std::size_t num_agents() const { return quotas_.size(); }
  std::size_t num_items() const { return num_items_; }

  std::span<const ItemIndex> ranking(AgentIndex i) const {
    return {rankings_.data() + i * num_items_, num_items_};
  }
  std::span<const ItemIndex> favorites(AgentIndex i) const {
    return {rankings_.data() + i * num_items_, quotas_[i]};
  }

 private:
  friend PreferenceProfile derive_preferences(const Instance&, const ValuationProfile&,
                                              RandomStream&);
  PreferenceProfile(std::vector<std::size_t> quotas, std::size_t num_items,
                    std::vector<ItemIndex> flat_rankings);

  std::vector<std::size_t> quotas_;
  std::size_t num_items_;
  std::vector<ItemIndex> rankings_;  // n x m, row-major
};

/// Item-indexed partial assignment (item -> agent).
class Matching {
 public:
  explicit Matching(std::size_t num_items);

  std::size_t num_items() const { return owner_.size(); }
  std::optional<AgentIndex> owner(ItemIndex item) const;
  bool is_assigned(ItemIndex item) const { return owner_[item] != kUnassigned; }
  bool is_assigned_to(ItemIndex item, AgentIndex agent) const {
    return owner_[item] == static_cast<std::int64_t>(agent);
  }

  void assign(ItemIndex item, AgentIndex agent);
  void unassign(ItemIndex item);

  std::vector<ItemIndex> bundle(AgentIndex agent) const;
  std::size_t bundle_size(AgentIndex agent) const;
  std::size_t num_assigned() const;

  /// True when the matching fits inst (item count, agent range, quotas).
  bool respects_quotas(const Instance& inst) const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  static constexpr std::int64_t kUnassigned = -1;
  std::vector<std::int64_t> owner_;
};

/// Rankings sorted by decreasing value; equal values in uniformly random order.
PreferenceProfile derive_preferences(const Instance& inst, const ValuationProfile& values,
                                     RandomStream& rng);

/// Sum of v_ij over assigned pairs, compensated.
double social_welfare(const Matching& matching, const ValuationProfile& values);

/// Gives every agent exactly b_i items: unassigned items in ascending order go to
/// agents with residual quota in ascending index order. Existing pairs are kept.
Matching complete_matching(const Matching& matching, const Instance& inst);

}  // namespace ordmatch
