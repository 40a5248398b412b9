#include "ordmatch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ordmatch/numeric.hpp"

namespace ordmatch {

Instance::Instance(std::vector<std::size_t> quotas) : quotas_(std::move(quotas)) {
  if (quotas_.empty()) {
    throw std::invalid_argument("Instance: at least one agent is required");
  }
  for (std::size_t i = 0; i < quotas_.size(); ++i) {
    if (quotas_[i] == 0) {
      throw std::invalid_argument("Instance: quota of agent " + std::to_string(i) +
                                  " must be positive");
    }
    num_items_ += quotas_[i];
    if (quotas_[i] > max_quota_) {
      max_quota_ = quotas_[i];
      max_quota_agent_ = i;
    }
  }
}

Instance Instance::one_to_one(std::size_t n) { return Instance(std::vector<std::size_t>(n, 1)); }

ValuationProfile::ValuationProfile(std::size_t num_agents, std::size_t num_items,
                                   std::vector<double> row_major_values)
    : num_agents_(num_agents), num_items_(num_items), values_(std::move(row_major_values)) {
  if (values_.size() != num_agents_ * num_items_) {
    throw std::invalid_argument("ValuationProfile: expected " +
                                std::to_string(num_agents_ * num_items_) + " values, got " +
                                std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("ValuationProfile: values must be finite and nonnegative");
    }
  }
}

ValuationProfile::ValuationProfile(std::size_t num_agents, std::size_t num_items)
    : num_agents_(num_agents), num_items_(num_items), values_(num_agents * num_items, 0.0) {}

ValuationProfile ValuationProfile::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(n * m);
  for (const auto& r : rows) {
    if (r.size() != m) throw std::invalid_argument("ValuationProfile: ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ValuationProfile(n, m, std::move(flat));
}

void ValuationProfile::check_dimensions(const Instance& inst) const {
  if (num_agents_ != inst.num_agents() || num_items_ != inst.num_items()) {
    throw std::invalid_argument(
        "ValuationProfile is " + std::to_string(num_agents_) + "x" +
        std::to_string(num_items_) + " but the instance has n=" +
        std::to_string(inst.num_agents()) + ", m=" + std::to_string(inst.num_items()));
  }
}

PreferenceProfile::PreferenceProfile(std::vector<std::size_t> quotas, std::size_t num_items,
                                     std::vector<ItemIndex> flat_rankings)
    : quotas_(std::move(quotas)), num_items_(num_items), rankings_(std::move(flat_rankings)) {}

PreferenceProfile::PreferenceProfile(const Instance& inst,
                                     std::vector<std::vector<ItemIndex>> rankings)
    : quotas_(inst.quotas().begin(), inst.quotas().end()), num_items_(inst.num_items()) {
  if (rankings.size() != inst.num_agents()) {
    throw std::invalid_argument("PreferenceProfile: one ranking per agent is required");
  }
  rankings_.reserve(num_items_ * rankings.size());
  std::vector<char> seen(num_items_);
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    if (rankings[i].size() != num_items_) {
      throw std::invalid_argument("PreferenceProfile: ranking of agent " + std::to_string(i) +
                                  " has wrong length");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (ItemIndex g : rankings[i]) {
      if (g >= num_items_ || seen[g]) {
        throw std::invalid_argument("PreferenceProfile: ranking of agent " +
                                    std::to_string(i) + " is not a permutation");
      }
      seen[g] = 1;
    }
    rankings_.insert(rankings_.end(), rankings[i].begin(), rankings[i].end());
  }
}

Matching::Matching(std::size_t num_items) : owner_(num_items, kUnassigned) {}

std::optional<AgentIndex> Matching::owner(ItemIndex item) const {
  const auto o = owner_.at(item);
  if (o == kUnassigned) return std::nullopt;
  return static_cast<AgentIndex>(o);
}

void Matching::assign(ItemIndex item, AgentIndex agent) {
  owner_.at(item) = static_cast<std::int64_t>(agent);
}

void Matching::unassign(ItemIndex item) { owner_.at(item) = kUnassigned; }

std::vector<ItemIndex> Matching::bundle(AgentIndex agent) const {
  std::vector<ItemIndex> items;
  for (ItemIndex g = 0; g < owner_.size(); ++g) {
    if (owner_[g] == static_cast<std::int64_t>(agent)) items.push_back(g);
  }
  return items;
}

std::size_t Matching::bundle_size(AgentIndex agent) const {
  return static_cast<std::size_t>(
      std::count(owner_.begin(), owner_.end(), static_cast<std::int64_t>(agent)));
}

std::size_t Matching::num_assigned() const {
  return owner_.size() -
         static_cast<std::size_t>(std::count(owner_.begin(), owner_.end(), kUnassigned));
}

bool Matching::respects_quotas(const Instance& inst) const {
  if (owner_.size() != inst.num_items()) return false;
  std::vector<std::size_t> load(inst.num_agents(), 0);
  for (auto o : owner_) {
    if (o == kUnassigned) continue;
    if (o < 0 || static_cast<std::size_t>(o) >= inst.num_agents()) return false;
    if (++load[static_cast<std::size_t>(o)] > inst.quota(static_cast<std::size_t>(o))) {
      return false;
    }
  }
  return true;
}

PreferenceProfile derive_preferences(const Instance& inst, const ValuationProfile& values,
                                     RandomStream& rng) {
  values.check_dimensions(inst);
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_items();

  struct Key {
    double value;
    std::uint64_t tag;
    ItemIndex item;
  };
  std::vector<Key> keys(m);
  std::vector<ItemIndex> flat;
  flat.reserve(n * m);
  for (AgentIndex i = 0; i < n; ++i) {
    const auto row = values.row(i);
    for (ItemIndex g = 0; g < m; ++g) keys[g] = {row[g], rng(), g};
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
      if (a.value != b.value) return a.value > b.value;
      if (a.tag != b.tag) return a.tag < b.tag;
      return a.item < b.item;
    });
    for (const auto& k : keys) flat.push_back(k.item);
  }
  return PreferenceProfile({inst.quotas().begin(), inst.quotas().end()}, m, std::move(flat));
}

double social_welfare(const Matching& matching, const ValuationProfile& values) {
  if (matching.num_items() != values.num_items()) {
    throw std::invalid_argument("social_welfare: matching and valuation disagree on m");
  }
  CompensatedSum total;
  for (ItemIndex g = 0; g < matching.num_items(); ++g) {
    if (const auto o = matching.owner(g)) {
      if (*o >= values.num_agents()) {
        throw std::invalid_argument("social_welfare: agent index out of range");
      }
      total.add(values.value(*o, g));
    }
  }
  return total.value();
}

Matching complete_matching(const Matching& matching, const Instance& inst) {
  if (!matching.respects_quotas(inst)) {
    throw std::invalid_argument("complete_matching: input violates the instance quotas");
  }
  Matching out = matching;
  std::vector<std::size_t> residual(inst.quotas().begin(), inst.quotas().end());
  for (ItemIndex g = 0; g < out.num_items(); ++g) {
    if (const auto o = out.owner(g)) --residual[*o];
  }
  AgentIndex next = 0;
  for (ItemIndex g = 0; g < out.num_items(); ++g) {
    if (out.is_assigned(g)) continue;
    while (residual[next] == 0) ++next;  // sum of quotas = m keeps this in range
    out.assign(g, next);
    --residual[next];
  }
  return out;
}

}  // namespace ordmatch
