#include "ordmatch/mechanisms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ordmatch/analytics.hpp"
#include "ordmatch/errors.hpp"

namespace ordmatch {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kProbabilityTolerance = 1e-9;

double checked_probability(double p, const std::string& what) {
  if (!(p >= -kProbabilityTolerance && p < 1.0 + kProbabilityTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " = " << p << " lies outside [0,1)";
    throw AssertionFailure(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

void check_profile(const Instance& inst, const PreferenceProfile& prefs) {
  if (prefs.num_agents() != inst.num_agents() || prefs.num_items() != inst.num_items()) {
    throw std::invalid_argument("preference profile does not match the instance");
  }
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    if (prefs.favorites(i).size() != inst.quota(i)) {
      throw std::invalid_argument("preference profile quotas do not match the instance");
    }
  }
}

// Agent takes every favorite item that is still free.
void take_available_favorites(const PreferenceProfile& prefs, AgentIndex agent, Matching& out) {
  for (ItemIndex g : prefs.favorites(agent)) {
    if (!out.is_assigned(g)) out.assign(g, agent);
  }
}

// Each item goes to a uniform member of its demand set among `agents`; the
// k-th demander of an item replaces the current holder with probability 1/k.
void assign_by_demand(const PreferenceProfile& prefs, std::span<const AgentIndex> agents,
                      RandomStream& rng, Matching& out) {
  std::vector<std::uint64_t> demand(prefs.num_items(), 0);
  for (AgentIndex i : agents) {
    for (ItemIndex g : prefs.favorites(i)) {
      if (rng.uniform_index(++demand[g]) == 0) out.assign(g, i);
    }
  }
}

std::vector<AgentIndex> draw_survivors(std::span<const double> probs, AgentIndex skip,
                                       RandomStream& rng) {
  std::vector<AgentIndex> survivors;
  survivors.reserve(probs.size());
  for (AgentIndex i = 0; i < probs.size(); ++i) {
    if (i == skip) continue;
    if (rng.bernoulli(probs[i])) survivors.push_back(i);
  }
  return survivors;
}

void validate_order(const Instance& inst, std::span<const AgentIndex> order) {
  if (order.size() != inst.num_agents()) {
    throw std::invalid_argument("serial dictator order must list every agent exactly once");
  }
  std::vector<char> seen(order.size(), 0);
  for (AgentIndex i : order) {
    if (i >= order.size() || seen[i]) {
      throw std::invalid_argument("serial dictator order is not a permutation of the agents");
    }
    seen[i] = 1;
  }
}

}  // namespace

std::string mechanism_name(const MechanismSpec& spec) {
  return std::visit(Overloaded{
                        [](const RandomSurvivors&) -> std::string { return "rs"; },
                        [](const RandomSurvivorsBurnSteal&) -> std::string { return "rsbs"; },
                        [](const HighestQuotaLast&) -> std::string { return "hql"; },
                        [](const SecretaryRandomSurvivors&) -> std::string {
                          return "secretary-rs";
                        },
                        [](const SerialDictator&) -> std::string { return "serial-dictator"; },
                    },
                    spec.variant);
}

PreparedMechanism::PreparedMechanism(MechanismSpec spec, const Instance& inst)
    : spec_(std::move(spec)), inst_(inst) {
  const std::size_t n = inst_.num_agents();
  const std::size_t m = inst_.num_items();
  survivor_probs_.resize(n);
  for (AgentIndex i = 0; i < n; ++i) {
    survivor_probs_[i] = analytics::survivor_prob(inst_.quota(i), m);
  }

  if (std::holds_alternative<RandomSurvivorsBurnSteal>(spec_.variant)) {
    burning_probs_.assign(n, 0.0);
    if (n > 1) {
      const AgentIndex star = inst_.max_quota_agent();
      for (AgentIndex i = 0; i < n; ++i) {
        if (i == star) continue;
        burning_probs_[i] = checked_probability(analytics::burning_prob(inst_, i, star),
                                                "burning probability of agent " +
                                                    std::to_string(i));
      }
      stealing_prob_ = checked_probability(analytics::stealing_prob(inst_.max_quota(), m),
                                           "stealing probability");
    }
  } else if (std::holds_alternative<HighestQuotaLast>(spec_.variant)) {
    hql_order_.resize(n);
    std::iota(hql_order_.begin(), hql_order_.end(), 0);
    std::swap(hql_order_[inst_.max_quota_agent()], hql_order_[n - 1]);
    hql_probs_.resize(n);
    const double md = static_cast<double>(m);
    std::size_t before = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      hql_probs_[pos] =
          md / (2.0 * md - static_cast<double>(inst_.max_quota()) - static_cast<double>(before));
      before += inst_.quota(hql_order_[pos]);
    }
    hql_probs_[n - 1] = 1.0;  // denominator telescopes to m
  } else if (const auto* sd = std::get_if<SerialDictator>(&spec_.variant)) {
    validate_order(inst_, sd->order);
  }
}

Matching PreparedMechanism::run(const PreferenceProfile& prefs, RandomStream& rng) const {
  check_profile(inst_, prefs);
  Matching out = std::visit(
      Overloaded{
          [&](const RandomSurvivors&) { return run_rs(prefs, rng); },
          [&](const RandomSurvivorsBurnSteal&) { return run_rsbs(prefs, rng); },
          [&](const HighestQuotaLast&) { return run_hql(prefs, rng); },
          [&](const SecretaryRandomSurvivors&) { return run_secretary(prefs, rng); },
          [&](const SerialDictator&) { return run_serial(prefs); },
      },
      spec_.variant);
  if (spec_.complete) out = complete_matching(out, inst_);
  return out;
}

Matching PreparedMechanism::run_rs(const PreferenceProfile& prefs, RandomStream& rng) const {
  Matching out(inst_.num_items());
  const auto survivors = draw_survivors(survivor_probs_, inst_.num_agents(), rng);
  assign_by_demand(prefs, survivors, rng, out);
  return out;
}

Matching PreparedMechanism::run_rsbs(const PreferenceProfile& prefs, RandomStream& rng) const {
  Matching out(inst_.num_items());
  const AgentIndex star = inst_.max_quota_agent();

  // Phase 1: RS without i*.
  const auto survivors = draw_survivors(survivor_probs_, star, rng);
  assign_by_demand(prefs, survivors, rng, out);

  // Phase 2: burn whole phase-1 bundles.
  std::vector<char> burnt(inst_.num_agents(), 0);
  bool any_burnt = false;
  for (AgentIndex i : survivors) {
    if (rng.bernoulli(burning_probs_[i])) {
      burnt[i] = 1;
      any_burnt = true;
    }
  }
  if (any_burnt) {
    for (ItemIndex g = 0; g < out.num_items(); ++g) {
      if (const auto o = out.owner(g); o && burnt[*o]) out.unassign(g);
    }
  }

  // Phase 3: i* takes free favorites, then steals the rest with one coin.
  take_available_favorites(prefs, star, out);
  if (inst_.num_agents() > 1 && rng.bernoulli(stealing_prob_)) {
    for (ItemIndex g : prefs.favorites(star)) out.assign(g, star);
  }
  return out;
}

Matching PreparedMechanism::run_hql(const PreferenceProfile& prefs, RandomStream& rng) const {
  Matching out(inst_.num_items());
  for (std::size_t pos = 0; pos < hql_order_.size(); ++pos) {
    if (rng.bernoulli(hql_probs_[pos])) take_available_favorites(prefs, hql_order_[pos], out);
  }
  return out;
}

Matching PreparedMechanism::run_secretary(const PreferenceProfile& prefs,
                                          RandomStream& rng) const {
  Matching out(inst_.num_items());
  const std::size_t n = inst_.num_agents();
  std::vector<char> survives(n, 0);
  for (AgentIndex i = 0; i < n; ++i) survives[i] = rng.bernoulli(survivor_probs_[i]) ? 1 : 0;

  std::vector<AgentIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t a = n; a > 1; --a) std::swap(order[a - 1], order[rng.uniform_index(a)]);

  for (AgentIndex i : order) {
    if (survives[i]) take_available_favorites(prefs, i, out);
  }
  return out;
}

Matching PreparedMechanism::run_serial(const PreferenceProfile& prefs) const {
  Matching out(inst_.num_items());
  for (AgentIndex i : std::get<SerialDictator>(spec_.variant).order) {
    take_available_favorites(prefs, i, out);
  }
  return out;
}

Matching run_rs(const Instance& inst, const PreferenceProfile& prefs, RandomStream& rng) {
  return PreparedMechanism({RandomSurvivors{}}, inst).run(prefs, rng);
}

Matching run_rsbs(const Instance& inst, const PreferenceProfile& prefs, RandomStream& rng) {
  return PreparedMechanism({RandomSurvivorsBurnSteal{}}, inst).run(prefs, rng);
}

Matching run_hql(const Instance& inst, const PreferenceProfile& prefs, RandomStream& rng) {
  return PreparedMechanism({HighestQuotaLast{}}, inst).run(prefs, rng);
}

Matching run_secretary_rs(const Instance& inst, const PreferenceProfile& prefs,
                          RandomStream& rng) {
  return PreparedMechanism({SecretaryRandomSurvivors{}}, inst).run(prefs, rng);
}

Matching run_serial_dictator(const Instance& inst, const PreferenceProfile& prefs,
                             std::span<const AgentIndex> order) {
  RandomStream unused(0, 0);  // serial dictatorship draws no coins
  return PreparedMechanism({SerialDictator{{order.begin(), order.end()}}}, inst)
      .run(prefs, unused);
}

}  // namespace ordmatch
