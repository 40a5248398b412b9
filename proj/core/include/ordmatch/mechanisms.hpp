#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ordmatch/model.hpp"
#include "ordmatch/random_stream.hpp"

namespace ordmatch {

struct RandomSurvivors {};
struct RandomSurvivorsBurnSteal {};
struct HighestQuotaLast {};
struct SecretaryRandomSurvivors {};
struct SerialDictator {
  std::vector<AgentIndex> order;
};

using MechanismVariant = std::variant<RandomSurvivors, RandomSurvivorsBurnSteal, HighestQuotaLast,
                                      SecretaryRandomSurvivors, SerialDictator>;

struct MechanismSpec {
  MechanismVariant variant;
  bool complete = false;  // run complete_matching after the mechanism
};

/// "rs", "rsbs", "hql", "secretary-rs" or "serial-dictator".
std::string mechanism_name(const MechanismSpec& spec);

/// Mechanism bound to one instance, with every instance-level probability
/// (survivor, burning, stealing, activation) computed once up front.
///
/// Construction throws AssertionFailure if an RSBS burning or stealing
/// probability falls outside [0,1) by more than 1e-9, and
/// std::invalid_argument for an invalid serial-dictator order.
class PreparedMechanism {
 public:
  PreparedMechanism(MechanismSpec spec, const Instance& inst);

  const MechanismSpec& spec() const { return spec_; }
  const Instance& instance() const { return inst_; }

  Matching run(const PreferenceProfile& prefs, RandomStream& rng) const;

  std::span<const double> survivor_probs() const { return survivor_probs_; }
  /// RSBS only; entry for i_star is 0.
  std::span<const double> burning_probs() const { return burning_probs_; }
  double stealing_prob() const { return stealing_prob_; }
  /// HQL only: processing order (max-quota agent last) and activation probabilities.
  std::span<const AgentIndex> hql_order() const { return hql_order_; }
  std::span<const double> hql_activation_probs() const { return hql_probs_; }

 private:
  Matching run_rs(const PreferenceProfile& prefs, RandomStream& rng) const;
  Matching run_rsbs(const PreferenceProfile& prefs, RandomStream& rng) const;
  Matching run_hql(const PreferenceProfile& prefs, RandomStream& rng) const;
  Matching run_secretary(const PreferenceProfile& prefs, RandomStream& rng) const;
  Matching run_serial(const PreferenceProfile& prefs) const;

  MechanismSpec spec_;
  Instance inst_;
  std::vector<double> survivor_probs_;
  std::vector<double> burning_probs_;
  double stealing_prob_ = 0.0;
  std::vector<AgentIndex> hql_order_;
  std::vector<double> hql_probs_;
};

Matching run_rs(const Instance& inst, const PreferenceProfile& prefs, RandomStream& rng);
Matching run_rsbs(const Instance& inst, const PreferenceProfile& prefs, RandomStream& rng);
Matching run_hql(const Instance& inst, const PreferenceProfile& prefs, RandomStream& rng);
Matching run_secretary_rs(const Instance& inst, const PreferenceProfile& prefs,
                          RandomStream& rng);
Matching run_serial_dictator(const Instance& inst, const PreferenceProfile& prefs,
                             std::span<const AgentIndex> order);

}  // namespace ordmatch
