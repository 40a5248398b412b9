#pragma once

#include <cstdint>
#include <vector>

#include "ordmatch/distributions.hpp"
#include "ordmatch/mechanisms.hpp"
#include "ordmatch/model.hpp"

namespace ordmatch {

struct EstimatorOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
  /// estimate_assignment_probs only: also solve OPT every trial and assert SW <= OPT.
  /// Distortion estimates always check this since they compute OPT anyway.
  bool verify_dominance = false;
};

/// Ratio-of-means distortion estimate with delta-method standard error.
struct EstimateReport {
  double mean_opt = 0.0;
  double mean_sw = 0.0;
  double distortion_estimate = 0.0;
  double stderr_opt = 0.0;
  double stderr_sw = 0.0;
  double stderr_distortion = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct WilsonInterval {
  double lower;
  double upper;
  double half_width() const { return 0.5 * (upper - lower); }
};

/// Wilson score interval; z = 3 throughout the toolkit.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 3.0);

/// Empirical q_it: fraction of trials in which agent i received its t-th ranked item.
struct ProbMatrixReport {
  std::vector<std::vector<double>> q_hat;           // [agent][rank], rank < b_i
  std::vector<std::vector<std::uint64_t>> hits;     // successes behind q_hat
  std::vector<std::vector<WilsonInterval>> interval;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Everything one Monte Carlo trial produces.
struct TrialOutcome {
  ValuationProfile values;
  PreferenceProfile prefs;
  Matching matching;
  double sw;
  double opt;  // NaN when OPT was not requested
};

/// Draws V, derives preferences, runs the mechanism and (optionally) solves OPT,
/// all from `rng`. Throws AssertionFailure if SW > OPT.
TrialOutcome simulate_trial(const PreparedMechanism& mech, const DistributionSpec& dist,
                            RandomStream& rng, bool compute_opt);

/// Trial t uses RandomStream(seed, t); partial sums are reduced in trial order,
/// so reports are bit-identical for any worker count.
EstimateReport estimate_distortion(const MechanismSpec& mech, const DistributionSpec& dist,
                                   const Instance& inst, std::uint64_t trials,
                                   std::uint64_t seed, const EstimatorOptions& options = {});

/// The completion flag of `mech` is ignored (forced off).
ProbMatrixReport estimate_assignment_probs(const MechanismSpec& mech,
                                           const DistributionSpec& dist, const Instance& inst,
                                           std::uint64_t trials, std::uint64_t seed,
                                           const EstimatorOptions& options = {});

/// One-to-one ensemble with Bernoulli(1/n^2) values, measured with RS.
struct BernoulliReplayReport {
  std::size_t n = 0;
  EstimateReport estimate;
  double opt_floor = 0.0;    // 1 - 2/n
  double sw_ceiling = 0.0;   // 1 - 1/e + 2/n
  bool opt_floor_holds = false;   // mean OPT >= floor - 3 se
  bool sw_ceiling_holds = false;  // mean SW <= ceiling + 3 se
};

BernoulliReplayReport run_lb_theorem1(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                               const EstimatorOptions& options = {});

/// SecretaryRS on quotas (m-1, 1) against the two single-agent adversaries.
struct SecretaryReport {
  std::size_t m = 0;
  double agent1_yield = 0.0;  // E|favorites(agent 0) received| / (m-1)
  double agent1_stderr = 0.0;
  double agent2_top = 0.0;    // P(agent 1 receives its top item)
  double agent2_stderr = 0.0;
  double threshold = 0.0;     // (3m-1)/(4m-2)
  double min_value = 0.0;
  double min_stderr = 0.0;
  bool threshold_holds = false;  // min_value <= threshold + 3 se
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Requires m >= 3.
SecretaryReport run_lb_secretary(std::size_t m, std::uint64_t trials, std::uint64_t seed,
                                 const EstimatorOptions& options = {});

struct GapReport {
  EstimateReport estimate;
  double benchmark_lb = 0.0;
  double ratio = 0.0;  // distortion estimate / benchmark lower bound
  double stderr_ratio = 0.0;
};

GapReport gap_report(const MechanismSpec& mech, const Instance& inst,
                     const DistributionSpec& dist, std::uint64_t trials, std::uint64_t seed,
                     const EstimatorOptions& options = {});

}  // namespace ordmatch
