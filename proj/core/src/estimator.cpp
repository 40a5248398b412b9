#include "ordmatch/estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "ordmatch/analytics.hpp"
#include "ordmatch/errors.hpp"
#include "ordmatch/numeric.hpp"
#include "ordmatch/opt.hpp"
#include "parallel.hpp"

namespace ordmatch {
namespace {

struct Moments {
  CompensatedSum x, y, xx, yy, xy;

  void add(double a, double b) {
    x.add(a);
    y.add(b);
    xx.add(a * a);
    yy.add(b * b);
    xy.add(a * b);
  }
  void merge(const Moments& o) {
    x.merge(o.x);
    y.merge(o.y);
    xx.merge(o.xx);
    yy.merge(o.yy);
    xy.merge(o.xy);
  }
};

struct SampleStats {
  double mean_x, mean_y, var_x, var_y, cov_xy;
};

SampleStats summarize(const Moments& mo, std::uint64_t trials) {
  const double n = static_cast<double>(trials);
  const double mx = mo.x.value() / n;
  const double my = mo.y.value() / n;
  SampleStats s{mx, my, 0.0, 0.0, 0.0};
  if (trials > 1) {
    s.var_x = std::max(0.0, (mo.xx.value() - n * mx * mx) / (n - 1.0));
    s.var_y = std::max(0.0, (mo.yy.value() - n * my * my) / (n - 1.0));
    s.cov_xy = (mo.xy.value() - n * mx * my) / (n - 1.0);
  }
  return s;
}

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
}

// Mean and standard error of f(rng) over trials, trial t drawing from
// RandomStream(seed, stream_offset + t).
template <class F>
std::pair<double, double> mean_over_trials(std::uint64_t trials, std::uint64_t seed,
                                           std::uint64_t stream_offset, std::size_t threads,
                                           F f) {
  const auto partials = detail::run_chunks<Moments>(
      trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
        Moments mo;
        for (std::uint64_t t = begin; t < end; ++t) {
          RandomStream rng(seed, stream_offset + t);
          mo.add(f(rng), 0.0);
        }
        return mo;
      });
  Moments total;
  for (const auto& p : partials) total.merge(p);
  const auto s = summarize(total, trials);
  return {s.mean_x, std::sqrt(s.var_x / static_cast<double>(trials))};
}

}  // namespace

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // At the extremes the bound is exactly 0 or 1; rounding would leave ~1e-17.
  const double lower = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double upper = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lower, upper};
}

TrialOutcome simulate_trial(const PreparedMechanism& mech, const DistributionSpec& dist,
                            RandomStream& rng, bool compute_opt) {
  const Instance& inst = mech.instance();
  auto values = sample_profile(dist, inst, rng);
  auto prefs = derive_preferences(inst, values, rng);
  auto matching = mech.run(prefs, rng);
  const double sw = social_welfare(matching, values);
  double opt = std::numeric_limits<double>::quiet_NaN();
  if (compute_opt) {
    opt = optimal_matching(inst, values).value;
    if (sw > opt) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "mechanism " << mechanism_name(mech.spec()) << " produced SW " << sw
          << " above OPT " << opt << " (seed " << rng.seed() << ", trial " << rng.stream_id()
          << ")";
      throw AssertionFailure(msg.str());
    }
  }
  return {std::move(values), std::move(prefs), std::move(matching), sw, opt};
}

EstimateReport estimate_distortion(const MechanismSpec& mech, const DistributionSpec& dist,
                                   const Instance& inst, std::uint64_t trials,
                                   std::uint64_t seed, const EstimatorOptions& options) {
  require_trials(trials);
  validate(dist, inst);
  const PreparedMechanism prepared(mech, inst);

  const auto partials = detail::run_chunks<Moments>(
      trials, options.threads, [&](std::uint64_t begin, std::uint64_t end) {
        Moments mo;
        for (std::uint64_t t = begin; t < end; ++t) {
          RandomStream rng(seed, t);
          const auto outcome = simulate_trial(prepared, dist, rng, true);
          mo.add(outcome.opt, outcome.sw);
        }
        return mo;
      });
  Moments total;
  for (const auto& p : partials) total.merge(p);
  const auto s = summarize(total, trials);
  const double n = static_cast<double>(trials);

  EstimateReport report;
  report.trials = trials;
  report.seed = seed;
  report.mean_opt = s.mean_x;
  report.mean_sw = s.mean_y;
  report.stderr_opt = std::sqrt(s.var_x / n);
  report.stderr_sw = std::sqrt(s.var_y / n);
  if (s.mean_y > 0.0) {
    const double r = s.mean_x / s.mean_y;
    report.distortion_estimate = r;
    const double var_r = (s.var_x - 2.0 * r * s.cov_xy + r * r * s.var_y) / (n * s.mean_y * s.mean_y);
    report.stderr_distortion = std::sqrt(std::max(0.0, var_r));
  } else {
    // No welfare anywhere: distortion is 1 if OPT is zero too, unbounded otherwise.
    report.distortion_estimate =
        s.mean_x > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  return report;
}

ProbMatrixReport estimate_assignment_probs(const MechanismSpec& mech,
                                           const DistributionSpec& dist, const Instance& inst,
                                           std::uint64_t trials, std::uint64_t seed,
                                           const EstimatorOptions& options) {
  require_trials(trials);
  validate(dist, inst);
  MechanismSpec uncompleted = mech;
  uncompleted.complete = false;
  const PreparedMechanism prepared(uncompleted, inst);
  const std::size_t n = inst.num_agents();

  // Flat [agent][rank] counters, rank < b_i.
  std::vector<std::size_t> offset(n + 1, 0);
  for (AgentIndex i = 0; i < n; ++i) offset[i + 1] = offset[i] + inst.quota(i);

  using Counts = std::vector<std::uint64_t>;
  const auto partials = detail::run_chunks<Counts>(
      trials, options.threads, [&](std::uint64_t begin, std::uint64_t end) {
        Counts counts(offset[n], 0);
        for (std::uint64_t t = begin; t < end; ++t) {
          RandomStream rng(seed, t);
          const auto outcome = simulate_trial(prepared, dist, rng, options.verify_dominance);
          for (AgentIndex i = 0; i < n; ++i) {
            const auto fav = outcome.prefs.favorites(i);
            for (std::size_t r = 0; r < fav.size(); ++r) {
              if (outcome.matching.is_assigned_to(fav[r], i)) ++counts[offset[i] + r];
            }
          }
        }
        return counts;
      });

  Counts total(offset[n], 0);
  for (const auto& p : partials) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += p[k];
  }

  ProbMatrixReport report;
  report.trials = trials;
  report.seed = seed;
  report.q_hat.resize(n);
  report.hits.resize(n);
  report.interval.resize(n);
  for (AgentIndex i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < inst.quota(i); ++r) {
      const auto hits = total[offset[i] + r];
      report.hits[i].push_back(hits);
      report.q_hat[i].push_back(static_cast<double>(hits) / static_cast<double>(trials));
      report.interval[i].push_back(wilson_interval(hits, trials));
    }
  }
  return report;
}

BernoulliReplayReport run_lb_theorem1(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                               const EstimatorOptions& options) {
  if (n == 0) throw std::invalid_argument("run_lb_theorem1: n must be positive");
  BernoulliReplayReport report;
  report.n = n;
  report.estimate = estimate_distortion({RandomSurvivors{}}, LowerBoundBernoulli{},
                                        Instance::one_to_one(n), trials, seed, options);
  const double dn = static_cast<double>(n);
  report.opt_floor = 1.0 - 2.0 / dn;
  report.sw_ceiling = 1.0 - 1.0 / std::numbers::e + 2.0 / dn;
  report.opt_floor_holds =
      report.estimate.mean_opt >= report.opt_floor - 3.0 * report.estimate.stderr_opt;
  report.sw_ceiling_holds =
      report.estimate.mean_sw <= report.sw_ceiling + 3.0 * report.estimate.stderr_sw;
  return report;
}

SecretaryReport run_lb_secretary(std::size_t m, std::uint64_t trials, std::uint64_t seed,
                                 const EstimatorOptions& options) {
  if (m < 3) throw std::invalid_argument("run_lb_secretary: m must be at least 3");
  require_trials(trials);
  const Instance inst({m - 1, 1});
  const PreparedMechanism mech({SecretaryRandomSurvivors{}}, inst);

  SecretaryReport report;
  report.m = m;
  report.trials = trials;
  report.seed = seed;

  const DistributionSpec first_agent = SingleAgentAdversarial{0, false};
  std::tie(report.agent1_yield, report.agent1_stderr) =
      mean_over_trials(trials, seed, 0, options.threads, [&](RandomStream& rng) {
        const auto out = simulate_trial(mech, first_agent, rng, options.verify_dominance);
        std::size_t got = 0;
        for (ItemIndex g : out.prefs.favorites(0)) got += out.matching.is_assigned_to(g, 0);
        return static_cast<double>(got) / static_cast<double>(m - 1);
      });

  const DistributionSpec second_agent = SingleAgentAdversarial{1, false};
  std::tie(report.agent2_top, report.agent2_stderr) =
      mean_over_trials(trials, seed, trials, options.threads, [&](RandomStream& rng) {
        const auto out = simulate_trial(mech, second_agent, rng, options.verify_dominance);
        return out.matching.is_assigned_to(out.prefs.ranking(1)[0], 1) ? 1.0 : 0.0;
      });

  const double dm = static_cast<double>(m);
  report.threshold = (3.0 * dm - 1.0) / (4.0 * dm - 2.0);
  if (report.agent1_yield <= report.agent2_top) {
    report.min_value = report.agent1_yield;
    report.min_stderr = report.agent1_stderr;
  } else {
    report.min_value = report.agent2_top;
    report.min_stderr = report.agent2_stderr;
  }
  report.threshold_holds = report.min_value <= report.threshold + 3.0 * report.min_stderr;
  return report;
}

GapReport gap_report(const MechanismSpec& mech, const Instance& inst,
                     const DistributionSpec& dist, std::uint64_t trials, std::uint64_t seed,
                     const EstimatorOptions& options) {
  GapReport report;
  report.estimate = estimate_distortion(mech, dist, inst, trials, seed, options);
  report.benchmark_lb = analytics::benchmark_lower_bound(inst);
  report.ratio = report.estimate.distortion_estimate / report.benchmark_lb;
  report.stderr_ratio = report.estimate.stderr_distortion / report.benchmark_lb;
  return report;
}

}  // namespace ordmatch
