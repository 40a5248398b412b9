#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ordmatch/analytics.hpp"
#include "ordmatch/errors.hpp"
#include "ordmatch/estimator.hpp"
#include "ordmatch/opt.hpp"

namespace ordmatch::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError("config field " + (path.empty() ? std::string("/") : path) + ": " + message);
}

void check_keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) fail(path + "/" + key, "unknown field");
  }
}

const json* find(const json& obj, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (auto it = obj.find(k); it != obj.end()) return &*it;
  }
  return nullptr;
}

std::uint64_t as_uint(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const json& required(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "/" + key, "missing required field");
  return *it;
}

// Accepts either a single value under `single` or an array under `plural`.
std::vector<std::pair<const json*, std::string>> one_or_many(const json& root, const char* single,
                                                             const char* plural) {
  std::vector<std::pair<const json*, std::string>> out;
  const bool has_single = root.contains(single);
  const bool has_plural = root.contains(plural);
  if (has_single && has_plural) {
    fail("/" + std::string(plural), std::string("give either '") + single + "' or '" + plural +
                                        "', not both");
  }
  if (has_single) {
    out.emplace_back(&root.at(single), "/" + std::string(single));
  } else if (has_plural) {
    const json& arr = root.at(plural);
    const std::string path = "/" + std::string(plural);
    if (!arr.is_array() || arr.empty()) fail(path, "expected a non-empty array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      out.emplace_back(&arr[k], path + "/" + std::to_string(k));
    }
  } else {
    fail("/" + std::string(plural), "missing required field");
  }
  return out;
}

std::vector<std::size_t> uniform_quotas(std::size_t n, std::size_t m) {
  std::vector<std::size_t> q(n, m / n);
  for (std::size_t i = 0; i < m % n; ++i) ++q[i];
  return q;
}

Instance parse_instance(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"quotas", "generator", "n", "m", "ratio", "top"});
  try {
    if (const json* q = find(j, {"quotas"})) {
      if (j.contains("generator")) fail(path, "give either 'quotas' or 'generator'");
      if (!q->is_array() || q->empty()) fail(path + "/quotas", "expected a non-empty array");
      std::vector<std::size_t> quotas;
      for (std::size_t k = 0; k < q->size(); ++k) {
        const auto b = as_uint((*q)[k], path + "/quotas/" + std::to_string(k));
        if (b == 0) fail(path + "/quotas/" + std::to_string(k), "quotas must be positive");
        quotas.push_back(b);
      }
      return Instance(std::move(quotas));
    }

    std::string generator = as_string(required(j, "generator", path), path + "/generator");
    const auto n = as_uint(required(j, "n", path), path + "/n");
    if (n == 0) fail(path + "/n", "n must be positive");

    std::optional<double> ratio;
    if (generator.starts_with("geometric-quotas(") && generator.ends_with(")")) {
      const std::string inner = generator.substr(17, generator.size() - 18);
      try {
        std::size_t used = 0;
        ratio = std::stod(inner, &used);
        if (used != inner.size()) throw std::invalid_argument(inner);
      } catch (const std::exception&) {
        fail(path + "/generator", "cannot read ratio from '" + generator + "'");
      }
      generator = "geometric-quotas";
    }

    if (generator == "uniform-quotas") {
      const std::uint64_t m = j.contains("m") ? as_uint(j.at("m"), path + "/m") : n;
      if (m < n) fail(path + "/m", "m must be at least n");
      return Instance(uniform_quotas(n, m));
    }
    if (generator == "geometric-quotas") {
      if (j.contains("ratio")) {
        if (ratio) fail(path + "/ratio", "ratio given twice");
        ratio = as_double(j.at("ratio"), path + "/ratio");
      }
      if (!ratio) fail(path + "/ratio", "geometric-quotas needs a ratio");
      if (!(*ratio > 0.0 && *ratio <= 1.0)) fail(path + "/ratio", "ratio must lie in (0, 1]");
      const double top = j.contains("top")
                             ? static_cast<double>(as_uint(j.at("top"), path + "/top"))
                             : std::round(std::pow(*ratio, -static_cast<double>(n - 1)));
      if (!(top >= 1.0 && top <= 1e6)) fail(path + "/top", "top quota must lie in [1, 1e6]");
      std::vector<std::size_t> quotas(n);
      for (std::size_t i = 0; i < n; ++i) {
        quotas[i] = static_cast<std::size_t>(
            std::max(1.0, std::round(top * std::pow(*ratio, static_cast<double>(i)))));
      }
      return Instance(std::move(quotas));
    }
    fail(path + "/generator", "unknown generator '" + generator +
                                  "' (expected uniform-quotas, geometric-quotas)");
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

DistributionSpec parse_distribution(const json& j, const std::string& path) {
  const json obj = j.is_string() ? json{{"name", j}} : j;
  if (!obj.is_object()) fail(path, "expected a name or an object");
  const std::string name = as_string(required(obj, "name", path), path + "/name");
  if (name == "iid-uniform") {
    check_keys(obj, path, {"name"});
    return IidUniform01{};
  }
  if (name == "iid-bernoulli") {
    check_keys(obj, path, {"name", "p"});
    const double p = as_double(required(obj, "p", path), path + "/p");
    if (p < 0.0 || p > 1.0) fail(path + "/p", "p must lie in [0, 1]");
    return IidBernoulli{p};
  }
  if (name == "lower-bound-bernoulli") {
    check_keys(obj, path, {"name"});
    return LowerBoundBernoulli{};
  }
  if (name == "single-agent-adversarial") {
    check_keys(obj, path, {"name", "agent", "without_replacement"});
    SingleAgentAdversarial d;
    d.agent = as_uint(required(obj, "agent", path), path + "/agent");
    if (obj.contains("without_replacement")) {
      d.without_replacement = as_bool(obj.at("without_replacement"), path + "/without_replacement");
    }
    return d;
  }
  if (name == "exchangeable-permutation") {
    check_keys(obj, path, {"name", "base"});
    const json& base = required(obj, "base", path);
    if (!base.is_array()) fail(path + "/base", "expected an array of values");
    ExchangeablePermutation d;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const double v = as_double(base[k], path + "/base/" + std::to_string(k));
      if (v < 0.0) fail(path + "/base/" + std::to_string(k), "values must be nonnegative");
      d.base.push_back(v);
    }
    return d;
  }
  if (name == "favorite-bundle-uniform") {
    check_keys(obj, path, {"name", "hi", "lo"});
    FavoriteBundleUniform d;
    if (obj.contains("hi")) d.hi = as_double(obj.at("hi"), path + "/hi");
    if (obj.contains("lo")) d.lo = as_double(obj.at("lo"), path + "/lo");
    if (!(d.hi > d.lo && d.lo >= 0.0)) fail(path, "need hi > lo >= 0");
    return d;
  }
  fail(path + "/name", "unknown distribution '" + name + "'");
}

MechanismSpec parse_mechanism(const json& j, const std::string& path) {
  const json obj = j.is_string() ? json{{"name", j}} : j;
  if (!obj.is_object()) fail(path, "expected a name or an object");
  const std::string name = as_string(required(obj, "name", path), path + "/name");
  if (name == "serial-dictator") {
    check_keys(obj, path, {"name", "order"});
    SerialDictator sd;
    if (obj.contains("order")) {
      const json& order = obj.at("order");
      if (!order.is_array()) fail(path + "/order", "expected an array of agent indices");
      for (std::size_t k = 0; k < order.size(); ++k) {
        sd.order.push_back(as_uint(order[k], path + "/order/" + std::to_string(k)));
      }
    }
    return {sd};
  }
  check_keys(obj, path, {"name"});
  if (name == "rs") return {RandomSurvivors{}};
  if (name == "rsbs") return {RandomSurvivorsBurnSteal{}};
  if (name == "hql") return {HighestQuotaLast{}};
  if (name == "secretary-rs") return {SecretaryRandomSurvivors{}};
  fail(path + "/name", "unknown mechanism '" + name +
                           "' (expected rs, rsbs, hql, secretary-rs, serial-dictator)");
}

// An empty serial-dictator order means "agents in index order" for whatever
// instance the mechanism is paired with.
MechanismSpec bind_to_instance(MechanismSpec spec, const Instance& inst, bool complete) {
  if (auto* sd = std::get_if<SerialDictator>(&spec.variant); sd && sd->order.empty()) {
    sd->order.resize(inst.num_agents());
    std::iota(sd->order.begin(), sd->order.end(), 0);
  }
  spec.complete = complete;
  return spec;
}

std::string join_quotas(const Instance& inst) {
  std::string s;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    if (i) s += ';';
    s += std::to_string(inst.quota(i));
  }
  return s;
}

std::optional<double> exact_q(const MechanismSpec& spec, const Instance& inst, AgentIndex i) {
  if (std::holds_alternative<RandomSurvivors>(spec.variant) ||
      std::holds_alternative<SecretaryRandomSurvivors>(spec.variant)) {
    return analytics::rs_q_exact(inst, i);
  }
  if (std::holds_alternative<RandomSurvivorsBurnSteal>(spec.variant)) {
    return analytics::rsbs_q_exact(inst);
  }
  if (std::holds_alternative<HighestQuotaLast>(spec.variant)) return analytics::hql_q(inst);
  return std::nullopt;
}

// Resolves "-" to `fallback`, otherwise opens a file.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path == "-" || path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::string sibling_path(const std::string& output, const std::string& suffix) {
  if (output == "-" || output.empty()) return "ordmatch" + suffix;
  return output + suffix;
}

void write_probs_rows(std::ostream& os, const ProbMatrixReport& report, const MechanismSpec& mech,
                      const Instance& inst, const std::string& prefix) {
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    const auto exact = exact_q(mech, inst, i);
    for (std::size_t r = 0; r < report.q_hat[i].size(); ++r) {
      os << prefix << i << ',' << r + 1 << ',' << format_number(report.q_hat[i][r]) << ','
         << format_number(report.interval[i][r].half_width()) << ','
         << (exact ? format_number(*exact) : std::string()) << '\n';
    }
  }
}

void write_curve(std::ostream& os, std::size_t points) {
  os << "x,bound\n";
  analytics::GapCurvePoint best{0.0, -1.0};
  for (std::size_t k = 1; k <= points; ++k) {
    const auto p = analytics::distortion_gap_curve(k, points);
    if (p.bound > best.bound) best = p;
    os << format_number(p.x) << ',' << format_number(p.bound) << '\n';
  }
  os << "# max," << format_number(best.x) << ',' << format_number(best.bound) << '\n';
}

template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

ExperimentConfig load_with_overrides(const std::string& path, const Overrides& overrides) {
  ExperimentConfig config = load_config(path);
  apply_overrides(config, overrides);
  return config;
}

void validate_cells(const ExperimentConfig& config) {
  for (std::size_t a = 0; a < config.instances.size(); ++a) {
    for (std::size_t d = 0; d < config.distributions.size(); ++d) {
      try {
        validate(config.distributions[d], config.instances[a]);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("config field /distributions/" + std::to_string(d) + " on instance " +
                          std::to_string(a) + ": " + e.what());
      }
    }
    for (std::size_t k = 0; k < config.mechanisms.size(); ++k) {
      try {
        PreparedMechanism(bind_to_instance(config.mechanisms[k], config.instances[a], false),
                          config.instances[a]);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("config field /mechanisms/" + std::to_string(k) + " on instance " +
                          std::to_string(a) + ": " + e.what());
      }
    }
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!root.is_object()) fail("", "top level must be a JSON object");
  check_keys(root, "",
             {"instance", "instances", "distribution", "distributions", "mechanism",
              "mechanisms", "trials", "seed", "output", "complete", "emit_probs", "emit-probs",
              "emit_curve", "emit-curve", "curve_points", "curve-points"});

  ExperimentConfig config;
  for (const auto& [j, path] : one_or_many(root, "instance", "instances")) {
    config.instances.push_back(parse_instance(*j, path));
  }
  for (const auto& [j, path] : one_or_many(root, "distribution", "distributions")) {
    config.distributions.push_back(parse_distribution(*j, path));
  }
  for (const auto& [j, path] : one_or_many(root, "mechanism", "mechanisms")) {
    config.mechanisms.push_back(parse_mechanism(*j, path));
  }
  if (root.contains("trials")) {
    config.trials = as_uint(root.at("trials"), "/trials");
    if (config.trials == 0) fail("/trials", "trials must be positive");
  }
  if (root.contains("seed")) config.seed = as_uint(root.at("seed"), "/seed");
  if (root.contains("output")) config.output = as_string(root.at("output"), "/output");
  if (root.contains("complete")) config.complete = as_bool(root.at("complete"), "/complete");
  if (const json* j = find(root, {"emit_probs", "emit-probs"})) {
    config.emit_probs = as_bool(*j, "/emit_probs");
  }
  if (const json* j = find(root, {"emit_curve", "emit-curve"})) {
    config.emit_curve = as_bool(*j, "/emit_curve");
  }
  if (const json* j = find(root, {"curve_points", "curve-points"})) {
    config.curve_points = as_uint(*j, "/curve_points");
    if (config.curve_points < 2) fail("/curve_points", "need at least 2 points");
  }
  validate_cells(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void apply_overrides(ExperimentConfig& config, const Overrides& overrides) {
  if (overrides.trials) {
    if (*overrides.trials == 0) throw ConfigError("--trials must be positive");
    config.trials = *overrides.trials;
  }
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.output) config.output = *overrides.output;
  if (overrides.complete) config.complete = *overrides.complete;
}

std::size_t threads_from_env() {
  const char* raw = std::getenv("ORDMATCH_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw ConfigError("ORDMATCH_THREADS must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = load_with_overrides(config_path, overrides);
    EstimatorOptions options;
    options.threads = threads_from_env();

    OutputTarget target(config.output, out);
    std::ostream& os = target.stream();
    os << "n,m,quotas,mechanism,distribution,trials,seed,mean_opt,mean_sw,distortion,stderr,"
          "benchmark_lb,gap_ratio\n";

    std::optional<OutputTarget> probs;
    if (config.emit_probs) {
      probs.emplace(sibling_path(config.output, ".probs.csv"), out);
      probs->stream() << "quotas,mechanism,distribution,agent,rank,q_hat,ci_half_width,q_exact\n";
    }

    for (const auto& inst : config.instances) {
      for (const auto& mech_template : config.mechanisms) {
        const MechanismSpec mech = bind_to_instance(mech_template, inst, config.complete);
        for (const auto& dist : config.distributions) {
          const auto gap = gap_report(mech, inst, dist, config.trials, config.seed, options);
          const auto& est = gap.estimate;
          os << inst.num_agents() << ',' << inst.num_items() << ',' << join_quotas(inst) << ','
             << mechanism_name(mech) << ',' << distribution_name(dist) << ',' << est.trials << ','
             << est.seed << ',' << format_number(est.mean_opt) << ','
             << format_number(est.mean_sw) << ',' << format_number(est.distortion_estimate)
             << ',' << format_number(est.stderr_distortion) << ','
             << format_number(gap.benchmark_lb) << ',' << format_number(gap.ratio) << '\n';
          if (probs) {
            const auto report =
                estimate_assignment_probs(mech, dist, inst, config.trials, config.seed, options);
            write_probs_rows(probs->stream(), report, mech, inst,
                             join_quotas(inst) + ',' + mechanism_name(mech) + ',' +
                                 distribution_name(dist) + ',');
          }
        }
      }
    }
    if (config.emit_curve) {
      OutputTarget curve(sibling_path(config.output, ".curve.csv"), out);
      write_curve(curve.stream(), config.curve_points);
    }
    return kExitOk;
  });
}

int cmd_probs(const std::string& config_path, const Overrides& overrides, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = load_with_overrides(config_path, overrides);
    if (config.instances.size() != 1 || config.mechanisms.size() != 1 ||
        config.distributions.size() != 1) {
      throw ConfigError("probs expects exactly one instance, one mechanism and one distribution");
    }
    EstimatorOptions options;
    options.threads = threads_from_env();
    const Instance& inst = config.instances.front();
    const MechanismSpec mech = bind_to_instance(config.mechanisms.front(), inst, false);
    const auto report = estimate_assignment_probs(mech, config.distributions.front(), inst,
                                                  config.trials, config.seed, options);
    OutputTarget target(config.output, out);
    target.stream() << "agent,rank,q_hat,ci_half_width,q_exact\n";
    write_probs_rows(target.stream(), report, mech, inst, "");
    return kExitOk;
  });
}

int cmd_curve(std::size_t points, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    if (points < 2) throw ConfigError("--points must be at least 2");
    OutputTarget target(out_path, out);
    write_curve(target.stream(), points);
    return kExitOk;
  });
}

int cmd_optcheck(std::size_t max_m, std::size_t cases, std::uint64_t seed, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    if (max_m == 0 || max_m > kBruteForceMaxItems) {
      throw ConfigError("--max-m must lie in [1, " + std::to_string(kBruteForceMaxItems) + "]");
    }
    for (std::size_t c = 0; c < cases; ++c) {
      RandomStream rng(seed, c);
      const std::size_t m = 1 + rng.uniform_index(max_m);
      const std::size_t n = 1 + rng.uniform_index(m);
      // Random composition of m into n positive parts.
      std::vector<std::size_t> cuts(m - 1);
      std::iota(cuts.begin(), cuts.end(), 1);
      for (std::size_t a = 0; a + 1 < n; ++a) {
        std::swap(cuts[a], cuts[a + rng.uniform_index(cuts.size() - a)]);
      }
      std::vector<std::size_t> chosen(cuts.begin(), cuts.begin() + static_cast<long>(n - 1));
      std::sort(chosen.begin(), chosen.end());
      std::vector<std::size_t> quotas;
      std::size_t prev = 0;
      for (std::size_t cut : chosen) {
        quotas.push_back(cut - prev);
        prev = cut;
      }
      quotas.push_back(m - prev);
      const Instance inst(quotas);

      // Mix of zeros, exact ties and continuous values.
      std::vector<double> flat(n * m);
      for (double& v : flat) {
        const double u = rng.uniform01();
        v = u < 0.3 ? 0.0 : (u < 0.4 ? 1.0 : rng.uniform01());
      }
      const ValuationProfile values(n, m, flat);
      const double fast = optimal_matching(inst, values).value;
      const double slow = brute_force_opt(inst, values);
      if (std::fabs(fast - slow) > 1e-9) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "case " << c << " (seed " << seed << "): quotas ["
            << join_quotas(inst) << "] values [";
        for (std::size_t k = 0; k < flat.size(); ++k) msg << (k ? "," : "") << flat[k];
        msg << "] optimal_matching=" << fast << " brute_force_opt=" << slow;
        throw AssertionFailure(msg.str());
      }
    }
    out << "optcheck: " << cases << " cases agree (max m " << max_m << ", seed " << seed
        << ")\n";
    return kExitOk;
  });
}

int cmd_ufaudit(const std::string& config_path, const Overrides& overrides, double alpha,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = load_with_overrides(config_path, overrides);
    OutputTarget target(config.output, out);
    std::ostream& os = target.stream();
    os << "quotas,distribution,agent,bundle,count,frequency,expected_frequency,chi_square,dof,"
          "p_value\n";
    std::size_t rejected = 0;
    for (const auto& inst : config.instances) {
      for (const auto& dist : config.distributions) {
        RandomStream rng(config.seed, 0);
        const auto report = uf_audit(dist, inst, config.trials, rng);
        for (const auto& agent : report.agents) {
          const double expected = 1.0 / static_cast<double>(agent.bundles.size());
          for (std::size_t k = 0; k < agent.bundles.size(); ++k) {
            std::string bundle;
            for (std::size_t g = 0; g < inst.num_items(); ++g) {
              if (agent.bundles[k] >> g & 1u) bundle += (bundle.empty() ? "" : ";") + std::to_string(g);
            }
            os << join_quotas(inst) << ',' << distribution_name(dist) << ',' << agent.agent << ','
               << bundle << ',' << agent.counts[k] << ','
               << format_number(static_cast<double>(agent.counts[k]) /
                                static_cast<double>(report.trials))
               << ',' << format_number(expected) << ',' << format_number(agent.chi_square) << ','
               << agent.degrees_of_freedom << ',' << format_number(agent.p_value) << '\n';
          }
          if (agent.p_value < alpha) {
            ++rejected;
            err << "ufaudit: " << distribution_name(dist) << " on quotas [" << join_quotas(inst)
                << "] agent " << agent.agent << " rejects uniform favorites (p = "
                << format_number(agent.p_value) << ")\n";
          }
        }
      }
    }
    return rejected == 0 ? kExitOk : kExitAssertion;
  });
}

}  // namespace ordmatch::cli
