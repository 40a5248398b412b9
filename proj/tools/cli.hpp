#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ordmatch/distributions.hpp"
#include "ordmatch/mechanisms.hpp"
#include "ordmatch/model.hpp"

namespace ordmatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAssertion = 3;

/// Bad config or flags. The message names the byte offset (malformed JSON)
/// or the JSON pointer of the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<Instance> instances;
  std::vector<DistributionSpec> distributions;
  std::vector<MechanismSpec> mechanisms;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string output = "-";  // "-" is stdout
  bool complete = false;
  bool emit_probs = false;
  bool emit_curve = false;
  std::size_t curve_points = 1000;
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<bool> complete;
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);
void apply_overrides(ExperimentConfig& config, const Overrides& overrides);

/// Worker cap from ORDMATCH_THREADS (unset or 0 = auto).
std::size_t threads_from_env();

/// Decimal with 12 significant digits, trailing zeros dropped (printf %.12g).
std::string format_number(double x);

// Each command returns its process exit code. CSV goes to the configured
// output path (or `out` when it is "-"); diagnostics go to `err`.
int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out,
            std::ostream& err);
int cmd_probs(const std::string& config_path, const Overrides& overrides, std::ostream& out,
              std::ostream& err);
int cmd_curve(std::size_t points, const std::string& out_path, std::ostream& out,
              std::ostream& err);
int cmd_optcheck(std::size_t max_m, std::size_t cases, std::uint64_t seed, std::ostream& out,
                 std::ostream& err);
int cmd_ufaudit(const std::string& config_path, const Overrides& overrides, double alpha,
                std::ostream& out, std::ostream& err);

}  // namespace ordmatch::cli
