#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

void add_overrides(CLI::App* cmd, ordmatch::cli::Overrides& o) {
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per cell");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--output,-o", o.output, "Output CSV path ('-' for stdout)");
  cmd->add_flag("--complete,!--no-complete", o.complete, "Complete matchings before scoring");
}

}  // namespace

int main(int argc, char** argv) {
  namespace oc = ordmatch::cli;
  CLI::App app{"ordmatch: ordinal b-matching mechanisms, analytics and Monte Carlo estimation"};
  app.require_subcommand(1);

  std::string config_path;
  oc::Overrides overrides;

  auto* run = app.add_subcommand("run", "Estimate distortion for every configured cell");
  run->add_option("config", config_path, "JSON experiment config")->required();
  add_overrides(run, overrides);

  auto* probs = app.add_subcommand("probs", "Estimate per-rank assignment probabilities");
  probs->add_option("config", config_path, "JSON experiment config")->required();
  add_overrides(probs, overrides);

  std::size_t points = 1000;
  std::string curve_out = "-";
  auto* curve = app.add_subcommand("curve", "Write the distortion-gap curve as CSV");
  curve->add_option("--points,-n", points, "Grid size N (x = k/N)");
  curve->add_option("--out,-o", curve_out, "Output CSV path ('-' for stdout)");

  std::size_t max_m = 7;
  std::size_t cases = 200;
  std::uint64_t check_seed = 1;
  auto* optcheck = app.add_subcommand("optcheck", "Compare the assignment solver with brute force");
  optcheck->add_option("--max-m", max_m, "Largest item count (at most 8)");
  optcheck->add_option("--cases", cases, "Number of random instances");
  optcheck->add_option("--seed", check_seed, "Seed for instance generation");

  double alpha = 0.001;
  auto* ufaudit = app.add_subcommand("ufaudit", "Chi-square audit of favorite-bundle uniformity");
  ufaudit->add_option("config", config_path, "JSON experiment config")->required();
  ufaudit->add_option("--alpha", alpha, "Rejection level");
  add_overrides(ufaudit, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? oc::kExitOk : oc::kExitUsage;
  }

  if (*run) return oc::cmd_run(config_path, overrides, std::cout, std::cerr);
  if (*probs) return oc::cmd_probs(config_path, overrides, std::cout, std::cerr);
  if (*curve) return oc::cmd_curve(points, curve_out, std::cout, std::cerr);
  if (*optcheck) return oc::cmd_optcheck(max_m, cases, check_seed, std::cout, std::cerr);
  return oc::cmd_ufaudit(config_path, overrides, alpha, std::cout, std::cerr);
}
