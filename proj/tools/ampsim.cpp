// Command-line driver: load a config, apply flag overrides, run, write results.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ampsim/config.hpp"
#include "ampsim/run.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based simulation of users interacting with a collaborative-filtering recommender"};
  std::optional<std::string> config_path, seed, sim, threads, out_dir;
  std::optional<int> trials, steps;
  bool dump = false, quiet = false;
  app.add_option("--config", config_path, "JSON configuration file (defaults apply when omitted)");
  app.add_option("--seed", seed, "Master seed (overrides AMPSIM_SEED and the config)");
  app.add_option("--sim", sim, "Simulations to run")->check(CLI::IsMember({"1", "2", "all"}));
  app.add_option("--trials", trials, "Measurement trials per start condition")->check(CLI::PositiveNumber);
  app.add_option("--steps", steps, "Measurement steps per trial")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--dump-consumption", dump, "Also write the post-burn-in consumption matrix");
  app.add_option("--threads", threads, "Worker threads for measurement, or 'auto'");
  app.add_flag("--quiet", quiet, "No progress output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  ampsim::SimulationConfig config;
  try {
    config = ampsim::load_config(config_path ? std::optional<std::filesystem::path>(*config_path) : std::nullopt);
    if (const char* env = std::getenv("AMPSIM_SEED"); env && *env)
      config.master_seed = ampsim::parse_seed(env, "AMPSIM_SEED");
    if (seed) config.master_seed = ampsim::parse_seed(*seed, "--seed");
    if (sim) config.which_simulations = *sim == "all" ? std::vector<int>{1, 2} : std::vector<int>{std::stoi(*sim)};
    if (trials) config.trials = *trials;
    if (steps) config.steps = *steps;
    if (out_dir) config.output_dir = *out_dir;
    if (dump) config.dump_consumption = true;
    if (threads) {
      if (*threads == "auto") {
        config.threads = 0;
      } else {
        const auto n = ampsim::parse_seed(*threads, "--threads");
        if (n == 0) throw ampsim::ConfigError("--threads", "must be positive or 'auto'");
        config.threads = static_cast<unsigned>(n);
      }
    }
    ampsim::validate(config);
  } catch (const ampsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    ampsim::run(config, quiet ? nullptr : &std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
