#ifndef AMPSIM_RUN_HPP
#define AMPSIM_RUN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "ampsim/config.hpp"
#include "ampsim/metrics.hpp"
#include "ampsim/recommender.hpp"
#include "ampsim/simulation.hpp"

namespace ampsim {

/// Everything an experiment produces, before serialization.
struct Experiment {
  Catalog catalog;
  UtilityMatrix<double> utilities;
  ConsumptionMatrix consumption;
  BurnInReport burn_in;
  std::uint64_t frozen_checksum = 0;
  std::vector<SimulationResult> results;  // in requested order

  const SimulationResult* result(int simulation) const;
};

/// Builds the utility matrix, runs the burn-in and the requested
/// simulations. Progress lines go to `log` when given.
Experiment run_experiment(const SimulationConfig& config, std::ostream* log = nullptr);

struct RunOutputs {
  std::filesystem::path shares;
  std::optional<std::filesystem::path> baselines;
  std::optional<std::filesystem::path> verdicts;
  std::optional<std::filesystem::path> consumption;
  std::filesystem::path manifest;
};

void prepare_output_dir(const std::filesystem::path& dir);

/// Serializes a finished experiment into config.output_dir.
RunOutputs write_outputs(const SimulationConfig& config, const Experiment& experiment, double wall_seconds);

/// Runs the experiment and writes shares.csv, baselines.csv and
/// verdicts.json (simulation 2 only), consumption.csv (on request) and
/// manifest.json into config.output_dir. Throws std::runtime_error when
/// the directory cannot be written.
RunOutputs run(const SimulationConfig& config, std::ostream* log = nullptr);

}  // namespace ampsim

#endif  // AMPSIM_RUN_HPP
