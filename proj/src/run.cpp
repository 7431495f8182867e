#include "ampsim/run.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "ampsim/io.hpp"

#ifndef AMPSIM_VERSION
#define AMPSIM_VERSION "unknown"
#endif

namespace ampsim {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << v;
  return s.str();
}

}  // namespace

const SimulationResult* Experiment::result(int simulation) const {
  for (const SimulationResult& r : results)
    if (r.simulation == simulation) return &r;
  return nullptr;
}

Experiment run_experiment(const SimulationConfig& config, std::ostream* log) {
  validate(config);
  const RecommenderParams rec{config.slate_size, config.neighbors};
  Experiment e{config.catalog(), build_utility_matrix<double>(config.num_users, config.catalog()),
               ConsumptionMatrix(config.num_users, config.num_items), {}, 0, {}};

  if (log) *log << "burn-in: " << config.num_users << " users, lambda " << config.lambda << '\n';
  Rng burn_rng = make_stream(config.master_seed, 0, 0, 0);
  e.burn_in = run_burn_in(e.consumption, e.utilities, config.lambda, rec, burn_rng);
  e.frozen_checksum = e.consumption.checksum();
  if (log) *log << "burn-in: " << e.burn_in.rounds << " rounds\n";

  const MeasurementParams mp{rec, config.steps, config.trials, config.master_seed, config.threads};
  for (int which : {1, 2}) {
    if (!config.runs(which)) continue;
    if (log) *log << "simulation " << which << ": " << config.trials << " trials x " << config.steps << " steps\n";
    e.results.push_back(run_simulation(which, e.consumption, e.utilities, e.catalog, mp));
  }
  if (e.consumption.checksum() != e.frozen_checksum)
    throw std::logic_error("consumption matrix changed during measurement");
  return e;
}

RunOutputs run(const SimulationConfig& config, std::ostream* log) {
  const auto started = std::chrono::steady_clock::now();
  prepare_output_dir(config.output_dir);
  const Experiment e = run_experiment(config, log);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const RunOutputs outputs = write_outputs(config, e, seconds);
  if (log) *log << "wrote " << config.output_dir.string() << " in " << seconds << " s\n";
  return outputs;
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

RunOutputs write_outputs(const SimulationConfig& config, const Experiment& e, double wall_seconds) {
  prepare_output_dir(config.output_dir);
  RunOutputs outputs;

  outputs.shares = config.output_dir / "shares.csv";
  {
    auto out = open_output(outputs.shares);
    bool header = true;
    for (const SimulationResult& r : e.results) {
      write_shares_csv(out, aggregate_shares(r, e.catalog), header);
      header = false;
    }
    close_output(out, outputs.shares);
  }

  if (const SimulationResult* sim2 = e.result(2)) {
    outputs.baselines = config.output_dir / "baselines.csv";
    auto out = open_output(*outputs.baselines);
    write_baselines_csv(out, aggregate_baselines(*sim2, e.utilities, e.catalog));
    close_output(out, *outputs.baselines);

    outputs.verdicts = config.output_dir / "verdicts.json";
    auto vout = open_output(*outputs.verdicts);
    write_verdicts_json(vout, all_verdicts(*sim2, e.utilities, e.catalog));
    close_output(vout, *outputs.verdicts);
  }

  if (config.dump_consumption) {
    outputs.consumption = config.output_dir / "consumption.csv";
    auto out = open_output(*outputs.consumption);
    write_consumption_csv(out, e.consumption);
    close_output(out, *outputs.consumption);
  }

  nlohmann::json files = nlohmann::json::array({outputs.shares.filename().string()});
  for (const auto& p : {outputs.baselines, outputs.verdicts, outputs.consumption})
    if (p) files.push_back(p->filename().string());
  const nlohmann::json manifest = {
      {"version", AMPSIM_VERSION},
      {"config", config_to_json(config)},
      {"master_seed", config.master_seed},
      {"wall_time_seconds", wall_seconds},
      {"burn_in", {{"rounds", e.burn_in.rounds},
                   {"consumed", e.consumption.total_consumed()},
                   {"checksum", hex64(e.frozen_checksum)}}},
      {"outputs", files}};
  outputs.manifest = config.output_dir / "manifest.json";
  auto out = open_output(outputs.manifest);
  out << manifest.dump(2) << '\n';
  close_output(out, outputs.manifest);
  return outputs;
}

}  // namespace ampsim
