#ifndef AMPSIM_CONFIG_HPP
#define AMPSIM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ampsim/model.hpp"

namespace ampsim {

/// Invalid configuration. `field()` is a JSON-style path such as
/// "topics[2].alpha".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SimulationConfig {
  Index num_users = 600;
  Index num_items = 600;
  std::vector<TopicSpec> topics = default_catalog().topics();
  double lambda = 60.0;
  Index slate_size = 20;
  Index neighbors = 10;
  int steps = 20;
  int trials = 500;
  std::uint64_t master_seed = 42;
  std::vector<int> which_simulations = {1, 2};
  std::filesystem::path output_dir = "results";
  bool dump_consumption = false;
  unsigned threads = 0;  // 0 = one per hardware thread

  Catalog catalog() const { return Catalog(topics); }
  bool runs(int simulation) const;
};

/// Throws ConfigError on the first violated constraint.
void validate(const SimulationConfig& config);

/// Missing keys keep their defaults; unknown keys are rejected.
SimulationConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const SimulationConfig& config);

/// Defaults when `path` is empty, otherwise the parsed and validated file.
SimulationConfig load_config(const std::optional<std::filesystem::path>& path = std::nullopt);

/// Parses a seed given as a decimal string (e.g. from AMPSIM_SEED).
std::uint64_t parse_seed(const std::string& text, const std::string& field);

}  // namespace ampsim

#endif  // AMPSIM_CONFIG_HPP
