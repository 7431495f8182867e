#ifndef AMPSIM_SIMULATION_HPP
#define AMPSIM_SIMULATION_HPP

// Interaction protocol: a sequential burn-in that fills the consumption
// matrix, then independent measurement trials in which a sampled user's row
// is replaced by a single seed item and the user interacts for a number of
// steps against the frozen matrix.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ampsim/model.hpp"
#include "ampsim/random.hpp"
#include "ampsim/recommender.hpp"

namespace ampsim {

enum class SelectionPolicy { Random, UtilityInformed };

/// Seed item source for a measurement trial: a fixed topic, or the topic of
/// highest relative utility for the sampled user (when `seed_topic` is empty).
struct StartCondition {
  std::optional<Topic> seed_topic;

  static StartCondition seeded(Topic t) { return {t}; }
  static StartCondition highest_utility() { return {std::nullopt}; }
};

/// Slate size and neighbourhood size.
struct RecommenderParams {
  Index slate_size = 20;
  Index neighbors = 10;
};

struct TrialStep {
  int step;  // 1-based
  std::vector<Index> slate;
  Index chosen;
};

struct TrialTrace {
  Index user = 0;
  Index start_item = 0;
  Topic start_topic = Topic::Center;
  std::vector<TrialStep> steps;
};

struct TraceGroup {
  std::optional<Topic> start_topic;  // empty for a pooled group
  std::vector<TrialTrace> traces;
};

struct SimulationResult {
  int simulation = 1;
  std::vector<TraceGroup> groups;  // catalog order
};

struct BurnInReport {
  std::vector<int> interaction_counts;
  Index rounds = 0;
};

/// One Poisson(lambda) interaction budget per user.
std::vector<int> sample_interaction_counts(Index num_users, double lambda, Rng& rng);

/// Picks one slate item. Random: uniform over the slate. UtilityInformed: proportional to the
/// user's utility for each item, uniform if the slate's total utility is
/// below 1e-300.
Index select_item(const Slate& slate, SelectionPolicy policy, std::span<const double> user_utilities, Rng& rng);

/// Fills `s` (which must be all zeros) by repeatedly picking a user with
/// budget left, uniformly, and letting them make one utility-informed
/// choice from a fresh slate. Users who run out of catalog forfeit the rest
/// of their budget.
BurnInReport run_burn_in(ConsumptionMatrix& s, const UtilityMatrix<double>& m, double lambda,
                         const RecommenderParams& params, Rng& rng);

/// One measurement trial against a frozen matrix. The shared matrix is only
/// read; the sampled user's history lives in a private overlay.
TrialTrace run_measurement_trial(const ConsumptionMatrix& s, const UtilityMatrix<double>& m,
                                 const Catalog& catalog, const StartCondition& condition,
                                 SelectionPolicy policy, int steps, const RecommenderParams& params, Rng& rng);

struct MeasurementParams {
  RecommenderParams recommender;
  int steps = 20;
  int trials = 500;
  std::uint64_t master_seed = 42;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Simulation 1: `trials` random-selection traces per catalog topic seed.
/// Simulation 2: `trials` utility-informed traces started from the user's
/// highest-utility topic, then grouped by that topic.
SimulationResult run_simulation(int which, const ConsumptionMatrix& s, const UtilityMatrix<double>& m,
                                const Catalog& catalog, const MeasurementParams& params);

}  // namespace ampsim

#endif  // AMPSIM_SIMULATION_HPP
