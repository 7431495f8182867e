#ifndef AMPSIM_METRICS_HPP
#define AMPSIM_METRICS_HPP

// Aggregation of measurement traces into per-step topic shares, the
// relative-utility baseline of the users behind each trace group, and
// amplification verdicts comparing the two.

#include <optional>
#include <vector>

#include "ampsim/model.hpp"
#include "ampsim/simulation.hpp"

namespace ampsim {

struct ShareRow {
  int simulation;
  std::optional<Topic> start_topic;  // empty for pooled rows
  int step;
  Topic topic;
  double recommended_share;
  double chosen_share;
  Index trials;
};

/// Ordered by start topic, then step, then topic, all in catalog order.
using ShareTable = std::vector<ShareRow>;

struct BaselineRow {
  std::optional<Topic> start_topic;
  Topic topic;
  double relative_utility;
  Index users;
};

using BaselineTable = std::vector<BaselineRow>;

enum class VerdictKind { Amplified, Deamplified };

struct Verdict {
  std::optional<Topic> start_topic;
  Topic topic;
  double mean_chosen_share;
  double baseline;
  double margin;  // mean_chosen_share - baseline
  VerdictKind kind;
  bool tie;
  double standard_error = 0.0;  // Monte Carlo error of mean_chosen_share
};

/// Per (group, step, topic): mean fraction of the slate from the topic and
/// fraction of trials whose choice was from the topic. Groups without traces
/// produce no rows.
ShareTable aggregate_shares(const SimulationResult& result, const Catalog& catalog);

/// Per group: mean relative utility over the users sampled in its traces.
BaselineTable aggregate_baselines(const SimulationResult& result, const UtilityMatrix<double>& m,
                                  const Catalog& catalog);

/// Mean over steps of the chosen share of `topic` under `start_topic`,
/// compared against the baseline. Throws std::out_of_range if either is
/// missing from the tables.
Verdict amplification_verdict(const ShareTable& shares, const BaselineTable& baselines,
                              std::optional<Topic> start_topic, Topic topic);

/// Standard error of the mean per-trial fraction of steps choosing `topic`.
double chosen_share_standard_error(const TraceGroup& group, const Catalog& catalog, Topic topic);

/// All traces of a result folded into one group with no start topic.
SimulationResult pooled(const SimulationResult& result);

/// Verdicts for every (group, topic) pair, followed by the pooled verdict
/// per topic.
std::vector<Verdict> all_verdicts(const SimulationResult& result, const UtilityMatrix<double>& m,
                                  const Catalog& catalog);

}  // namespace ampsim

#endif  // AMPSIM_METRICS_HPP
