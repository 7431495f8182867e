#include "ampsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ampsim {

ShareTable aggregate_shares(const SimulationResult& result, const Catalog& catalog) {
  const std::size_t topics = catalog.topic_count();
  ShareTable table;
  for (const TraceGroup& group : result.groups) {
    if (group.traces.empty()) continue;
    std::size_t max_steps = 0;
    for (const TrialTrace& t : group.traces) max_steps = std::max(max_steps, t.steps.size());

    for (std::size_t step = 0; step < max_steps; ++step) {
      std::vector<double> recommended(topics, 0.0);
      std::vector<Index> chosen(topics, 0);
      Index trials = 0;
      for (const TrialTrace& t : group.traces) {
        if (step >= t.steps.size()) continue;
        const TrialStep& s = t.steps[step];
        std::vector<Index> per_topic(topics, 0);
        for (Index item : s.slate) ++per_topic[catalog.position_of_item(item)];
        for (std::size_t q = 0; q < topics; ++q)
          recommended[q] += static_cast<double>(per_topic[q]) / static_cast<double>(s.slate.size());
        ++chosen[catalog.position_of_item(s.chosen)];
        ++trials;
      }
      for (std::size_t q = 0; q < topics; ++q)
        table.push_back({result.simulation, group.start_topic, static_cast<int>(step) + 1,
                         catalog.topics()[q].label, recommended[q] / static_cast<double>(trials),
                         static_cast<double>(chosen[q]) / static_cast<double>(trials), trials});
    }
  }
  return table;
}

BaselineTable aggregate_baselines(const SimulationResult& result, const UtilityMatrix<double>& m,
                                  const Catalog& catalog) {
  BaselineTable table;
  for (const TraceGroup& group : result.groups) {
    if (group.traces.empty()) continue;
    TopicShares<double> sum = TopicShares<double>::Zero(static_cast<Index>(catalog.topic_count()));
    for (const TrialTrace& t : group.traces) sum += relative_utility(m, catalog, t.user);
    const auto users = static_cast<Index>(group.traces.size());
    for (std::size_t q = 0; q < catalog.topic_count(); ++q)
      table.push_back({group.start_topic, catalog.topics()[q].label,
                       sum(static_cast<Index>(q)) / static_cast<double>(users), users});
  }
  return table;
}

Verdict amplification_verdict(const ShareTable& shares, const BaselineTable& baselines,
                              std::optional<Topic> start_topic, Topic topic) {
  const auto base = std::find_if(baselines.begin(), baselines.end(), [&](const BaselineRow& b) {
    return b.start_topic == start_topic && b.topic == topic;
  });
  if (base == baselines.end()) throw std::out_of_range("amplification_verdict: missing baseline");

  double total = 0.0;
  int steps = 0;
  for (const ShareRow& r : shares)
    if (r.start_topic == start_topic && r.topic == topic) {
      total += r.chosen_share;
      ++steps;
    }
  if (steps == 0) throw std::out_of_range("amplification_verdict: missing shares");

  Verdict v{start_topic, topic, total / steps, base->relative_utility, 0.0, VerdictKind::Deamplified, false};
  v.margin = v.mean_chosen_share - v.baseline;
  v.kind = v.margin > 0.0 ? VerdictKind::Amplified : VerdictKind::Deamplified;
  v.tie = v.margin == 0.0;
  return v;
}

double chosen_share_standard_error(const TraceGroup& group, const Catalog& catalog, Topic topic) {
  const auto n = group.traces.size();
  if (n < 2) return 0.0;
  const std::size_t q = catalog.position_of(topic);
  std::vector<double> fractions;
  fractions.reserve(n);
  for (const TrialTrace& t : group.traces) {
    if (t.steps.empty()) continue;
    std::size_t hits = 0;
    for (const TrialStep& s : t.steps) hits += catalog.position_of_item(s.chosen) == q;
    fractions.push_back(static_cast<double>(hits) / static_cast<double>(t.steps.size()));
  }
  if (fractions.size() < 2) return 0.0;
  double mean = 0.0;
  for (double f : fractions) mean += f;
  mean /= static_cast<double>(fractions.size());
  double ss = 0.0;
  for (double f : fractions) ss += (f - mean) * (f - mean);
  const double var = ss / static_cast<double>(fractions.size() - 1);
  return std::sqrt(var / static_cast<double>(fractions.size()));
}

SimulationResult pooled(const SimulationResult& result) {
  SimulationResult out;
  out.simulation = result.simulation;
  TraceGroup all{std::nullopt, {}};
  for (const TraceGroup& g : result.groups)
    all.traces.insert(all.traces.end(), g.traces.begin(), g.traces.end());
  out.groups.push_back(std::move(all));
  return out;
}

std::vector<Verdict> all_verdicts(const SimulationResult& result, const UtilityMatrix<double>& m,
                                  const Catalog& catalog) {
  std::vector<Verdict> out;
  auto append = [&](const SimulationResult& r) {
    const ShareTable shares = aggregate_shares(r, catalog);
    const BaselineTable baselines = aggregate_baselines(r, m, catalog);
    for (const TraceGroup& g : r.groups) {
      if (g.traces.empty()) continue;
      for (const TopicSpec& t : catalog.topics()) {
        Verdict v = amplification_verdict(shares, baselines, g.start_topic, t.label);
        v.standard_error = chosen_share_standard_error(g, catalog, t.label);
        out.push_back(v);
      }
    }
  };
  append(result);
  append(pooled(result));
  return out;
}

}  // namespace ampsim
