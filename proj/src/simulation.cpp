#include "ampsim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace ampsim {

namespace {

std::span<const double> row_span(const UtilityMatrix<double>& m, Index user) {
  return {m.row(user).data(), static_cast<std::size_t>(m.cols())};
}

Index uniform_index(Index size, Rng& rng) {
  return std::uniform_int_distribution<Index>(0, size - 1)(rng);
}

// Runs job(k) for k in [0, count) on up to `threads` workers.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) job(k);
    });
}

}  // namespace

std::vector<int> sample_interaction_counts(Index num_users, double lambda, Rng& rng) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sample_interaction_counts: lambda must be > 0");
  std::poisson_distribution<int> poisson(lambda);
  std::vector<int> z(static_cast<std::size_t>(num_users));
  for (int& zi : z) zi = poisson(rng);
  return z;
}

Index select_item(const Slate& slate, SelectionPolicy policy, std::span<const double> user_utilities, Rng& rng) {
  if (slate.items.empty()) throw std::invalid_argument("select_item: empty slate");
  const auto n = static_cast<Index>(slate.items.size());
  if (policy == SelectionPolicy::UtilityInformed) {
    std::vector<double> weights(slate.items.size());
    double total = 0.0;
    for (std::size_t p = 0; p < weights.size(); ++p) {
      weights[p] = user_utilities[static_cast<std::size_t>(slate.items[p])];
      total += weights[p];
    }
    if (total >= 1e-300) {
      std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
      return slate.items[pick(rng)];
    }
  }
  return slate.items[static_cast<std::size_t>(uniform_index(n, rng))];
}

BurnInReport run_burn_in(ConsumptionMatrix& s, const UtilityMatrix<double>& m, double lambda,
                         const RecommenderParams& params, Rng& rng) {
  if (s.total_consumed() != 0) throw std::invalid_argument("run_burn_in: matrix must start empty");
  BurnInReport report;
  report.interaction_counts = sample_interaction_counts(s.num_users(), lambda, rng);

  std::vector<int> remaining = report.interaction_counts;
  std::vector<Index> active;
  for (Index i = 0; i < s.num_users(); ++i)
    if (remaining[static_cast<std::size_t>(i)] > 0) active.push_back(i);

  while (!active.empty()) {
    const auto pos = static_cast<std::size_t>(uniform_index(static_cast<Index>(active.size()), rng));
    const Index user = active[pos];
    int& left = remaining[static_cast<std::size_t>(user)];
    if (s.consumed_count(user) == s.num_items()) {
      left = 0;
    } else {
      const Slate slate = recommend(s, user, params.slate_size, params.neighbors, rng);
      s.mark_consumed(user, select_item(slate, SelectionPolicy::UtilityInformed, row_span(m, user), rng));
      --left;
      ++report.rounds;
    }
    if (left == 0) active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return report;
}

TrialTrace run_measurement_trial(const ConsumptionMatrix& s, const UtilityMatrix<double>& m,
                                 const Catalog& catalog, const StartCondition& condition,
                                 SelectionPolicy policy, int steps, const RecommenderParams& params, Rng& rng) {
  TrialTrace trace;
  trace.user = uniform_index(s.num_users(), rng);
  const std::size_t block = condition.seed_topic ? catalog.position_of(*condition.seed_topic)
                                                 : highest_utility_topic(m, catalog, trace.user);
  trace.start_topic = catalog.topics()[block].label;
  trace.start_item = catalog.block_begin(block) + uniform_index(catalog.block_size(block), rng);

  RowOverlay row(trace.user, s.num_items());
  row.mark_consumed(trace.start_item);
  trace.steps.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int t = 1; t <= steps; ++t) {
    if (static_cast<Index>(row.items().size()) == s.num_items()) break;
    Slate slate = recommend(s, row.query(), params.slate_size, params.neighbors, rng);
    const Index chosen = select_item(slate, policy, row_span(m, trace.user), rng);
    row.mark_consumed(chosen);
    trace.steps.push_back({t, std::move(slate.items), chosen});
  }
  return trace;
}

SimulationResult run_simulation(int which, const ConsumptionMatrix& s, const UtilityMatrix<double>& m,
                                const Catalog& catalog, const MeasurementParams& params) {
  if (which != 1 && which != 2) throw std::invalid_argument("run_simulation: simulation must be 1 or 2");
  const auto trials = static_cast<std::size_t>(params.trials);
  SimulationResult result;
  result.simulation = which;

  if (which == 1) {
    const std::size_t conditions = catalog.topic_count();
    std::vector<TrialTrace> traces(conditions * trials);
    parallel_for(traces.size(), params.threads, [&](std::size_t job) {
      const std::size_t c = job / trials, k = job % trials;
      Rng rng = make_stream(params.master_seed, 1, c, k);
      traces[job] = run_measurement_trial(s, m, catalog, StartCondition::seeded(catalog.topics()[c].label),
                                          SelectionPolicy::Random, params.steps, params.recommender, rng);
    });
    for (std::size_t c = 0; c < conditions; ++c) {
      TraceGroup g{catalog.topics()[c].label, {}};
      g.traces.assign(std::make_move_iterator(traces.begin() + static_cast<std::ptrdiff_t>(c * trials)),
                      std::make_move_iterator(traces.begin() + static_cast<std::ptrdiff_t>((c + 1) * trials)));
      result.groups.push_back(std::move(g));
    }
    return result;
  }

  std::vector<TrialTrace> traces(trials);
  parallel_for(trials, params.threads, [&](std::size_t k) {
    Rng rng = make_stream(params.master_seed, 2, 0, k);
    traces[k] = run_measurement_trial(s, m, catalog, StartCondition::highest_utility(),
                                      SelectionPolicy::UtilityInformed, params.steps, params.recommender, rng);
  });
  for (const TopicSpec& t : catalog.topics()) {
    TraceGroup g{t.label, {}};
    for (const TrialTrace& tr : traces)
      if (tr.start_topic == t.label) g.traces.push_back(tr);
    if (!g.traces.empty()) result.groups.push_back(std::move(g));
  }
  return result;
}

}  // namespace ampsim
