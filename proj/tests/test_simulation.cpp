#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "ampsim/simulation.hpp"

using namespace ampsim;

namespace {

Slate slate_of(std::vector<Index> items) {
  Slate s;
  s.scores.assign(items.size(), 0.0);
  s.items = std::move(items);
  return s;
}

}  // namespace

TEST_CASE("sample_interaction_counts") {
  SUBCASE("Table 1 rate: mean within 3 sigma, variance close to the mean") {
    // Pooled over seeds so the variance estimate is tight.
    double sum = 0.0, sumsq = 0.0;
    const int seeds = 50;
    for (int k = 0; k < seeds; ++k) {
      Rng rng = make_stream(static_cast<std::uint64_t>(k), 0, 0, 0);
      const auto z = sample_interaction_counts(600, 60.0, rng);
      CHECK(z.size() == 600);
      double mean = 0.0;
      for (int x : z) {
        CHECK(x >= 0);
        mean += x;
        sum += x;
        sumsq += static_cast<double>(x) * x;
      }
      mean /= 600;
      CHECK(std::abs(mean - 60.0) < 3.0 * std::sqrt(60.0 / 600));
    }
    const double n = 600.0 * seeds, mean = sum / n, var = (sumsq - n * mean * mean) / (n - 1);
    // Dispersion statistic (n-1) var / mean ~ chi2(n-1): sd of var/mean is sqrt(2/(n-1)).
    CHECK(std::abs(var / mean - 1.0) < 4.0 * std::sqrt(2.0 / (n - 1)));
  }
  SUBCASE("degenerate rate") {
    Rng rng(1);
    const auto z = sample_interaction_counts(600, 1e-9, rng);
    CHECK(std::accumulate(z.begin(), z.end(), 0) == 0);
  }
  SUBCASE("non-positive rate throws") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_interaction_counts(3, 0.0, rng), std::invalid_argument);
  }
}

TEST_CASE("select_item") {
  const std::vector<double> utils = {2.0, 1.0, 1.0, 0.0};
  const Slate slate = slate_of({0, 1, 2});
  const int reps = 100000;

  SUBCASE("utility-informed choice is proportional to utility") {
    Rng rng(3);
    std::vector<int> hits(3, 0);
    for (int k = 0; k < reps; ++k) ++hits[static_cast<std::size_t>(select_item(slate, SelectionPolicy::UtilityInformed, utils, rng))];
    const double p[] = {0.5, 0.25, 0.25};
    for (int q = 0; q < 3; ++q) CHECK(std::abs(hits[q] - reps * p[q]) < 3 * std::sqrt(reps * p[q] * (1 - p[q])));
  }
  SUBCASE("random choice is uniform") {
    Rng rng(4);
    std::vector<int> hits(3, 0);
    for (int k = 0; k < reps; ++k) ++hits[static_cast<std::size_t>(select_item(slate, SelectionPolicy::Random, utils, rng))];
    for (int h : hits) CHECK(std::abs(h - reps / 3.0) < 3 * std::sqrt(reps * (1.0 / 3) * (2.0 / 3)));
  }
  SUBCASE("Table 1 row for user 0 over a mixed-topic slate") {
    const Catalog c = default_catalog();
    const auto m = build_utility_matrix(600, c);
    const Slate mixed = slate_of({0, 100, 250, 450});  // FarLeft, Left, Center, Right
    const std::span<const double> row(m.row(0).data(), 600);
    double total = 0.0;
    for (Index j : mixed.items) total += m(0, j);
    Rng rng(5);
    std::vector<int> hits(4, 0);
    for (int k = 0; k < reps; ++k) {
      const Index j = select_item(mixed, SelectionPolicy::UtilityInformed, row, rng);
      ++hits[static_cast<std::size_t>(std::find(mixed.items.begin(), mixed.items.end(), j) - mixed.items.begin())];
    }
    for (std::size_t q = 0; q < 4; ++q) {
      const double p = m(0, mixed.items[q]) / total;
      CHECK(std::abs(hits[q] - reps * p) < 3 * std::sqrt(reps * p * (1 - p)) + 1);
    }
  }
  SUBCASE("underflowing utilities fall back to uniform") {
    const std::vector<double> tiny = {1e-320, 0.0, 1e-310};
    Rng rng(6);
    std::vector<int> hits(3, 0);
    for (int k = 0; k < 30000; ++k) ++hits[static_cast<std::size_t>(select_item(slate, SelectionPolicy::UtilityInformed, tiny, rng))];
    for (int h : hits) CHECK(h > 9000);
  }
  SUBCASE("empty slate throws") {
    Rng rng(7);
    CHECK_THROWS_AS(select_item(Slate{}, SelectionPolicy::Random, utils, rng), std::invalid_argument);
  }
}

TEST_CASE("run_burn_in") {
  const Catalog c({{Topic::FarLeft, 1, 4, 1, 10}, {Topic::Center, 2, 2, 1, 10}, {Topic::FarRight, 4, 1, 1, 10}});
  const auto m = build_utility_matrix(30, c);
  const RecommenderParams params{5, 3};

  SUBCASE("no budget leaves the matrix empty") {
    ConsumptionMatrix s(30, 30);
    Rng rng(1);
    const auto report = run_burn_in(s, m, 1e-9, params, rng);
    CHECK(s.total_consumed() == 0);
    CHECK(report.rounds == 0);
  }
  SUBCASE("each user consumes min(z_i, |C|) items") {
    ConsumptionMatrix s(30, 30);
    Rng rng(2);
    const auto report = run_burn_in(s, m, 12.0, params, rng);
    Index total = 0;
    for (Index i = 0; i < 30; ++i) {
      const Index expect = std::min<Index>(report.interaction_counts[static_cast<std::size_t>(i)], 30);
      CHECK(s.consumed_count(i) == expect);
      total += expect;
    }
    CHECK(s.total_consumed() == total);
    CHECK(report.rounds == total);
  }
  SUBCASE("budgets beyond the catalog are truncated") {
    ConsumptionMatrix s(30, 30);
    Rng rng(3);
    const auto report = run_burn_in(s, m, 45.0, params, rng);
    for (Index i = 0; i < 30; ++i)
      CHECK(s.consumed_count(i) == std::min<Index>(report.interaction_counts[static_cast<std::size_t>(i)], 30));
  }
  SUBCASE("requires an empty matrix") {
    ConsumptionMatrix s(30, 30);
    s.mark_consumed(0, 0);
    Rng rng(4);
    CHECK_THROWS_AS(run_burn_in(s, m, 5.0, params, rng), std::invalid_argument);
  }
}

TEST_CASE("run_measurement_trial") {
  const Catalog c = default_catalog();
  const auto m = build_utility_matrix(600, c);
  ConsumptionMatrix s(600, 600);
  Rng burn(8);
  run_burn_in(s, m, 20.0, {20, 10}, burn);
  const auto checksum = s.checksum();

  SUBCASE("zero steps records only the start item") {
    Rng rng(1);
    const auto t = run_measurement_trial(s, m, c, StartCondition::seeded(Topic::Left), SelectionPolicy::Random, 0,
                                         {20, 10}, rng);
    CHECK(t.steps.empty());
    CHECK(c.topic_of_item(t.start_item) == Topic::Left);
  }
  SUBCASE("seeded random-policy trace shape") {
    Rng rng(2);
    const auto t = run_measurement_trial(s, m, c, StartCondition::seeded(Topic::FarRight), SelectionPolicy::Random,
                                         20, {20, 10}, rng);
    REQUIRE(t.steps.size() == 20);
    CHECK(t.start_topic == Topic::FarRight);
    CHECK(c.topic_of_item(t.start_item) == Topic::FarRight);
    std::set<Index> seen = {t.start_item};
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
      const auto& st = t.steps[k];
      CHECK(st.step == static_cast<int>(k) + 1);
      CHECK(st.slate.size() == 20);
      CHECK(std::find(st.slate.begin(), st.slate.end(), st.chosen) != st.slate.end());
      for (Index j : st.slate) CHECK(seen.count(j) == 0);
      CHECK(seen.insert(st.chosen).second);
    }
  }
  SUBCASE("highest-utility start uses the user's argmax topic") {
    for (int k = 0; k < 40; ++k) {
      Rng rng(static_cast<std::uint64_t>(100 + k));
      const auto t = run_measurement_trial(s, m, c, StartCondition::highest_utility(),
                                           SelectionPolicy::UtilityInformed, 3, {20, 10}, rng);
      CHECK(t.start_topic == c.topics()[highest_utility_topic(m, c, t.user)].label);
      CHECK(c.topic_of_item(t.start_item) == t.start_topic);
    }
  }
  SUBCASE("tiny catalog ends the trace early when exhausted") {
    const Catalog tiny({{Topic::Left, 1, 1, 1, 2}, {Topic::Right, 1, 1, 1, 2}});
    const auto mt = build_utility_matrix(3, tiny);
    ConsumptionMatrix st(3, 4);
    Rng rng(3);
    const auto t = run_measurement_trial(st, mt, tiny, StartCondition::seeded(Topic::Right),
                                         SelectionPolicy::UtilityInformed, 10, {2, 1}, rng);
    CHECK(t.steps.size() == 3);
  }
  CHECK(s.checksum() == checksum);
}

TEST_CASE("run_simulation grouping, determinism and frozen matrix") {
  const Catalog c = default_catalog();
  const auto m = build_utility_matrix(600, c);
  ConsumptionMatrix s(600, 600);
  Rng burn(9);
  run_burn_in(s, m, 15.0, {20, 10}, burn);
  const auto checksum = s.checksum();
  MeasurementParams p{{20, 10}, 5, 40, 123, 1};

  const auto sim1 = run_simulation(1, s, m, c, p);
  REQUIRE(sim1.groups.size() == 5);
  std::size_t total = 0;
  for (std::size_t q = 0; q < 5; ++q) {
    CHECK(sim1.groups[q].start_topic == kAllTopics[q]);
    CHECK(sim1.groups[q].traces.size() == 40);
    for (const auto& t : sim1.groups[q].traces) CHECK(t.start_topic == kAllTopics[q]);
    total += sim1.groups[q].traces.size();
  }
  CHECK(total == 200);

  const auto sim2 = run_simulation(2, s, m, c, p);
  total = 0;
  for (const auto& g : sim2.groups) {
    for (const auto& t : g.traces) {
      CHECK(t.start_topic == *g.start_topic);
      CHECK(t.start_topic == c.topics()[highest_utility_topic(m, c, t.user)].label);
    }
    total += g.traces.size();
  }
  CHECK(total == 40);

  // Parallel execution yields the same traces as sequential.
  MeasurementParams par = p;
  par.threads = 4;
  const auto again = run_simulation(1, s, m, c, par);
  for (std::size_t q = 0; q < 5; ++q)
    for (std::size_t k = 0; k < 40; ++k) {
      const auto& a = sim1.groups[q].traces[k];
      const auto& b = again.groups[q].traces[k];
      CHECK(a.user == b.user);
      CHECK(a.start_item == b.start_item);
      REQUIRE(a.steps.size() == b.steps.size());
      for (std::size_t t = 0; t < a.steps.size(); ++t) {
        CHECK(a.steps[t].slate == b.steps[t].slate);
        CHECK(a.steps[t].chosen == b.steps[t].chosen);
      }
    }
  CHECK(s.checksum() == checksum);
  CHECK_THROWS_AS(run_simulation(3, s, m, c, p), std::invalid_argument);
}

TEST_CASE("derived streams differ per coordinate") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t sim = 0; sim < 3; ++sim)
    for (std::uint64_t cond = 0; cond < 5; ++cond)
      for (std::uint64_t k = 0; k < 50; ++k) seeds.insert(derive_seed(42, sim, cond, k));
  CHECK(seeds.size() == 3 * 5 * 50);
  CHECK(derive_seed(42, 1, 2, 3) == derive_seed(42, 1, 2, 3));
  CHECK(derive_seed(42, 1, 2, 3) != derive_seed(43, 1, 2, 3));
}
