#include "pisdim/metric_dim.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <numeric>
#include <set>

#include "json.hpp"

#include "pisdim/error.hpp"
#include "test_support.hpp"

namespace pisdim {
namespace {

struct Built {
  PisGraph g;
  DistanceMatrix d;
};

Built built(const std::vector<int>& counts) {
  auto g = build(RingSpec::from_counts(counts));
  auto d = all_pairs_distances(g.graph);
  return {std::move(g), std::move(d)};
}

std::size_t exact_size(const std::vector<int>& counts) {
  const auto b = built(counts);
  const auto r = metric_dimension_exact(b.g.graph, b.d);
  EXPECT_EQ(r.status, SolveStatus::Exact);
  return r.size;
}

// Oracle: group vertices whose neighbourhoods agree outside the pair itself,
// comparing explicit std::set neighbourhoods.
std::set<std::set<std::size_t>> twin_classes_oracle(const Graph& g) {
  const auto n = g.order();
  auto nbhd = [&](std::size_t x, std::size_t skip) {
    std::set<std::size_t> s;
    for (std::size_t y = 0; y < n; ++y)
      if (y != skip && g.adjacent(x, y)) s.insert(y);
    return s;
  };
  std::vector<int> cls(n, -1);
  int next = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (cls[u] < 0) cls[u] = next++;
    for (std::size_t v = u + 1; v < n; ++v)
      if (cls[v] < 0 && nbhd(u, v) == nbhd(v, u)) cls[v] = cls[u];
  }
  std::vector<std::set<std::size_t>> groups(static_cast<std::size_t>(next));
  for (std::size_t v = 0; v < n; ++v) groups[static_cast<std::size_t>(cls[v])].insert(v);
  return {groups.begin(), groups.end()};
}

std::set<std::set<std::size_t>> as_sets(const TwinPartition& tp) {
  std::set<std::set<std::size_t>> out;
  for (const auto& c : tp.classes) out.emplace(c.begin(), c.end());
  return out;
}

TEST(TwinPartition, KnownRings) {
  const auto c44 = built({4, 4});
  EXPECT_EQ(twin_partition(c44.g.graph).class_count(), 8U);
  EXPECT_EQ(twin_lower_bound(twin_partition(c44.g.graph)), 6U);

  const auto z16 = built({5});
  const auto tp = twin_partition(z16.g.graph);
  ASSERT_EQ(tp.class_count(), 2U);
  EXPECT_EQ(tp.classes[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(tp.kinds[0], TwinKind::Open);

  const auto f3 = built({2, 2, 2});
  const auto tp3 = twin_partition(f3.g.graph);
  EXPECT_EQ(tp3.class_count(), 6U);
  EXPECT_EQ(twin_lower_bound(tp3), 0U);
  EXPECT_TRUE(std::ranges::all_of(tp3.kinds, [](auto k) { return k == TwinKind::Singleton; }));
}

TEST(TwinPartition, ClosedTwinsInCompleteGraph) {
  const auto tp = twin_partition(testing::complete_graph(4));
  ASSERT_EQ(tp.class_count(), 1U);
  EXPECT_EQ(tp.kinds[0], TwinKind::Closed);
  EXPECT_EQ(twin_lower_bound(tp), 3U);
  EXPECT_EQ(open_twin_partition(testing::complete_graph(4)).class_count(), 4U);
}

TEST(TwinPartition, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 150; ++i) {
    const auto g = testing::random_connected_graph(rng, 3 + rng() % 14, 0.1 + 0.1 * (i % 8));
    EXPECT_EQ(as_sets(twin_partition(g)), twin_classes_oracle(g));
  }
}

TEST(InfoLowerBound, Examples) {
  EXPECT_EQ(info_lower_bound(25, 2), 5U);
  EXPECT_EQ(info_lower_bound(7, 2), 3U);
  EXPECT_EQ(info_lower_bound(14, 2), 4U);
  EXPECT_EQ(info_lower_bound(1, 0), 0U);
  EXPECT_EQ(info_lower_bound(5, 1), 4U);  // K5
  EXPECT_EQ(info_lower_bound(1000, 4), 5U);
}

TEST(IsResolving, KnownSets) {
  const auto f3 = built({2, 2, 2});
  const std::vector<std::size_t> w{f3.g.index_of(IdealVec{{0, 1, 1}}), f3.g.index_of(IdealVec{{1, 0, 1}})};
  EXPECT_TRUE(is_resolving(f3.d, w));

  const auto t3 = built({3, 3, 3});
  std::vector<std::size_t> w5;
  for (const auto& v : std::vector<IdealVec>{{{0, 2, 2}}, {{2, 0, 2}}, {{2, 2, 0}}, {{2, 1, 1}}, {{1, 1, 2}}})
    w5.push_back(t3.g.index_of(v));
  EXPECT_TRUE(is_resolving(t3.d, w5));
}

TEST(IsResolving, WholeVertexSetAndWitness) {
  const auto b = built({3, 3});
  std::vector<std::size_t> all(b.g.graph.order());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_TRUE(is_resolving(b.d, all));

  const auto r = is_resolving(b.d, std::vector<std::size_t>{});
  EXPECT_FALSE(r);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, (std::pair<std::size_t, std::size_t>{0, 1}));

  const auto one = is_resolving(b.d, std::vector<std::size_t>{0});
  ASSERT_FALSE(one);
  const auto [u, v] = *one.witness;
  EXPECT_EQ(b.d(u, 0), b.d(v, 0));
}

TEST(Exact, KnownValues) {
  EXPECT_EQ(exact_size({2, 2, 2}), 2U);
  EXPECT_EQ(exact_size({3, 3}), 3U);
  EXPECT_EQ(exact_size({3, 3, 3}), 5U);
  EXPECT_EQ(exact_size({3, 2}), 2U);
  EXPECT_EQ(exact_size({3, 2, 2}), 3U);
  EXPECT_EQ(exact_size({4, 4}), 6U);
  EXPECT_EQ(exact_size({4}), 1U);
  EXPECT_EQ(exact_size({3}), 0U);
}

TEST(Exact, ReportCarriesBounds) {
  const auto b = built({3, 3, 3});
  const auto r = metric_dimension_exact(b.g.graph, b.d);
  EXPECT_EQ(r.info_bound, 5U);
  EXPECT_EQ(r.twin_bound, 0U);
  EXPECT_EQ(r.set.size(), r.size);
  EXPECT_TRUE(std::ranges::is_sorted(r.set));
  EXPECT_TRUE(is_resolving(b.d, r.set));
}

TEST(Exact, PreselectedTwinMembersAreNecessary) {
  const auto b = built({4, 4});
  const auto r = metric_dimension_exact(b.g.graph, b.d);
  ASSERT_EQ(r.size, 6U);
  const auto tp = twin_partition(b.g.graph);
  std::size_t checked = 0;
  for (const auto& cls : tp.classes) {
    if (cls.size() < 2) continue;
    for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
      ASSERT_TRUE(std::ranges::binary_search(r.set, cls[i]));
      auto without = r.set;
      std::erase(without, cls[i]);
      EXPECT_FALSE(is_resolving(b.d, without));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 6U);
}

TEST(Exact, IndependentOfThreadCount) {
  for (const auto& counts : std::vector<std::vector<int>>{{3, 3, 3, 3}, {2, 2, 2, 2, 2}, {4, 5}, {3, 2, 2}}) {
    const auto b = built(counts);
    const auto one = metric_dimension_exact(b.g.graph, b.d, {std::chrono::minutes(10), 1});
    const auto four = metric_dimension_exact(b.g.graph, b.d, {std::chrono::minutes(10), 4});
    EXPECT_EQ(one.set, four.set);
    EXPECT_EQ(one.status, SolveStatus::Exact);
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto g = testing::random_connected_graph(rng, 20 + rng() % 20, 0.15);
    const auto d = all_pairs_distances(g);
    EXPECT_EQ(metric_dimension_exact(g, d, {std::chrono::minutes(1), 1}).set,
              metric_dimension_exact(g, d, {std::chrono::minutes(1), 3}).set);
  }
}

TEST(Exact, BudgetExhaustion) {
  const auto b = built({3, 3, 3});
  const auto none = metric_dimension_exact(b.g.graph, b.d, {std::chrono::milliseconds(0), 1});
  EXPECT_EQ(none.status, SolveStatus::InfeasibleBudget);
  EXPECT_EQ(none.info_bound, 5U);

  const auto big = built({3, 3, 3, 3, 3});
  const auto r = metric_dimension_exact(big.g.graph, big.d, {std::chrono::milliseconds(1), 1});
  EXPECT_NE(r.status, SolveStatus::Exact);
  if (r.status == SolveStatus::UpperBound) EXPECT_TRUE(is_resolving(big.d, r.set));
}

TEST(Exact, RejectsDisconnectedGraphs) {
  Graph g(3);
  g.add_edge(0, 1);
  const auto d = all_pairs_distances(g);
  try {
    metric_dimension_exact(g, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Disconnected);
  }
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(metric_dimension_bruteforce(all_pairs_distances(testing::path_graph(3))), 1U);
  EXPECT_EQ(metric_dimension_bruteforce(all_pairs_distances(testing::complete_graph(4))), 3U);
  EXPECT_EQ(metric_dimension_bruteforce(built({3, 2}).d), 2U);
  EXPECT_THROW(metric_dimension_bruteforce(all_pairs_distances(testing::path_graph(15))), Error);
}

// Paths: 1. K_n: n - 1. Star K_{1,k}: k - 1.
TEST(Exact, ClassicFamilies) {
  for (std::size_t n = 2; n <= 30; n += 7) {
    const auto p = testing::path_graph(n);
    EXPECT_EQ(metric_dimension_exact(p, all_pairs_distances(p)).size, 1U);
    const auto k = testing::complete_graph(n);
    EXPECT_EQ(metric_dimension_exact(k, all_pairs_distances(k)).size, n - 1);
  }
  Graph star(9);
  for (std::size_t v = 1; v < 9; ++v) star.add_edge(0, v);
  EXPECT_EQ(metric_dimension_exact(star, all_pairs_distances(star)).size, 7U);
}

TEST(Properties, ExactEqualsBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng() % 11;
    const auto g = testing::random_connected_graph(rng, n, std::uniform_real_distribution<>(0.0, 0.7)(rng));
    const auto d = all_pairs_distances(g);
    const auto r = metric_dimension_exact(g, d);
    ASSERT_EQ(r.status, SolveStatus::Exact);
    ASSERT_EQ(r.size, metric_dimension_bruteforce(d)) << "seed index " << i;
    ASSERT_TRUE(is_resolving(d, r.set));
    EXPECT_LE(r.twin_bound, r.size);
    EXPECT_LE(r.info_bound, r.size);
  }
}

TEST(Properties, SupersetOfResolvingSetResolves) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_connected_graph(rng, 4 + rng() % 20, 0.2);
    const auto d = all_pairs_distances(g);
    auto set = metric_dimension_exact(g, d).set;
    for (int extra = 0; extra < 3; ++extra) {
      const auto v = rng() % g.order();
      if (std::ranges::find(set, v) == set.end()) set.push_back(v);
      EXPECT_TRUE(is_resolving(d, set));
    }
  }
}

TEST(ReportJson, Shape) {
  const auto b = built({3, 2});
  const auto r = metric_dimension_exact(b.g.graph, b.d);
  const auto doc = nlohmann::json::parse(report_json(r, b.g.graph));
  EXPECT_EQ(doc["size"], 2);
  EXPECT_EQ(doc["status"], "exact");
  EXPECT_EQ(doc["set"].size(), 2U);
  EXPECT_TRUE(doc["set"][0].is_string());
  EXPECT_EQ(doc["bounds"]["info"], 2);
  EXPECT_TRUE(doc.contains("millis"));
}

}  // namespace
}  // namespace pisdim
