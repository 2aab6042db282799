#include "pisdim/constructions.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "pisdim/error.hpp"
#include "pisdim/metric_dim.hpp"
#include "test_support.hpp"

namespace pisdim {
namespace {

std::optional<std::pair<std::int64_t, std::string>> formula(const std::vector<int>& counts) {
  const auto f = formula_metric_dim(RingSpec::from_counts(counts));
  if (!f) return std::nullopt;
  return std::pair{f->value, std::string(theorem_name(f->theorem))};
}

using FR = std::pair<std::int64_t, std::string>;

TEST(Formula, Dispatch) {
  EXPECT_EQ(formula({2, 2, 2}), (FR{2, "reduced_n3"}));
  EXPECT_EQ(formula({2, 2, 2, 2, 2}), (FR{5, "reduced_general"}));
  EXPECT_EQ(formula({3}), (FR{0, "three_n1"}));
  EXPECT_EQ(formula({3, 3}), (FR{3, "three_small"}));
  EXPECT_EQ(formula({3, 3, 3}), (FR{5, "three_small"}));
  EXPECT_EQ(formula({3, 3, 3, 3}), (FR{8, "three_general"}));
  EXPECT_EQ(formula({4}), (FR{1, "chain_n1_small"}));
  EXPECT_EQ(formula({5}), (FR{1, "chain_general"}));
  EXPECT_EQ(formula({4, 4}), (FR{6, "chain_c4"}));
  EXPECT_EQ(formula({4, 4, 4}), (FR{36, "chain_c4"}));
  EXPECT_EQ(formula({4, 5}), (FR{10, "chain_general"}));
  EXPECT_EQ(formula({5, 4}), (FR{10, "chain_general"}));
}

TEST(Formula, NotCovered) {
  EXPECT_FALSE(formula({2}));
  EXPECT_FALSE(formula({2, 2}));
  EXPECT_FALSE(formula({3, 2}));
  EXPECT_FALSE(formula({3, 2, 2}));
  EXPECT_FALSE(formula({4, 3}));
  EXPECT_FALSE(formula({4, 4, 4, 4, 2, 2, 2}));  // fields group of size 3
}

TEST(Formula, ChainC4MatchesClosedForm) {
  for (int n = 2; n <= 8; ++n) {
    std::int64_t p4 = 1, p3 = 1;
    for (int i = 0; i < n; ++i) p4 *= 4, p3 *= 3;
    EXPECT_EQ(formula(std::vector<int>(n, 4))->first, p4 - p3 - 1);
  }
}

TEST(Formula, MixedCorollary) {
  // Groups (4,4,4): |V| = 4^4 3^4 2^4 - 2 = 331774.
  const std::vector<int> counts{4, 4, 4, 4, 3, 3, 3, 3, 2, 2, 2, 2};
  const auto f = formula(counts);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->second, "mixed_corollary");
  EXPECT_EQ(f->first, 331774 - 6561 * 16 + 8 + 4 + 2);
  // Two groups of size 4, third empty.
  EXPECT_EQ(formula({3, 3, 3, 3, 2, 2, 2, 2})->second, "mixed_corollary");
  EXPECT_EQ(formula({3, 3, 3, 3, 2, 2, 2, 2})->first, (81 * 16 - 2) - 81 * 16 + 8 + 4 + 2);
}

TEST(Formula, UncheckedMixedOnCounterexamples) {
  EXPECT_EQ(mixed_formula_unchecked(RingSpec::from_counts({3, 2})), 3);
  EXPECT_EQ(mixed_formula_unchecked(RingSpec::from_counts({3, 2, 2})), 4);
}

TEST(Construct, ExplicitSets) {
  const auto w3 = construct_resolving(RingSpec::from_counts({2, 2, 2}));
  EXPECT_EQ(w3.members, (std::vector<IdealVec>{{{0, 1, 1}}, {{1, 0, 1}}}));

  const auto w4 = construct_resolving(RingSpec::from_counts({2, 2, 2, 2}));
  EXPECT_EQ(w4.members, RingSpec::from_counts({2, 2, 2, 2}).maximal_ideals());

  const auto t2 = construct_resolving(RingSpec::from_counts({3, 3}));
  EXPECT_EQ(t2.members, (std::vector<IdealVec>{{{2, 0}}, {{0, 2}}, {{2, 1}}}));

  const auto c44 = construct_resolving(RingSpec::from_counts({4, 4}));
  EXPECT_EQ(c44.theorem, TheoremId::ChainC4);
  EXPECT_EQ(c44.members.size(), 6U);

  EXPECT_TRUE(construct_resolving(RingSpec::from_counts({3})).members.empty());
}

TEST(Construct, NotCoveredThrows) {
  try {
    construct_resolving(RingSpec::from_counts({3, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCovered);
  }
}

// Every covered spec up to 80 vertices: the construction resolves and its
// size equals the formula and the exact solver.
TEST(Construct, ResolvingAndOptimalUpTo80Vertices) {
  std::size_t covered = 0;
  for (const auto& counts : testing::count_multisets(2, 82, 82, 6)) {
    const auto spec = RingSpec::from_counts(counts);
    const auto f = formula_metric_dim(spec);
    if (!f || spec.vertex_count() > 80) continue;
    ++covered;
    const auto g = build(spec);
    const auto d = all_pairs_distances(g.graph);
    const auto w = construct_resolving(spec);
    EXPECT_TRUE(is_resolving(d, w.indices(spec))) << spec.canonical();
    EXPECT_EQ(static_cast<std::int64_t>(w.members.size()), f->value) << spec.canonical();
    const auto r = metric_dimension_exact(g.graph, d);
    ASSERT_EQ(r.status, SolveStatus::Exact);
    EXPECT_EQ(static_cast<std::int64_t>(r.size), f->value) << spec.canonical();
  }
  EXPECT_GT(covered, 60U);
}

TEST(Construct, MixedSetsAreInformational) {
  // Down-scaled mixed products: the set is well formed and disjoint; whether
  // it resolves is only reported.
  for (const auto& counts : std::vector<std::vector<int>>{{4, 3, 2}, {4, 4, 3, 3}, {3, 3, 2, 2}, {5, 3, 2, 2}}) {
    const auto spec = RingSpec::from_counts(counts);
    const auto w = construct_mixed(spec);
    const std::set<IdealVec> unique(w.members.begin(), w.members.end());
    EXPECT_EQ(unique.size(), w.members.size());
    EXPECT_EQ(static_cast<std::int64_t>(w.members.size()), mixed_formula_unchecked(spec));
    const auto g = build(spec);
    const bool resolving = static_cast<bool>(is_resolving(all_pairs_distances(g.graph), w.indices(spec)));
    RecordProperty(spec.canonical(), resolving ? "resolving" : "not resolving");
  }
}

// Graph twin classes coincide with the classes of the slot relation
// (below maximal / maximal / unit), 3^n - 1 of them.
TEST(ChainClasses, CoincideWithTwinClasses) {
  for (const auto& counts : testing::count_multisets(4, 5, 125, 3)) {
    const auto spec = RingSpec::from_counts(counts);
    const auto g = build(spec);
    std::map<std::vector<int>, std::set<std::size_t>> by_sig;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) by_sig[chain_class_signature(spec, g.vertices[v])].insert(v);
    std::set<std::set<std::size_t>> relation;
    for (auto& [_, s] : by_sig) relation.insert(s);

    std::size_t expected = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) expected *= 3;
    EXPECT_EQ(relation.size(), expected - 1);

    std::set<std::set<std::size_t>> open, full;
    for (const auto& c : open_twin_partition(g.graph).classes) open.emplace(c.begin(), c.end());
    for (const auto& c : twin_partition(g.graph).classes) full.emplace(c.begin(), c.end());
    EXPECT_EQ(open, relation) << spec.canonical();
    if (counts != std::vector<int>{4}) {
      EXPECT_EQ(full, relation) << spec.canonical();
    } else {
      EXPECT_EQ(full.size(), 1U);  // K2: the two vertices are closed twins
    }
  }
}

}  // namespace
}  // namespace pisdim
