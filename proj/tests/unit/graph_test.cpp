#include <gtest/gtest.h>

#include <random>

#include "naive.hpp"
#include "plbea/errors.hpp"
#include "plbea/graph.hpp"

using plbea::Graph;
using plbea::Solution;

namespace {

Solution Bits(std::initializer_list<int> bits) {
  std::vector<int> v(bits);
  return Solution::FromBits(v);
}

const Graph kP3 = naive::path(3);
const Graph kTriangle = naive::complete(3);

}  // namespace

TEST(Graph, NormalizesAndDeduplicatesEdges) {
  const Graph g(3, {{1, 0}, {0, 1}, {2, 1}});
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges()[0], plbea::Edge(0, 1));
  EXPECT_EQ(g.edges()[1], plbea::Edge(1, 2));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Graph, RejectsSelfLoopsAndBadIds) {
  EXPECT_THROW(Graph(3, {{1, 1}}), plbea::UsageError);
  EXPECT_THROW(Graph(3, {{0, 3}}), plbea::UsageError);
}

TEST(Graph, AdjacencyIsSymmetricAndSorted) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = naive::random_graph(12, 0.3, rng);
    std::size_t sum = 0;
    for (plbea::Vertex v = 0; v < g.num_vertices(); ++v) {
      const auto nb = g.neighbors(v);
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      EXPECT_EQ(nb.size(), g.degree(v));
      for (auto u : nb) EXPECT_TRUE(g.has_edge(u, v));
      sum += nb.size();
    }
    EXPECT_EQ(sum, g.degree_sum());
    EXPECT_EQ(sum, 2 * g.num_edges());
  }
}

TEST(Degree, PathAndStar) {
  EXPECT_EQ(plbea::degree(kP3, 1), 2u);
  EXPECT_EQ(plbea::degree(kP3, 0), 1u);
  EXPECT_EQ(plbea::degree(naive::star(4), 0), 4u);
  EXPECT_THROW(plbea::degree(kP3, 3), plbea::UsageError);
}

TEST(UndominatedCount, Examples) {
  EXPECT_EQ(plbea::undominated_count(kP3, Bits({0, 1, 0})), 0u);
  EXPECT_EQ(plbea::undominated_count(kP3, Bits({0, 0, 0})), 3u);
  EXPECT_EQ(plbea::undominated_count(kP3, Bits({1, 0, 0})), 1u);
  EXPECT_THROW(plbea::undominated_count(kP3, Bits({1, 0})), plbea::UsageError);
}

TEST(UncoveredEdgeCount, Examples) {
  EXPECT_EQ(plbea::uncovered_edge_count(kP3, Bits({0, 1, 0})), 0u);
  EXPECT_EQ(plbea::uncovered_edge_count(kTriangle, Bits({0, 0, 0})), 3u);
  EXPECT_EQ(plbea::uncovered_edge_count(kTriangle, Bits({1, 0, 0})), 1u);
  EXPECT_THROW(plbea::uncovered_edge_count(kP3, Bits({1})), plbea::UsageError);
}

TEST(SelectedComponentCount, Examples) {
  EXPECT_EQ(plbea::selected_component_count(kP3, Bits({1, 0, 1})), 2u);
  EXPECT_EQ(plbea::selected_component_count(kP3, Bits({1, 1, 1})), 1u);
  EXPECT_EQ(plbea::selected_component_count(naive::petersen(), Solution(10)), 0u);
  EXPECT_THROW(plbea::selected_component_count(kP3, Solution(4)), plbea::UsageError);
}

TEST(ConflictCount, Examples) {
  EXPECT_EQ(plbea::conflict_count(kTriangle, Bits({1, 1, 0})), 2u);
  EXPECT_EQ(plbea::conflict_count(kTriangle, Bits({0, 0, 0})), 0u);
  EXPECT_EQ(plbea::conflict_count(kTriangle, Bits({1, 1, 1})), 6u);
  EXPECT_THROW(plbea::conflict_count(kTriangle, Solution(2)), plbea::UsageError);
}

TEST(ApplyFlip, Examples) {
  auto s = plbea::DominationState(kP3, Bits({0, 0, 0}));
  EXPECT_EQ(s.undominated(), 3u);
  s = plbea::apply_flip(s, kP3, 1);
  EXPECT_EQ(s.undominated(), 0u);

  const auto t = plbea::DominationState(kP3, Bits({0, 1, 0}));
  const auto flipped = plbea::apply_flip(t, kP3, 0);
  EXPECT_EQ(flipped.undominated(), 0u);
  const auto back = plbea::apply_flip(flipped, kP3, 0);
  EXPECT_EQ(back.solution(), t.solution());
  for (plbea::Vertex v = 0; v < 3; ++v) EXPECT_EQ(back.cover_count(v), t.cover_count(v));
}

TEST(ApplyFlip, MatchesRecomputeOnRandomTrajectories) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const Graph g = naive::random_graph(n, 3.0 / n, rng);
    Solution x(n);
    for (int v = 0; v < n; ++v) x.set(v, rng() & 1);
    plbea::DominationState state(g, x);
    for (int step = 0; step < 40; ++step) {
      const auto v = static_cast<plbea::Vertex>(rng() % n);
      state.apply_flip(g, v);
      x.flip(v);
      ASSERT_EQ(state.undominated(), plbea::undominated_count(g, x));
      ASSERT_EQ(state.solution(), x);
    }
    const naive::Adj a(g);
    std::uint64_t mask = 0;
    for (int v = 0; v < n; ++v) {
      if (x.test(v)) mask |= std::uint64_t{1} << v;
      std::size_t cover = x.test(v) ? 1 : 0;
      for (auto u : g.neighbors(v)) cover += x.test(u);
      ASSERT_EQ(state.cover_count(v), cover);
    }
    ASSERT_EQ(state.undominated(), static_cast<std::size_t>(naive::undominated(a, mask)));
  }
}

TEST(Queries, AgreeWithBruteForce) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 14);
    const Graph g = naive::random_graph(n, 0.35, rng);
    const naive::Adj a(g);
    const std::uint64_t mask = rng() & a.all();
    const Solution x = Solution::FromMask(n, mask);
    EXPECT_EQ(plbea::undominated_count(g, x), static_cast<std::size_t>(naive::undominated(a, mask)));
    EXPECT_EQ(plbea::uncovered_edge_count(g, x), static_cast<std::size_t>(naive::uncovered(a, mask)));
    EXPECT_EQ(plbea::conflict_count(g, x), static_cast<std::size_t>(naive::conflicts(a, mask)));
    EXPECT_EQ(plbea::selected_component_count(g, x),
              static_cast<std::size_t>(naive::components(a, mask)));
  }
}

TEST(Queries, Properties) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const Graph g = naive::random_graph(n, 0.25, rng);
    EXPECT_EQ(plbea::undominated_count(g, Solution(n, true)), 0u);
    Solution x(n);
    for (int v = 0; v < n; ++v) x.set(v, rng() & 1);
    const std::size_t conflicts = plbea::conflict_count(g, x);
    EXPECT_EQ(conflicts % 2, 0u);
    std::size_t induced = 0;
    for (const auto& [u, v] : g.edges()) induced += x.test(u) && x.test(v);
    EXPECT_EQ(conflicts, 2 * induced);
    const std::size_t w = plbea::selected_component_count(g, x);
    EXPECT_LE(w, x.ones());
    EXPECT_EQ(w == x.ones(), induced == 0);
  }
}

TEST(Graph, Connectivity) {
  EXPECT_TRUE(kP3.is_connected());
  EXPECT_FALSE(naive::empty(2).is_connected());
  EXPECT_TRUE(naive::empty(1).is_connected());
  EXPECT_TRUE(naive::petersen().is_connected());
}

TEST(Solution, Constructors) {
  const Solution a = Solution::FromVertices(5, {1, 3});
  EXPECT_EQ(a.ones(), 2u);
  EXPECT_EQ(a.to_string(), "01010");
  EXPECT_EQ(a, Solution::FromMask(5, 0b01010));
  EXPECT_EQ(a.selected(), (std::vector<plbea::Vertex>{1, 3}));
  EXPECT_THROW(Solution::FromVertices(3, {3}), plbea::UsageError);
}
