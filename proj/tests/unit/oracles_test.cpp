#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "naive.hpp"
#include "plbea/errors.hpp"
#include "plbea/generators.hpp"
#include "plbea/oracles.hpp"

using plbea::Graph;
using plbea::OracleMethod;
using plbea::Problem;
using plbea::ProblemKind;
using plbea::Solution;

namespace {

constexpr ProblemKind kAll[] = {ProblemKind::kMds, ProblemKind::kMvc, ProblemKind::kCds,
                                ProblemKind::kMis};

std::uint64_t Mask(const Solution& x) {
  std::uint64_t m = 0;
  for (auto v : x.selected()) m |= std::uint64_t{1} << v;
  return m;
}

// Plain greedy set cover over closed neighborhoods.
std::vector<int> RefGreedyMds(const naive::Adj& a) {
  std::uint64_t undominated = a.all();
  std::uint64_t chosen = 0;
  std::vector<int> picks;
  while (undominated) {
    int best = -1, gain = -1;
    for (int v = 0; v < a.n; ++v) {
      if ((chosen >> v) & 1) continue;
      const int g = std::popcount((a.row[v] | (std::uint64_t{1} << v)) & undominated);
      if (g > gain) {
        gain = g;
        best = v;
      }
    }
    chosen |= std::uint64_t{1} << best;
    undominated &= ~(a.row[best] | (std::uint64_t{1} << best));
    picks.push_back(best);
  }
  return picks;
}

std::vector<Graph> Corpus(int count, int max_n, std::uint64_t seed, bool connected) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) {
    const int n = 1 + static_cast<int>(rng() % max_n);
    const double p = 0.15 + 0.5 * (rng() % 100) / 100.0;
    out.push_back(connected ? naive::random_connected_graph(n, p, rng)
                            : naive::random_graph(n, p, rng));
  }
  return out;
}

}  // namespace

TEST(ExactSolve, Examples) {
  const Graph p3 = naive::path(3);
  EXPECT_EQ(plbea::exact_solve(p3, ProblemKind::kMds).optimum_size, 1u);
  EXPECT_EQ(plbea::exact_solve(p3, ProblemKind::kMvc).optimum_size, 1u);
  EXPECT_EQ(plbea::exact_solve(p3, ProblemKind::kCds).optimum_size, 1u);
  EXPECT_EQ(plbea::exact_solve(p3, ProblemKind::kMis).optimum_size, 2u);
  const Graph tri = naive::complete(3);
  EXPECT_EQ(plbea::exact_solve(tri, ProblemKind::kMds).optimum_size, 1u);
  EXPECT_EQ(plbea::exact_solve(tri, ProblemKind::kMvc).optimum_size, 2u);
  EXPECT_EQ(plbea::exact_solve(tri, ProblemKind::kMis).optimum_size, 1u);
  const Graph star = naive::star(4);
  EXPECT_EQ(plbea::exact_solve(star, ProblemKind::kMds).optimum_size, 1u);
  EXPECT_EQ(plbea::exact_solve(star, ProblemKind::kMis).optimum_size, 4u);
  EXPECT_EQ(plbea::exact_solve(star, ProblemKind::kMis).method, OracleMethod::kExact);
}

TEST(ExactSolve, RefusesLargeInstances) {
  plbea::GenSpec spec;
  spec.n = 30;
  const Graph g = plbea::gen_preferential_attachment(spec);
  try {
    plbea::exact_solve(g, ProblemKind::kMds);
    FAIL();
  } catch (const plbea::RefusedError& e) {
    EXPECT_NE(std::string(e.what()).find("instance too large"), std::string::npos);
  }
  EXPECT_NO_THROW(plbea::exact_solve(naive::path(8), ProblemKind::kMds, 8));
  EXPECT_THROW(plbea::exact_solve(naive::path(9), ProblemKind::kMds, 8), plbea::RefusedError);
  EXPECT_THROW(plbea::exact_solve(naive::empty(3), ProblemKind::kCds), plbea::UsageError);
}

TEST(ExactSolve, AgreesWithEnumeration) {
  auto graphs = naive::named_graphs();
  for (auto& g : Corpus(150, 12, 1, false)) graphs.push_back(std::move(g));
  for (const Graph& g : graphs) {
    const naive::Adj a(g);
    for (auto kind : kAll) {
      if (kind == ProblemKind::kCds && !g.is_connected()) continue;
      const auto r = plbea::exact_solve(g, kind);
      ASSERT_EQ(static_cast<int>(r.optimum_size), naive::optimum(a, kind))
          << plbea::ProblemName(kind) << " n=" << a.n << " m=" << g.num_edges();
      EXPECT_EQ(r.witness.ones(), r.optimum_size);
      EXPECT_TRUE(naive::feasible(a, Mask(r.witness), kind));
    }
  }
}

TEST(ExactSolve, MaximumIndependentSetDominates) {
  for (const Graph& g : Corpus(100, 14, 2, false)) {
    const auto r = plbea::exact_solve(g, ProblemKind::kMis);
    EXPECT_EQ(plbea::undominated_count(g, r.witness), 0u);
  }
}

TEST(ExactSolve, HandlesTwentySixVertices) {
  plbea::GenSpec spec;
  spec.n = 26;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    spec.seed = seed;
    const Graph g = plbea::gen_preferential_attachment(spec);
    for (auto kind : kAll) {
      const auto r = plbea::exact_solve(g, kind);
      EXPECT_TRUE(plbea::is_feasible(g, r.witness, Problem{kind}));
      EXPECT_EQ(r.witness.ones(), r.optimum_size);
      const auto b = plbea::size_bounds(g, kind);
      EXPECT_LE(b.lower, r.optimum_size);
      EXPECT_GE(b.upper, r.optimum_size);
    }
  }
}

TEST(GreedyMds, Examples) {
  const auto star = plbea::greedy_mds(naive::star(4));
  EXPECT_EQ(star.optimum_size, 1u);
  EXPECT_EQ(star.picks, std::vector<plbea::Vertex>{0});
  EXPECT_EQ(star.trace, std::vector<std::size_t>{0});
  EXPECT_EQ(star.method, OracleMethod::kGreedy);
  EXPECT_EQ(plbea::greedy_mds(naive::path(3)).picks, std::vector<plbea::Vertex>{1});
  EXPECT_EQ(plbea::greedy_mds(naive::complete(2)).optimum_size, 1u);
}

TEST(GreedyMds, MatchesReferenceGreedy) {
  for (const Graph& g : Corpus(200, 30, 3, false)) {
    const naive::Adj a(g);
    const auto r = plbea::greedy_mds(g);
    const auto ref = RefGreedyMds(a);
    ASSERT_EQ(r.picks.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(static_cast<int>(r.picks[i]), ref[i]);
    EXPECT_EQ(plbea::undominated_count(g, r.witness), 0u);
    ASSERT_EQ(r.trace.size(), r.picks.size());
    Solution partial(g.num_vertices());
    for (std::size_t j = 0; j < r.picks.size(); ++j) {
      partial.set(r.picks[j], true);
      EXPECT_EQ(r.trace[j], plbea::undominated_count(g, partial));
    }
  }
}

TEST(GreedyCds, Examples) {
  const auto p3 = plbea::greedy_cds(naive::path(3));
  EXPECT_EQ(p3.picks, std::vector<plbea::Vertex>{1});
  EXPECT_EQ(p3.trace, std::vector<std::size_t>{1});
  const auto p5 = plbea::greedy_cds(naive::path(5));
  EXPECT_EQ(p5.optimum_size, 3u);
  EXPECT_EQ(p5.witness, Solution::FromVertices(5, {1, 2, 3}));
  EXPECT_EQ(plbea::greedy_cds(naive::complete(2)).optimum_size, 1u);
  EXPECT_THROW(plbea::greedy_cds(naive::empty(2)), plbea::UsageError);
}

TEST(GreedyCds, ProducesConnectedDominatingSets) {
  for (const Graph& g : Corpus(200, 25, 4, true)) {
    const auto r = plbea::greedy_cds(g);
    EXPECT_TRUE(plbea::is_feasible(g, r.witness, Problem{ProblemKind::kCds}));
    Solution partial(g.num_vertices());
    for (std::size_t j = 0; j < r.picks.size(); ++j) {
      partial.set(r.picks[j], true);
      EXPECT_EQ(r.trace[j], plbea::undominated_count(g, partial) +
                                plbea::selected_component_count(g, partial));
    }
    EXPECT_EQ(r.trace.back(), 1u);
  }
}

TEST(GreedyCds, StepInequalityWhereOptimumIsKnown) {
  int checked = 0;
  for (const Graph& g : Corpus(150, 14, 5, true)) {
    const auto r = plbea::greedy_cds(g);
    const double opt = static_cast<double>(plbea::exact_solve(g, ProblemKind::kCds).optimum_size);
    double prev = static_cast<double>(g.num_vertices());  // f(empty) = u + w = n
    for (std::size_t f : r.trace) {
      EXPECT_LE(static_cast<double>(f), prev - prev / opt + 1 + 1e-9);
      prev = static_cast<double>(f);
      ++checked;
    }
  }
  EXPECT_GT(checked, 150);
}

TEST(GreedyMis, Examples) {
  const auto star = plbea::greedy_mis(naive::star(4));
  EXPECT_EQ(star.optimum_size, 4u);
  EXPECT_EQ(star.witness, Solution::FromVertices(5, {1, 2, 3, 4}));
  EXPECT_EQ(plbea::greedy_mis(naive::complete(3)).optimum_size, 1u);
  const auto p3 = plbea::greedy_mis(naive::path(3));
  EXPECT_EQ(p3.optimum_size, 2u);
  EXPECT_EQ(p3.picks, (std::vector<plbea::Vertex>{0, 2}));
}

TEST(GreedyMis, MaximalAndAboveAverageDegreeBound) {
  for (const Graph& g : Corpus(300, 40, 6, false)) {
    const auto r = plbea::greedy_mis(g);
    EXPECT_EQ(plbea::conflict_count(g, r.witness), 0u);
    EXPECT_EQ(plbea::undominated_count(g, r.witness), 0u);  // maximal
    const double n = static_cast<double>(g.num_vertices());
    const double avg = static_cast<double>(g.degree_sum()) / n;
    EXPECT_GE(static_cast<double>(r.optimum_size), n / (avg + 1) - 1e-9);
  }
}

TEST(ThreeLocalOptimum, Examples) {
  const Graph p3 = naive::path(3);
  EXPECT_TRUE(plbea::is_3_local_optimum(p3, Solution::FromVertices(3, {0, 2})).is_local_optimum);
  const auto bad = plbea::is_3_local_optimum(p3, Solution::FromVertices(3, {1}));
  EXPECT_FALSE(bad.is_local_optimum);
  EXPECT_EQ(bad.remove, std::vector<plbea::Vertex>{1});
  EXPECT_EQ(bad.add, (std::vector<plbea::Vertex>{0, 2}));
  EXPECT_TRUE(
      plbea::is_3_local_optimum(naive::empty(1), Solution::FromVertices(1, {0})).is_local_optimum);
  EXPECT_THROW(plbea::is_3_local_optimum(p3, Solution::FromVertices(3, {0, 1})),
               plbea::UsageError);
}

TEST(ThreeLocalOptimum, AgreesWithLiteralEnumeration) {
  auto graphs = naive::named_graphs();
  for (auto& g : Corpus(120, 8, 7, false)) graphs.push_back(std::move(g));
  for (const Graph& g : graphs) {
    const naive::Adj a(g);
    for (std::uint64_t s = 0; s <= a.all(); ++s) {
      if (naive::conflicts(a, s) == 0) {
        const Solution x = Solution::FromMask(a.n, s);
        const auto r = plbea::is_3_local_optimum(g, x);
        ASSERT_EQ(r.is_local_optimum, naive::three_local(a, s)) << x.to_string();
        if (!r.is_local_optimum) {
          Solution y = x;
          for (auto v : r.remove) {
            ASSERT_TRUE(x.test(v));
            y.set(v, false);
          }
          for (auto v : r.add) {
            ASSERT_FALSE(x.test(v));
            y.set(v, true);
          }
          ASSERT_LE(r.remove.size() + r.add.size(), 3u);
          EXPECT_GT(naive::mis_value(a, Mask(y)), naive::mis_value(a, s));
        }
      }
      if (s == a.all()) break;
    }
  }
}

TEST(SizeBounds, Examples) {
  const auto star = plbea::size_bounds(naive::star(4), ProblemKind::kMds);
  EXPECT_EQ(star.lower, 1u);
  EXPECT_EQ(star.upper, 1u);
  const auto tri = plbea::size_bounds(naive::complete(3), ProblemKind::kMvc);
  EXPECT_EQ(tri.lower, 1u);
  EXPECT_EQ(tri.upper, 2u);
  const auto k2 = plbea::size_bounds(naive::complete(2), ProblemKind::kMis);
  EXPECT_EQ(k2.lower, 1u);
  EXPECT_EQ(k2.upper, 1u);
}

TEST(SizeBounds, BracketTheOptimum) {
  for (const Graph& g : Corpus(200, 14, 8, true)) {
    for (auto kind : kAll) {
      const auto b = plbea::size_bounds(g, kind);
      const auto opt = plbea::exact_solve(g, kind).optimum_size;
      EXPECT_LE(b.lower, opt) << plbea::ProblemName(kind);
      EXPECT_GE(b.upper, opt) << plbea::ProblemName(kind);
    }
  }
}

TEST(GreedyMdsRecurrence, Examples) {
  EXPECT_TRUE(plbea::verify_greedy_mds_recurrence(naive::star(4)));
  EXPECT_TRUE(plbea::verify_greedy_mds_recurrence(naive::path(3)));
  plbea::GenSpec spec;
  spec.n = 30;
  EXPECT_THROW(plbea::verify_greedy_mds_recurrence(plbea::gen_preferential_attachment(spec)),
               plbea::RefusedError);
}

TEST(GreedyMdsRecurrence, HoldsOnRandomGraphs) {
  for (const Graph& g : Corpus(100, 16, 9, false)) {
    EXPECT_TRUE(plbea::verify_greedy_mds_recurrence(g));
  }
}

TEST(Oracles, DefaultLimitFromEnvironment) {
  EXPECT_EQ(plbea::kDefaultExactLimit, 26u);
  ::setenv("PLBEA_EXACT_LIMIT", "7", 1);
  EXPECT_EQ(plbea::DefaultExactLimit(), 7u);
  ::unsetenv("PLBEA_EXACT_LIMIT");
  EXPECT_EQ(plbea::DefaultExactLimit(), 26u);
}

TEST(Oracles, JsonOutput) {
  const auto j = plbea::to_json(plbea::greedy_mds(naive::star(4)));
  EXPECT_EQ(j["method"], "greedy");
  EXPECT_EQ(j["optimum_size"], 1);
  EXPECT_EQ(j["problem"], "mds");
}
