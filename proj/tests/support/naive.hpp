#pragma once

// Brute-force reference implementations used to cross-check the library.
// Everything here works from an adjacency matrix built straight from the edge
// list and enumerates subsets as bit masks; nothing calls into plbea beyond
// reading the graph's edges.

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "plbea/fitness.hpp"
#include "plbea/graph.hpp"

namespace naive {

struct Adj {
  int n = 0;
  std::vector<std::uint64_t> row;  // row[v] bit u set iff {u, v} is an edge

  explicit Adj(const plbea::Graph& g) : n(static_cast<int>(g.num_vertices())), row(n, 0) {
    for (const auto& [u, v] : g.edges()) {
      row[u] |= std::uint64_t{1} << v;
      row[v] |= std::uint64_t{1} << u;
    }
  }

  [[nodiscard]] bool edge(int u, int v) const { return (row[u] >> v) & 1; }
  [[nodiscard]] std::uint64_t all() const {
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }
  [[nodiscard]] int degree(int v) const { return std::popcount(row[v]); }
};

inline int size(std::uint64_t s) { return std::popcount(s); }

inline int undominated(const Adj& a, std::uint64_t s) {
  int count = 0;
  for (int v = 0; v < a.n; ++v) {
    const bool self = (s >> v) & 1;
    if (!self && (a.row[v] & s) == 0) ++count;
  }
  return count;
}

inline int uncovered(const Adj& a, std::uint64_t s) {
  int count = 0;
  for (int u = 0; u < a.n; ++u) {
    for (int v = u + 1; v < a.n; ++v) {
      if (a.edge(u, v) && !((s >> u) & 1) && !((s >> v) & 1)) ++count;
    }
  }
  return count;
}

inline int conflicts(const Adj& a, std::uint64_t s) {
  int count = 0;
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      if (((s >> i) & 1) && ((s >> j) & 1) && a.edge(i, j)) ++count;
    }
  }
  return count;
}

// Flood fill over the selected vertices.
inline int components(const Adj& a, std::uint64_t s) {
  int count = 0;
  std::uint64_t left = s;
  while (left) {
    std::uint64_t frontier = left & (~left + 1);
    std::uint64_t seen = 0;
    while (frontier) {
      seen |= frontier;
      std::uint64_t next = 0;
      for (int v = 0; v < a.n; ++v) {
        if ((frontier >> v) & 1) next |= a.row[v];
      }
      frontier = next & s & ~seen;
    }
    left &= ~seen;
    ++count;
  }
  return count;
}

inline bool feasible(const Adj& a, std::uint64_t s, plbea::ProblemKind p) {
  switch (p) {
    case plbea::ProblemKind::kMds:
      return undominated(a, s) == 0;
    case plbea::ProblemKind::kMvc:
      return uncovered(a, s) == 0;
    case plbea::ProblemKind::kCds:
      return undominated(a, s) == 0 && components(a, s) == 1;
    case plbea::ProblemKind::kMis:
      return conflicts(a, s) == 0;
  }
  return false;
}

// Optimum size over all 2^n subsets; -1 when nothing is feasible.
inline int optimum(const Adj& a, plbea::ProblemKind p) {
  const bool maximize = p == plbea::ProblemKind::kMis;
  int best = -1;
  for (std::uint64_t s = 0; s <= a.all(); ++s) {
    if (!feasible(a, s, p)) continue;
    const int k = size(s);
    if (best < 0 || (maximize ? k > best : k < best)) best = k;
    if (s == a.all()) break;
  }
  return best;
}

inline long long mis_value(const Adj& a, std::uint64_t s) {
  return size(s) - static_cast<long long>(a.n) * conflicts(a, s);
}

// Literal reading of the 3-local optimum definition: every U inside S and T
// outside S with |U| + |T| <= 3.
inline bool three_local(const Adj& a, std::uint64_t s) {
  const long long base = mis_value(a, s);
  const std::uint64_t out = a.all() & ~s;
  for (std::uint64_t u = s;; u = (u - 1) & s) {
    for (std::uint64_t t = out;; t = (t - 1) & out) {
      if (size(u) + size(t) <= 3 && (u | t) != 0) {
        if (mis_value(a, (s & ~u) | t) > base) return false;
      }
      if (t == 0) break;
    }
    if (u == 0) break;
  }
  return true;
}

inline plbea::Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<plbea::Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return plbea::Graph(static_cast<std::size_t>(n), edges);
}

inline plbea::Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  for (;;) {
    plbea::Graph g = random_graph(n, p, rng);
    if (g.is_connected()) return g;
  }
}

inline plbea::Graph path(int n) {
  std::vector<plbea::Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return plbea::Graph(static_cast<std::size_t>(n), e);
}

inline plbea::Graph cycle(int n) {
  std::vector<plbea::Edge> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return plbea::Graph(static_cast<std::size_t>(n), e);
}

inline plbea::Graph star(int leaves) {
  std::vector<plbea::Edge> e;
  for (int v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return plbea::Graph(static_cast<std::size_t>(leaves + 1), e);
}

inline plbea::Graph complete(int n) {
  std::vector<plbea::Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return plbea::Graph(static_cast<std::size_t>(n), e);
}

inline plbea::Graph empty(int n) { return plbea::Graph(static_cast<std::size_t>(n), {}); }

inline plbea::Graph petersen() {
  std::vector<plbea::Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return plbea::Graph(10, e);
}

// Named small graphs used by several suites.
inline std::vector<plbea::Graph> named_graphs() {
  std::vector<plbea::Graph> out;
  for (int n = 1; n <= 8; ++n) {
    out.push_back(path(n));
    out.push_back(complete(n));
    out.push_back(empty(n));
    if (n >= 3) out.push_back(cycle(n));
    if (n >= 2) out.push_back(star(n - 1));
  }
  out.push_back(petersen());
  return out;
}

}  // namespace naive
