#include "plbea/graph.hpp"

#include <algorithm>
#include <string>

#include "plbea/errors.hpp"

namespace plbea {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw UsageError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a vertex >= n = " + std::to_string(n));
    }
    if (u == v) {
      throw UsageError("self-loop at vertex " + std::to_string(u));
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::size_t> deg(n, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Canonical edge order fills each list in ascending neighbor order for the
  // lower endpoint; a final sort covers the upper endpoint.
  for (auto [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    max_degree_ = std::max(max_degree_, deg[v]);
  }
}

void Graph::CheckVertex(Vertex v) const {
  if (v >= n_) {
    throw UsageError("vertex " + std::to_string(v) + " out of range for n = " +
                     std::to_string(n_));
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  CheckVertex(v);
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::degree(Vertex v) const {
  CheckVertex(v);
  return offsets_[v + 1] - offsets_[v];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  CheckVertex(v);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<std::uint8_t> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_;
}

Solution Solution::FromBits(std::span<const int> bits) {
  Solution x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) x.flip(static_cast<Vertex>(i));
  }
  return x;
}

Solution Solution::FromVertices(std::size_t n, std::span<const Vertex> selected) {
  Solution x(n);
  for (Vertex v : selected) {
    if (v >= n) throw UsageError("selected vertex " + std::to_string(v) + " >= n");
    x.set(v, true);
  }
  return x;
}

Solution Solution::FromMask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw UsageError("FromMask supports at most 64 vertices");
  Solution x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) x.flip(static_cast<Vertex>(i));
  }
  return x;
}

std::vector<Vertex> Solution::selected() const {
  std::vector<Vertex> out;
  out.reserve(ones_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<Vertex>(i));
  }
  return out;
}

std::string Solution::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

void CheckLength(const Graph& g, const Solution& x) {
  if (x.size() != g.num_vertices()) {
    throw UsageError("solution length " + std::to_string(x.size()) +
                     " does not match n = " + std::to_string(g.num_vertices()));
  }
}

DominationState::DominationState(const Graph& g, const Solution& x)
    : x_(x), cover_count_(g.num_vertices(), 0) {
  CheckLength(g, x);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!x.test(v)) continue;
    ++cover_count_[v];
    for (Vertex w : g.neighbors(v)) ++cover_count_[w];
  }
  undominated_ = static_cast<std::size_t>(
      std::count(cover_count_.begin(), cover_count_.end(), 0U));
}

void DominationState::apply_flip(const Graph& g, Vertex v) {
  auto nb = g.neighbors(v);  // range-checks v
  if (x_.test(v)) {
    if (--cover_count_[v] == 0) ++undominated_;
    for (Vertex w : nb) {
      if (--cover_count_[w] == 0) ++undominated_;
    }
  } else {
    if (cover_count_[v]++ == 0) --undominated_;
    for (Vertex w : nb) {
      if (cover_count_[w]++ == 0) --undominated_;
    }
  }
  x_.flip(v);
}

DominationState apply_flip(DominationState state, const Graph& g, Vertex v) {
  state.apply_flip(g, v);
  return state;
}

std::size_t degree(const Graph& g, Vertex v) { return g.degree(v); }

std::size_t undominated_count(const Graph& g, const Solution& x) {
  CheckLength(g, x);
  std::size_t count = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (x.test(v)) continue;
    auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](Vertex w) { return x.test(w); })) {
      ++count;
    }
  }
  return count;
}

std::size_t uncovered_edge_count(const Graph& g, const Solution& x) {
  CheckLength(g, x);
  std::size_t count = 0;
  for (auto [u, v] : g.edges()) {
    if (!x.test(u) && !x.test(v)) ++count;
  }
  return count;
}

std::size_t selected_component_count(const Graph& g, const Solution& x) {
  CheckLength(g, x);
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Vertex> stack;
  std::size_t components = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (!x.test(s) || seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (x.test(w) && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

std::size_t conflict_count(const Graph& g, const Solution& x) {
  CheckLength(g, x);
  std::size_t induced = 0;
  for (auto [u, v] : g.edges()) {
    if (x.test(u) && x.test(v)) ++induced;
  }
  return 2 * induced;
}

}  // namespace plbea
