#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plbea {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Immutable undirected simple graph. Edges are stored canonically (u < v,
// sorted, unique); adjacency is a CSR layout with sorted neighbor lists.
class Graph {
 public:
  Graph() = default;

  // Duplicate edges (in either orientation) are collapsed. Throws UsageError
  // on self-loops or endpoints >= n.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  [[nodiscard]] std::size_t num_vertices() const noexcept { return n_; }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const;
  [[nodiscard]] std::size_t degree(Vertex v) const;
  [[nodiscard]] std::size_t max_degree() const noexcept { return max_degree_; }
  [[nodiscard]] std::size_t degree_sum() const noexcept { return 2 * edges_.size(); }
  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const;
  [[nodiscard]] bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void CheckVertex(Vertex v) const;

  std::size_t n_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

// Length-n bit vector selecting a vertex subset. Keeps its popcount cached.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::size_t n, bool value = false)
      : bits_(n, value ? 1 : 0), ones_(value ? n : 0) {}

  static Solution FromBits(std::span<const int> bits);
  static Solution FromVertices(std::size_t n, std::span<const Vertex> selected);
  static Solution FromVertices(std::size_t n, std::initializer_list<Vertex> selected) {
    return FromVertices(n, std::span<const Vertex>(selected.begin(), selected.size()));
  }
  // Bits of `mask` (bit i = vertex i); n <= 64.
  static Solution FromMask(std::size_t n, std::uint64_t mask);

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] std::size_t ones() const noexcept { return ones_; }
  [[nodiscard]] bool test(Vertex v) const noexcept { return bits_[v] != 0; }
  [[nodiscard]] bool operator[](Vertex v) const noexcept { return bits_[v] != 0; }

  void flip(Vertex v) noexcept {
    bits_[v] ^= 1;
    if (bits_[v]) {
      ++ones_;
    } else {
      --ones_;
    }
  }
  void set(Vertex v, bool value) noexcept {
    if (test(v) != value) flip(v);
  }

  [[nodiscard]] std::vector<Vertex> selected() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Solution& a, const Solution& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const Solution& a, const Solution& b) { return a.bits_ < b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t ones_ = 0;
};

// Incremental cache of closed-neighborhood cover counts for u(x).
class DominationState {
 public:
  DominationState(const Graph& g, const Solution& x);

  [[nodiscard]] std::size_t undominated() const noexcept { return undominated_; }
  [[nodiscard]] std::size_t cover_count(Vertex v) const { return cover_count_.at(v); }
  [[nodiscard]] const Solution& solution() const noexcept { return x_; }

  // Toggles bit v and updates the counts of N[v].
  void apply_flip(const Graph& g, Vertex v);

 private:
  Solution x_;
  std::vector<std::uint32_t> cover_count_;
  std::size_t undominated_ = 0;
};

std::size_t degree(const Graph& g, Vertex v);

// u(x): vertices with no selected vertex in their closed neighborhood.
std::size_t undominated_count(const Graph& g, const Solution& x);

// Edges with neither endpoint selected.
std::size_t uncovered_edge_count(const Graph& g, const Solution& x);

// w(x): components of the subgraph induced by the selected vertices; 0 for
// the empty selection.
std::size_t selected_component_count(const Graph& g, const Solution& x);

// sum_i x_i sum_j x_j e_ij, i.e. twice the number of induced edges.
std::size_t conflict_count(const Graph& g, const Solution& x);

// Value-semantics form of DominationState::apply_flip.
DominationState apply_flip(DominationState state, const Graph& g, Vertex v);

// Throws UsageError unless x.size() == g.num_vertices().
void CheckLength(const Graph& g, const Solution& x);

}  // namespace plbea
