#include "plbea/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>

#include "plbea/errors.hpp"

namespace plbea {
namespace {

using Mask = std::uint64_t;

constexpr std::size_t kMaskCapacity = 64;

Mask Bit(std::size_t v) { return Mask{1} << v; }
std::size_t Count(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }
std::size_t Lowest(Mask m) { return static_cast<std::size_t>(std::countr_zero(m)); }
// Vertices with id > v.
Mask Above(std::size_t v) { return v + 1 >= kMaskCapacity ? 0 : ~(Bit(v + 1) - 1); }

struct BitGraph {
  std::size_t n = 0;
  Mask all = 0;
  std::vector<Mask> open;    // N(v)
  std::vector<Mask> closed;  // N[v]

  explicit BitGraph(const Graph& g) : n(g.num_vertices()), open(n, 0), closed(n, 0) {
    all = n == kMaskCapacity ? ~Mask{0} : Bit(n) - 1;
    for (auto [u, v] : g.edges()) {
      open[u] |= Bit(v);
      open[v] |= Bit(u);
    }
    for (std::size_t v = 0; v < n; ++v) closed[v] = open[v] | Bit(v);
  }
};

Solution MaskToSolution(std::size_t n, Mask m) { return Solution::FromMask(n, m); }

// ---- minimum dominating set -------------------------------------------------

class MdsSearch {
 public:
  explicit MdsSearch(const BitGraph& bg) : bg_(bg) {
    for (std::size_t v = 0; v < bg.n; ++v) max_cover_ = std::max(max_cover_, Count(bg.closed[v]));
  }

  Mask Solve(Mask incumbent) {
    best_ = incumbent;
    best_size_ = Count(incumbent);
    Recurse(0, 0, 0);
    return best_;
  }

 private:
  void Recurse(Mask chosen, Mask dominated, Mask excluded) {
    const Mask undominated = bg_.all & ~dominated;
    const std::size_t size = Count(chosen);
    if (undominated == 0) {
      if (size < best_size_) {
        best_ = chosen;
        best_size_ = size;
      }
      return;
    }
    if (size + 1 >= best_size_) return;
    // Lower bound: each further vertex dominates at most max_cover_ new ones.
    const std::size_t remaining = Count(undominated);
    if (size + (remaining + max_cover_ - 1) / max_cover_ >= best_size_) return;

    // Branch on the undominated vertex with the fewest admissible dominators.
    std::size_t pivot = 0;
    std::size_t fewest = kMaskCapacity + 1;
    for (Mask u = undominated; u; u &= u - 1) {
      const std::size_t v = Lowest(u);
      const std::size_t options = Count(bg_.closed[v] & ~excluded);
      if (options == 0) return;
      if (options < fewest) {
        fewest = options;
        pivot = v;
      }
    }
    std::vector<std::size_t> candidates;
    for (Mask c = bg_.closed[pivot] & ~excluded; c; c &= c - 1) candidates.push_back(Lowest(c));
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return Count(bg_.closed[a] & undominated) > Count(bg_.closed[b] & undominated);
    });
    Mask banned = excluded;
    for (std::size_t w : candidates) {
      Recurse(chosen | Bit(w), dominated | bg_.closed[w], banned);
      banned |= Bit(w);
    }
  }

  const BitGraph& bg_;
  std::size_t max_cover_ = 1;
  Mask best_ = 0;
  std::size_t best_size_ = 0;
};

// ---- minimum vertex cover ---------------------------------------------------

class MvcSearch {
 public:
  explicit MvcSearch(const BitGraph& bg) : bg_(bg) {}

  Mask Solve() {
    best_ = bg_.all;
    best_size_ = Count(best_);
    Recurse(0);
    return best_;
  }

 private:
  // Greedy maximal matching in the graph left after removing `cover`.
  std::size_t MatchingBound(Mask cover) const {
    Mask used = cover;
    std::size_t matched = 0;
    for (std::size_t u = 0; u < bg_.n; ++u) {
      if (used & Bit(u)) continue;
      const Mask free_nb = bg_.open[u] & ~used;
      if (free_nb) {
        used |= Bit(u) | Bit(Lowest(free_nb));
        ++matched;
      }
    }
    return matched;
  }

  void Recurse(Mask cover) {
    const std::size_t size = Count(cover);
    std::size_t pivot = bg_.n;
    std::size_t pivot_degree = 0;
    for (std::size_t v = 0; v < bg_.n; ++v) {
      if (cover & Bit(v)) continue;
      const std::size_t d = Count(bg_.open[v] & ~cover);
      if (d > pivot_degree) {
        pivot_degree = d;
        pivot = v;
      }
    }
    if (pivot == bg_.n) {  // no uncovered edge left
      if (size < best_size_) {
        best_ = cover;
        best_size_ = size;
      }
      return;
    }
    if (size + MatchingBound(cover) >= best_size_) return;
    Recurse(cover | Bit(pivot));
    Recurse(cover | (bg_.open[pivot] & ~cover));
  }

  const BitGraph& bg_;
  Mask best_ = 0;
  std::size_t best_size_ = 0;
};

// ---- minimum connected dominating set --------------------------------------

// Enumerates connected vertex sets with the ESU scheme (each set exactly once,
// rooted at its lowest vertex) and stops at the first dominating one of the
// requested size.
class CdsSearch {
 public:
  explicit CdsSearch(const BitGraph& bg) : bg_(bg) {
    for (std::size_t v = 0; v < bg.n; ++v) max_cover_ = std::max(max_cover_, Count(bg.closed[v]));
  }

  std::optional<Mask> FindOfSize(std::size_t k) {
    k_ = k;
    for (std::size_t root = 0; root < bg_.n; ++root) {
      const Mask ext = bg_.open[root] & Above(root);
      if (Extend(Bit(root), bg_.closed[root], ext, root)) return found_;
    }
    return std::nullopt;
  }

 private:
  bool Extend(Mask sub, Mask sub_closed, Mask ext, std::size_t root) {
    const std::size_t size = Count(sub);
    const Mask undominated = bg_.all & ~sub_closed;
    if (undominated == 0) {
      found_ = sub;
      return true;
    }
    if (size == k_) return false;
    if (Count(undominated) > (k_ - size) * max_cover_) return false;
    while (ext) {
      const std::size_t w = Lowest(ext);
      ext &= ext - 1;
      const Mask exclusive = bg_.open[w] & ~sub_closed & Above(root);
      if (Extend(sub | Bit(w), sub_closed | bg_.closed[w], ext | exclusive, root)) return true;
    }
    return false;
  }

  const BitGraph& bg_;
  std::size_t max_cover_ = 1;
  std::size_t k_ = 0;
  Mask found_ = 0;
};

// Component labels of the subgraph induced by `in_set`; -1 outside it.
std::vector<int> ComponentLabels(const Graph& g, const std::vector<std::uint8_t>& in_set,
                                 std::size_t* count) {
  std::vector<int> label(g.num_vertices(), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (!in_set[s] || label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (in_set[w] && label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  *count = static_cast<std::size_t>(next);
  return label;
}

}  // namespace

std::string OracleMethodName(OracleMethod method) {
  switch (method) {
    case OracleMethod::kExact:
      return "exact";
    case OracleMethod::kGreedy:
      return "greedy";
    case OracleMethod::kBound:
      return "bound";
  }
  return "unknown";
}

std::size_t DefaultExactLimit() {
  if (const char* env = std::getenv("PLBEA_EXACT_LIMIT")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultExactLimit;
}

OracleResult exact_solve(const Graph& g, ProblemKind problem, std::size_t limit) {
  const std::size_t n = g.num_vertices();
  limit = std::min(limit, kMaskCapacity);
  if (n > limit) {
    throw RefusedError("instance too large for exact solving: n = " + std::to_string(n) +
                       " exceeds the limit of " + std::to_string(limit));
  }
  if (problem == ProblemKind::kCds && !g.is_connected()) {
    throw UsageError("CDS exact solve needs a connected graph");
  }
  const BitGraph bg(g);
  Mask best = 0;
  switch (problem) {
    case ProblemKind::kMds: {
      const auto greedy = greedy_mds(g);
      Mask incumbent = 0;
      for (Vertex v : greedy.picks) incumbent |= Bit(v);
      best = MdsSearch(bg).Solve(incumbent);
      break;
    }
    case ProblemKind::kMvc:
      best = MvcSearch(bg).Solve();
      break;
    case ProblemKind::kMis:
      best = bg.all & ~MvcSearch(bg).Solve();
      break;
    case ProblemKind::kCds: {
      if (n == 0) break;
      const auto greedy = greedy_cds(g);
      best = 0;
      for (Vertex v : greedy.picks) best |= Bit(v);
      CdsSearch search(bg);
      for (std::size_t k = 1; k < greedy.optimum_size; ++k) {
        if (auto hit = search.FindOfSize(k)) {
          best = *hit;
          break;
        }
      }
      break;
    }
  }
  OracleResult r;
  r.problem = problem;
  r.method = OracleMethod::kExact;
  r.optimum_size = Count(best);
  r.witness = MaskToSolution(n, best);
  return r;
}

OracleResult greedy_mds(const Graph& g) {
  const std::size_t n = g.num_vertices();
  OracleResult r;
  r.problem = ProblemKind::kMds;
  r.method = OracleMethod::kGreedy;
  r.witness = Solution(n);
  std::vector<std::uint8_t> dominated(n, 0);
  std::size_t undominated = n;
  while (undominated > 0) {
    Vertex pick = 0;
    std::size_t best_gain = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (r.witness.test(v)) continue;
      std::size_t gain = dominated[v] ? 0 : 1;
      for (Vertex w : g.neighbors(v)) gain += dominated[w] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        pick = v;
      }
    }
    r.witness.set(pick, true);
    r.picks.push_back(pick);
    if (!dominated[pick]) {
      dominated[pick] = 1;
      --undominated;
    }
    for (Vertex w : g.neighbors(pick)) {
      if (!dominated[w]) {
        dominated[w] = 1;
        --undominated;
      }
    }
    r.trace.push_back(undominated);
  }
  r.optimum_size = r.picks.size();
  return r;
}

OracleResult greedy_cds(const Graph& g) {
  if (!g.is_connected()) throw UsageError("greedy_cds needs a connected graph");
  const std::size_t n = g.num_vertices();
  OracleResult r;
  r.problem = ProblemKind::kCds;
  r.method = OracleMethod::kGreedy;
  r.witness = Solution(n);
  if (n == 0) return r;

  std::vector<std::uint8_t> in_set(n, 0);
  std::vector<std::uint32_t> cover(n, 0);
  std::size_t undominated = n;
  std::size_t components = 0;
  std::vector<int> seen_label;
  while (undominated > 0 || components != 1) {
    const std::vector<int> label = ComponentLabels(g, in_set, &components);
    // f(S + v) - f(S) = -(newly dominated) + 1 - (distinct adjacent components)
    long best_decrease = 0;
    bool best_adjacent = false;
    std::optional<Vertex> pick;
    for (Vertex v = 0; v < n; ++v) {
      if (in_set[v]) continue;
      long newly = cover[v] == 0 ? 1 : 0;
      seen_label.clear();
      for (Vertex w : g.neighbors(v)) {
        if (cover[w] == 0) ++newly;
        if (label[w] >= 0 &&
            std::find(seen_label.begin(), seen_label.end(), label[w]) == seen_label.end()) {
          seen_label.push_back(label[w]);
        }
      }
      const bool adjacent = !seen_label.empty();
      const long decrease = newly - 1 + static_cast<long>(seen_label.size());
      if (!pick || decrease > best_decrease ||
          (decrease == best_decrease && adjacent && !best_adjacent)) {
        pick = v;
        best_decrease = decrease;
        best_adjacent = adjacent;
      }
    }
    const Vertex v = *pick;
    in_set[v] = 1;
    r.witness.set(v, true);
    r.picks.push_back(v);
    if (cover[v]++ == 0) --undominated;
    for (Vertex w : g.neighbors(v)) {
      if (cover[w]++ == 0) --undominated;
    }
    ComponentLabels(g, in_set, &components);
    r.trace.push_back(undominated + components);
  }
  r.optimum_size = r.picks.size();
  return r;
}

OracleResult greedy_mis(const Graph& g) {
  const std::size_t n = g.num_vertices();
  OracleResult r;
  r.problem = ProblemKind::kMis;
  r.method = OracleMethod::kGreedy;
  r.witness = Solution(n);
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::size_t> residual_degree(n);
  for (Vertex v = 0; v < n; ++v) residual_degree[v] = g.degree(v);
  std::size_t remaining = n;
  auto remove = [&](Vertex v) {
    alive[v] = 0;
    --remaining;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w]) --residual_degree[w];
    }
  };
  while (remaining > 0) {
    std::optional<Vertex> pick;
    for (Vertex v = 0; v < n; ++v) {
      if (alive[v] && (!pick || residual_degree[v] < residual_degree[*pick])) pick = v;
    }
    const Vertex v = *pick;
    r.witness.set(v, true);
    r.picks.push_back(v);
    std::vector<Vertex> doomed;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w]) doomed.push_back(w);
    }
    remove(v);
    for (Vertex w : doomed) remove(w);
    r.trace.push_back(remaining);
  }
  r.optimum_size = r.picks.size();
  return r;
}

LocalOptimumCheck is_3_local_optimum(const Graph& g, const Solution& x) {
  CheckLength(g, x);
  if (conflict_count(g, x) != 0) {
    throw UsageError("is_3_local_optimum needs an independent set");
  }
  const std::size_t n = g.num_vertices();
  // A move (U, T) keeps F from dropping below |S| only if the result stays
  // independent, so improving moves are exactly the independent swaps with
  // |T| > |U|: (0,1), (0,2), (0,3) and (1,2). Outside vertices are grouped
  // by their selected neighbors: free ones have none; `tight[u]` lists those
  // whose only selected neighbor is u.
  std::vector<Vertex> free;
  std::vector<std::vector<Vertex>> tight(n);
  for (Vertex v = 0; v < n; ++v) {
    if (x.test(v)) continue;
    std::size_t selected_nb = 0;
    Vertex only = 0;
    for (Vertex w : g.neighbors(v)) {
      if (x.test(w)) {
        ++selected_nb;
        only = w;
      }
    }
    if (selected_nb == 0) free.push_back(v);
    if (selected_nb == 1) tight[only].push_back(v);
  }
  LocalOptimumCheck out;
  if (!free.empty()) {
    out.is_local_optimum = false;
    out.add = {free.front()};
    return out;
  }
  for (Vertex u = 0; u < n; ++u) {
    const auto& candidates = tight[u];
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (!g.has_edge(candidates[i], candidates[j])) {
          out.is_local_optimum = false;
          out.remove = {u};
          out.add = {candidates[i], candidates[j]};
          return out;
        }
      }
    }
  }
  return out;
}

std::size_t greedy_matching_size(const Graph& g) {
  std::vector<std::uint8_t> used(g.num_vertices(), 0);
  std::size_t size = 0;
  for (auto [u, v] : g.edges()) {
    if (!used[u] && !used[v]) {
      used[u] = used[v] = 1;
      ++size;
    }
  }
  return size;
}

SizeBounds size_bounds(const Graph& g, ProblemKind problem) {
  const std::size_t n = g.num_vertices();
  const std::size_t mds_lower = n == 0 ? 0 : (n + g.max_degree()) / (g.max_degree() + 1);
  switch (problem) {
    case ProblemKind::kMds:
      return {mds_lower, greedy_mds(g).optimum_size};
    case ProblemKind::kMvc: {
      const std::size_t matching = greedy_matching_size(g);
      return {matching, 2 * matching};
    }
    case ProblemKind::kCds:
      return {mds_lower, greedy_cds(g).optimum_size};
    case ProblemKind::kMis:
      return {greedy_mis(g).optimum_size, n - greedy_matching_size(g)};
  }
  return {};
}

bool verify_greedy_mds_recurrence(const Graph& g, std::size_t limit) {
  const std::size_t opt = exact_solve(g, ProblemKind::kMds, limit).optimum_size;
  const auto greedy = greedy_mds(g);
  const auto n = static_cast<double>(g.num_vertices());
  const double shrink = 1.0 - 1.0 / static_cast<double>(opt);
  for (std::size_t k = 1; k <= greedy.trace.size(); ++k) {
    const double bound = n * std::pow(shrink, static_cast<double>(k));
    if (static_cast<double>(greedy.trace[k - 1]) > bound + 1e-9) return false;
  }
  return true;
}

nlohmann::json to_json(const OracleResult& r) {
  nlohmann::json j;
  j["problem"] = ProblemName(r.problem);
  j["method"] = OracleMethodName(r.method);
  j["optimum_size"] = r.optimum_size;
  j["witness"] = r.witness.selected();
  if (r.method == OracleMethod::kGreedy) {
    j["sequence_trace"] = {{"picks", r.picks}, {"residual", r.trace}};
  }
  return j;
}

}  // namespace plbea
