#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plbea/fitness.hpp"
#include "plbea/graph.hpp"

namespace plbea {

enum class OracleMethod { kExact, kGreedy, kBound };
std::string OracleMethodName(OracleMethod method);

struct OracleResult {
  ProblemKind problem = ProblemKind::kMds;
  std::size_t optimum_size = 0;
  Solution witness;
  OracleMethod method = OracleMethod::kExact;
  // Greedy only: vertices in pick order, and after pick j the residual
  // quantity (undominated count n_j for MDS, f(S_j) = u + w for CDS, vertices
  // left in the residual graph for MIS).
  std::vector<Vertex> picks;
  std::vector<std::size_t> trace;
};

inline constexpr std::size_t kDefaultExactLimit = 26;

// PLBEA_EXACT_LIMIT if set, else kDefaultExactLimit.
std::size_t DefaultExactLimit();

// Exact optimum by branch and bound. Throws RefusedError when n > limit
// (limit itself is capped at 64), UsageError for CDS on a disconnected graph.
OracleResult exact_solve(const Graph& g, ProblemKind problem,
                         std::size_t limit = DefaultExactLimit());

// Repeatedly adds the vertex dominating the most still-undominated vertices
// (ties: lowest id) until everything is dominated.
OracleResult greedy_mds(const Graph& g);

// Repeatedly adds the vertex with the largest decrease of u + w (ties: a
// vertex adjacent to the current set, then lowest id) until the set is a
// connected dominating set. Throws UsageError on a disconnected graph.
OracleResult greedy_cds(const Graph& g);

// Repeatedly takes a minimum-degree vertex of the residual graph (ties:
// lowest id) and deletes its closed neighborhood.
OracleResult greedy_mis(const Graph& g);

struct LocalOptimumCheck {
  bool is_local_optimum = true;
  // Improving move when !is_local_optimum: (S \ remove) + add.
  std::vector<Vertex> remove;
  std::vector<Vertex> add;
};

// 3-local optimality of an independent set under the MIS scalar fitness.
// Throws UsageError when x is not independent.
LocalOptimumCheck is_3_local_optimum(const Graph& g, const Solution& x);

struct SizeBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
};

SizeBounds size_bounds(const Graph& g, ProblemKind problem);

// Maximal matching built by scanning edges in canonical order.
std::size_t greedy_matching_size(const Graph& g);

// n_k <= n (1 - 1/|OPT|)^k along the greedy_mds trace, with OPT from
// exact_solve. Throws RefusedError above the limit.
bool verify_greedy_mds_recurrence(const Graph& g, std::size_t limit = DefaultExactLimit());

nlohmann::json to_json(const OracleResult& r);

}  // namespace plbea
