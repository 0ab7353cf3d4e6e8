#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "plbea/graph.hpp"

namespace plbea {

enum class GraphModel { kPreferentialAttachment, kChungLu, kEdgeList };

struct GenSpec {
  GraphModel model = GraphModel::kPreferentialAttachment;
  std::size_t n = 100;
  std::size_t attach_m = 2;    // edges per new vertex (preferential attachment)
  double beta_target = 2.5;    // weight exponent (Chung-Lu)
  std::uint64_t seed = 1;
  std::filesystem::path path;  // edge-list input
};

std::string ModelName(GraphModel model);
GraphModel ParseModel(const std::string& name);

// Starts from a clique on attach_m + 1 vertices; each later vertex attaches
// to attach_m distinct existing vertices drawn proportionally to degree.
Graph gen_preferential_attachment(const GenSpec& spec);

// Pairs are edged independently with probability min(1, w_u w_v / sum w),
// w_i = (n / i)^(1 / (beta_target - 1)) for 1-based i. Isolated vertices are
// dropped and the rest re-indexed in order.
Graph gen_chung_lu(const GenSpec& spec);

double chung_lu_pair_probability(double w_u, double w_v, double weight_sum);

// Dispatches on spec.model.
Graph generate(const GenSpec& spec);

// "u v" per line, '#' comment lines and blank lines ignored, duplicates
// collapsed, n = largest id + 1 (or a "# n=<count>" comment if larger). Throws
// ParseError (with line number) on self-loops or non-integer tokens, IoError
// if the file cannot be read.
Graph load_edge_list(const std::filesystem::path& path);
Graph parse_edge_list(std::istream& in);

// {"n": N, "edges": [[u, v], ...]} with canonical edge order. `meta` is
// embedded under "meta" when non-null.
nlohmann::json graph_to_json(const Graph& g, const nlohmann::json& meta = nullptr);
Graph graph_from_json(const nlohmann::json& j);
Graph load_graph_json(const std::filesystem::path& path);

// Picks the JSON or edge-list reader by extension (.json -> JSON).
Graph load_graph(const std::filesystem::path& path);

// {"model", "params", "seed", "generator-id"}
nlohmann::json generator_meta(const GenSpec& spec);

}  // namespace plbea
