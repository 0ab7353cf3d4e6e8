#include "plbea/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "plbea/errors.hpp"
#include "plbea/rng.hpp"

namespace plbea {

std::string ModelName(GraphModel model) {
  switch (model) {
    case GraphModel::kPreferentialAttachment:
      return "pa";
    case GraphModel::kChungLu:
      return "chung-lu";
    case GraphModel::kEdgeList:
      return "edge-list";
  }
  return "unknown";
}

GraphModel ParseModel(const std::string& name) {
  if (name == "pa") return GraphModel::kPreferentialAttachment;
  if (name == "chung-lu") return GraphModel::kChungLu;
  if (name == "edge-list") return GraphModel::kEdgeList;
  throw UsageError("unknown graph model '" + name + "' (expected pa|chung-lu|edge-list)");
}

Graph gen_preferential_attachment(const GenSpec& spec) {
  const std::size_t n = spec.n;
  const std::size_t m = spec.attach_m;
  if (m < 1 || m >= n) {
    throw UsageError("preferential attachment needs 1 <= attach_m < n (attach_m = " +
                     std::to_string(m) + ", n = " + std::to_string(n) + ")");
  }
  Rng rng(spec.seed);
  std::vector<Edge> edges;
  edges.reserve(m * (m + 1) / 2 + m * (n - m - 1));
  // Each vertex appears once per incident edge, so a uniform draw from this
  // list samples proportionally to degree.
  std::vector<Vertex> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (Vertex u = 0; u <= m; ++u) {
    for (Vertex v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<Vertex> targets;
  for (auto v = static_cast<Vertex>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const Vertex pick = endpoints[rng.Below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (Vertex u : targets) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return Graph(n, edges);
}

double chung_lu_pair_probability(double w_u, double w_v, double weight_sum) {
  return std::min(1.0, w_u * w_v / weight_sum);
}

Graph gen_chung_lu(const GenSpec& spec) {
  if (!(spec.beta_target > 2.0) || !std::isfinite(spec.beta_target)) {
    throw UsageError("Chung-Lu needs beta_target > 2, got " + std::to_string(spec.beta_target));
  }
  const std::size_t n = spec.n;
  if (n < 2) throw UsageError("Chung-Lu needs n >= 2");
  const double exponent = 1.0 / (spec.beta_target - 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::pow(static_cast<double>(n) / static_cast<double>(i + 1), exponent);
    total += w[i];
  }
  Rng rng(spec.seed);
  std::vector<Edge> raw;
  std::vector<std::uint8_t> touched(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      // One draw per pair keeps the stream layout independent of outcomes.
      if (rng.Uniform01() < chung_lu_pair_probability(w[u], w[v], total)) {
        raw.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        touched[u] = touched[v] = 1;
      }
    }
  }
  std::vector<Vertex> remap(n, 0);
  Vertex next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (touched[v]) remap[v] = next++;
  }
  for (auto& [u, v] : raw) {
    u = remap[u];
    v = remap[v];
  }
  return Graph(next, raw);
}

Graph generate(const GenSpec& spec) {
  switch (spec.model) {
    case GraphModel::kPreferentialAttachment:
      return gen_preferential_attachment(spec);
    case GraphModel::kChungLu:
      return gen_chung_lu(spec);
    case GraphModel::kEdgeList:
      return load_edge_list(spec.path);
  }
  throw UsageError("unknown graph model");
}

namespace {

Vertex ParseVertexToken(const std::string& token, std::size_t line_no) {
  const bool digits = !token.empty() &&
                      std::all_of(token.begin(), token.end(),
                                  [](unsigned char c) { return std::isdigit(c) != 0; });
  if (!digits || token.size() > 9) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + token +
                     "' is not a non-negative integer vertex id");
  }
  return static_cast<Vertex>(std::stoul(token));
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first.front() == '#') {
      // "# n=<count>" keeps trailing isolated vertices.
      std::string rest;
      if (first == "#" && fields >> rest && rest.rfind("n=", 0) == 0) {
        n = std::max<std::size_t>(n, ParseVertexToken(rest.substr(2), line_no));
      }
      continue;
    }
    std::string second;
    if (!(fields >> second)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected two vertex ids");
    }
    std::string extra;
    if (fields >> extra) {
      throw ParseError("line " + std::to_string(line_no) + ": unexpected token '" + extra + "'");
    }
    const Vertex u = ParseVertexToken(first, line_no);
    const Vertex v = ParseVertexToken(second, line_no);
    if (u == v) {
      throw ParseError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                       std::to_string(u));
    }
    n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
    edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path.string() + "'");
  return parse_edge_list(in);
}

nlohmann::json graph_to_json(const Graph& g, const nlohmann::json& meta) {
  nlohmann::json j;
  j["n"] = g.num_vertices();
  auto edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  if (!meta.is_null()) j["meta"] = meta;
  return j;
}

Graph graph_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge entries must be [u, v] pairs");
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return Graph(n, edges);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed graph JSON: ") + ex.what());
  } catch (const UsageError& ex) {
    throw ParseError(std::string("invalid graph JSON: ") + ex.what());
  }
}

Graph load_graph_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError("'" + path.string() + "': " + ex.what());
  }
  return graph_from_json(j);
}

Graph load_graph(const std::filesystem::path& path) {
  if (path.extension() == ".json") return load_graph_json(path);
  return load_edge_list(path);
}

nlohmann::json generator_meta(const GenSpec& spec) {
  nlohmann::json params;
  params["n"] = spec.n;
  switch (spec.model) {
    case GraphModel::kPreferentialAttachment:
      params["attach_m"] = spec.attach_m;
      break;
    case GraphModel::kChungLu:
      params["beta_target"] = spec.beta_target;
      break;
    case GraphModel::kEdgeList:
      params["path"] = spec.path.string();
      break;
  }
  return {{"model", ModelName(spec.model)},
          {"params", params},
          {"seed", spec.seed},
          {"generator-id", std::string(Rng::kGeneratorId)}};
}

}  // namespace plbea
