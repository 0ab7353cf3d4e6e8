#include "plbea/fitness.hpp"

#include <algorithm>

#include "plbea/errors.hpp"

namespace plbea {
namespace {

void RequireConnected(const Graph& g) {
  if (!g.is_connected()) {
    throw UsageError("CDS fitness requires a connected graph (no CDS exists otherwise)");
  }
}

// u + w - 1, except that the empty selection on a single-vertex graph would
// score 0 and look feasible; it is pinned to 1 there. The bi-objective first
// component is this plus one, which equals u + w everywhere else.
std::int64_t CdsPenalty(std::size_t u, std::size_t w) {
  const auto raw = static_cast<std::int64_t>(u + w) - 1;
  return w == 0 ? std::max<std::int64_t>(raw, 1) : raw;
}

std::int64_t I(std::size_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::string ProblemName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kMds:
      return "mds";
    case ProblemKind::kMvc:
      return "mvc";
    case ProblemKind::kCds:
      return "cds";
    case ProblemKind::kMis:
      return "mis";
  }
  return "unknown";
}

ProblemKind ParseProblem(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "mds") return ProblemKind::kMds;
  if (lower == "mvc") return ProblemKind::kMvc;
  if (lower == "cds") return ProblemKind::kCds;
  if (lower == "mis") return ProblemKind::kMis;
  throw UsageError("unknown problem '" + name + "' (expected mds|mvc|cds|mis)");
}

std::string ReferenceKindName(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::kExact:
      return "exact";
    case ReferenceKind::kLowerBound:
      return "lower-bound";
    case ReferenceKind::kUpperBound:
      return "upper-bound";
  }
  return "unknown";
}

ReferenceKind ParseReferenceKind(const std::string& name) {
  if (name == "exact") return ReferenceKind::kExact;
  if (name == "lower-bound") return ReferenceKind::kLowerBound;
  if (name == "upper-bound") return ReferenceKind::kUpperBound;
  throw ParseError("unknown reference kind '" + name + "'");
}

std::int64_t mds_scalar(const Graph& g, const Solution& x) {
  return I(g.num_vertices()) * I(undominated_count(g, x)) + I(x.ones());
}

ObjectiveVector mds_bi(const Graph& g, const Solution& x) {
  return {I(undominated_count(g, x)), I(x.ones())};
}

std::int64_t mvc_scalar(const Graph& g, const Solution& x) {
  return (I(g.num_vertices()) + 1) * I(uncovered_edge_count(g, x)) + I(x.ones());
}

ObjectiveVector mvc_bi(const Graph& g, const Solution& x) {
  return {I(uncovered_edge_count(g, x)), I(x.ones())};
}

std::int64_t cds_scalar(const Graph& g, const Solution& x) {
  RequireConnected(g);
  const std::int64_t n = I(g.num_vertices());
  return n * n * CdsPenalty(undominated_count(g, x), selected_component_count(g, x)) +
         I(x.ones());
}

ObjectiveVector cds_bi(const Graph& g, const Solution& x) {
  RequireConnected(g);
  return {CdsPenalty(undominated_count(g, x), selected_component_count(g, x)) + 1,
          I(x.ones())};
}

std::int64_t mis_scalar(const Graph& g, const Solution& x) {
  return I(x.ones()) - I(g.num_vertices()) * I(conflict_count(g, x));
}

ObjectiveVector mis_bi(const Graph& g, const Solution& x) {
  return {I(x.ones()), -I(conflict_count(g, x))};
}

std::int64_t scalar_fitness(const Graph& g, const Solution& x, const Problem& p) {
  switch (p.kind) {
    case ProblemKind::kMds:
      return mds_scalar(g, x);
    case ProblemKind::kMvc:
      return p.mvc_penalty == MvcPenalty::kUncoveredEdges ? mvc_scalar(g, x) : mds_scalar(g, x);
    case ProblemKind::kCds:
      return cds_scalar(g, x);
    case ProblemKind::kMis:
      return mis_scalar(g, x);
  }
  throw UsageError("unknown problem");
}

ObjectiveVector bi_fitness(const Graph& g, const Solution& x, const Problem& p) {
  switch (p.kind) {
    case ProblemKind::kMds:
      return mds_bi(g, x);
    case ProblemKind::kMvc:
      return p.mvc_penalty == MvcPenalty::kUncoveredEdges ? mvc_bi(g, x) : mds_bi(g, x);
    case ProblemKind::kCds:
      return cds_bi(g, x);
    case ProblemKind::kMis:
      return mis_bi(g, x);
  }
  throw UsageError("unknown problem");
}

bool is_feasible(const Graph& g, const Solution& x, const Problem& p) {
  switch (p.kind) {
    case ProblemKind::kMds:
      return undominated_count(g, x) == 0;
    case ProblemKind::kMvc:
      return uncovered_edge_count(g, x) == 0;
    case ProblemKind::kCds:
      return undominated_count(g, x) == 0 && selected_component_count(g, x) == 1;
    case ProblemKind::kMis:
      return conflict_count(g, x) == 0;
  }
  return false;
}

ApproxRatio approx_ratio(std::size_t achieved, std::size_t reference, const Problem& p,
                         ReferenceKind kind) {
  if (achieved == 0 || reference == 0) {
    throw UsageError("approx_ratio needs positive sizes (achieved = " +
                     std::to_string(achieved) + ", reference = " +
                     std::to_string(reference) + ")");
  }
  ApproxRatio r{achieved, reference, 0.0, kind};
  const auto a = static_cast<double>(achieved);
  const auto ref = static_cast<double>(reference);
  r.ratio = p.sense() == Sense::kMinimize ? a / ref : ref / a;
  return r;
}

IncrementalEvaluator::IncrementalEvaluator(const Graph& g, const Problem& p,
                                           const Solution& x)
    : g_(&g), p_(p), dom_(g, x) {
  if (p.kind == ProblemKind::kCds) RequireConnected(g);
  uncovered_ = uncovered_edge_count(g, x);
  induced_ = conflict_count(g, x) / 2;
}

void IncrementalEvaluator::Reset(const Solution& x) {
  dom_ = DominationState(*g_, x);
  uncovered_ = uncovered_edge_count(*g_, x);
  induced_ = conflict_count(*g_, x) / 2;
  components_.reset();
}

void IncrementalEvaluator::Flip(Vertex v) {
  const Solution& x = dom_.solution();
  std::size_t selected_neighbors = 0;
  const auto nb = g_->neighbors(v);
  for (Vertex w : nb) selected_neighbors += x.test(w) ? 1 : 0;
  const std::size_t unselected_neighbors = nb.size() - selected_neighbors;
  if (x.test(v)) {
    uncovered_ += unselected_neighbors;
    induced_ -= selected_neighbors;
  } else {
    uncovered_ -= unselected_neighbors;
    induced_ += selected_neighbors;
  }
  dom_.apply_flip(*g_, v);
  components_.reset();
}

std::size_t IncrementalEvaluator::components() {
  if (!components_) components_ = selected_component_count(*g_, dom_.solution());
  return *components_;
}

std::int64_t IncrementalEvaluator::Scalar() {
  const std::int64_t n = I(g_->num_vertices());
  const std::int64_t ones = I(this->ones());
  switch (p_.kind) {
    case ProblemKind::kMds:
      return n * I(undominated()) + ones;
    case ProblemKind::kMvc:
      return p_.mvc_penalty == MvcPenalty::kUncoveredEdges
                 ? (n + 1) * I(uncovered_) + ones
                 : n * I(undominated()) + ones;
    case ProblemKind::kCds:
      return n * n * CdsPenalty(undominated(), components()) + ones;
    case ProblemKind::kMis:
      return ones - n * I(conflicts());
  }
  return 0;
}

ObjectiveVector IncrementalEvaluator::Bi() {
  const std::int64_t ones = I(this->ones());
  switch (p_.kind) {
    case ProblemKind::kMds:
      return {I(undominated()), ones};
    case ProblemKind::kMvc:
      return {p_.mvc_penalty == MvcPenalty::kUncoveredEdges ? I(uncovered_) : I(undominated()),
              ones};
    case ProblemKind::kCds:
      return {CdsPenalty(undominated(), components()) + 1, ones};
    case ProblemKind::kMis:
      return {ones, -I(conflicts())};
  }
  return {};
}

bool IncrementalEvaluator::Feasible() {
  switch (p_.kind) {
    case ProblemKind::kMds:
      return undominated() == 0;
    case ProblemKind::kMvc:
      return uncovered_ == 0;
    case ProblemKind::kCds:
      return undominated() == 0 && components() == 1;
    case ProblemKind::kMis:
      return induced_ == 0;
  }
  return false;
}

std::size_t IncrementalEvaluator::Penalty() {
  switch (p_.kind) {
    case ProblemKind::kMds:
      return undominated();
    case ProblemKind::kMvc:
      return p_.mvc_penalty == MvcPenalty::kUncoveredEdges ? uncovered_ : undominated();
    case ProblemKind::kCds:
      return static_cast<std::size_t>(CdsPenalty(undominated(), components()));
    case ProblemKind::kMis:
      return conflicts();
  }
  return 0;
}

}  // namespace plbea
