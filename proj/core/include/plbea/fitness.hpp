#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "plbea/graph.hpp"

namespace plbea {

enum class ProblemKind { kMds, kMvc, kCds, kMis };
enum class Sense { kMinimize, kMaximize };

// Which penalty the MVC fitness uses. kUncoveredEdges makes feasibility equal
// vertex coverage; kUndominatedNodes reuses the MDS penalty literally.
enum class MvcPenalty { kUncoveredEdges, kUndominatedNodes };

struct Problem {
  ProblemKind kind = ProblemKind::kMds;
  MvcPenalty mvc_penalty = MvcPenalty::kUncoveredEdges;

  [[nodiscard]] Sense sense() const noexcept {
    return kind == ProblemKind::kMis ? Sense::kMaximize : Sense::kMinimize;
  }
  friend bool operator==(const Problem&, const Problem&) = default;
};

std::string ProblemName(ProblemKind kind);
ProblemKind ParseProblem(const std::string& name);

// Both components share the problem's sense.
struct ObjectiveVector {
  std::int64_t first = 0;
  std::int64_t second = 0;
  friend auto operator<=>(const ObjectiveVector&, const ObjectiveVector&) = default;
};

enum class ReferenceKind { kExact, kLowerBound, kUpperBound };
std::string ReferenceKindName(ReferenceKind kind);
ReferenceKind ParseReferenceKind(const std::string& name);

struct ApproxRatio {
  std::size_t achieved = 0;
  std::size_t reference = 0;
  double ratio = 0.0;
  ReferenceKind reference_kind = ReferenceKind::kExact;
};

// n u(x) + |x|
std::int64_t mds_scalar(const Graph& g, const Solution& x);
// (u(x), |x|)
ObjectiveVector mds_bi(const Graph& g, const Solution& x);
// (n + 1) uncovered(x) + |x|
std::int64_t mvc_scalar(const Graph& g, const Solution& x);
// (uncovered(x), |x|)
ObjectiveVector mvc_bi(const Graph& g, const Solution& x);
// n^2 (u(x) + w(x) - 1) + |x|; throws UsageError on a disconnected graph.
std::int64_t cds_scalar(const Graph& g, const Solution& x);
// (u(x) + w(x), |x|)
ObjectiveVector cds_bi(const Graph& g, const Solution& x);
// |x| - n * conflicts(x), maximized
std::int64_t mis_scalar(const Graph& g, const Solution& x);
// (|x|, -conflicts(x)), both maximized
ObjectiveVector mis_bi(const Graph& g, const Solution& x);

std::int64_t scalar_fitness(const Graph& g, const Solution& x, const Problem& p);
ObjectiveVector bi_fitness(const Graph& g, const Solution& x, const Problem& p);

bool is_feasible(const Graph& g, const Solution& x, const Problem& p);

// Orientation follows the problem's sense so the ratio is >= 1 against an
// exact optimum. Throws UsageError on zero sizes.
ApproxRatio approx_ratio(std::size_t achieved, std::size_t reference, const Problem& p,
                         ReferenceKind kind);

// Keeps u(x), uncovered edges and induced edges current under single-bit
// flips; w(x) is recomputed on demand and cached until the next flip.
class IncrementalEvaluator {
 public:
  IncrementalEvaluator(const Graph& g, const Problem& p, const Solution& x);

  void Reset(const Solution& x);
  void Flip(Vertex v);

  [[nodiscard]] const Solution& solution() const noexcept { return dom_.solution(); }
  [[nodiscard]] std::size_t ones() const noexcept { return solution().ones(); }
  [[nodiscard]] std::size_t undominated() const noexcept { return dom_.undominated(); }
  [[nodiscard]] std::size_t uncovered_edges() const noexcept { return uncovered_; }
  [[nodiscard]] std::size_t conflicts() const noexcept { return 2 * induced_; }
  std::size_t components();

  std::int64_t Scalar();
  ObjectiveVector Bi();
  bool Feasible();
  // The penalty term driving the infeasible phase: u for MDS, uncovered edges
  // (or u) for MVC, u + w - 1 for CDS, conflicts for MIS.
  std::size_t Penalty();

 private:
  const Graph* g_;
  Problem p_;
  DominationState dom_;
  std::size_t uncovered_ = 0;
  std::size_t induced_ = 0;
  std::optional<std::size_t> components_;
};

}  // namespace plbea
