#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plbea/fitness.hpp"
#include "plbea/graph.hpp"
#include "plbea/rng.hpp"

namespace plbea {

enum class Algorithm { kOnePlusOneEa, kGsemo };

std::string AlgorithmName(Algorithm algo);
Algorithm ParseAlgorithm(const std::string& name);

struct RunBudget {
  std::uint64_t max_evaluations = 1;
  // Stop once a feasible solution at least this good is held (size <= target
  // when minimizing, >= target when maximizing).
  std::optional<std::size_t> target;
};

// 50 n ln n for the EA on MDS/MVC/CDS, 5 n^3 for the EA on MIS, 10 n^3 for
// GSEMO.
RunBudget DefaultBudget(std::size_t n, ProblemKind kind, Algorithm algo);

enum class Dominance { kNone, kWeak, kStrict };

// kWeak: p at least as good as q in every component; kStrict: additionally
// better in one. Throws UsageError when the arities differ.
Dominance dominates(std::span<const std::int64_t> p, std::span<const std::int64_t> q,
                    Sense sense);
Dominance dominates(const ObjectiveVector& p, const ObjectiveVector& q, Sense sense);

struct ArchiveEntry {
  Solution x;
  ObjectiveVector f;
  bool feasible = false;
};

// GSEMO population: one entry per objective vector, no entry weakly
// dominated by another.
class ParetoArchive {
 public:
  explicit ParetoArchive(Sense sense) : sense_(sense) {}

  // Rejects the candidate if an entry weakly dominates it (equal vectors
  // included); otherwise inserts it and evicts every entry it dominates.
  bool Offer(ArchiveEntry candidate);

  [[nodiscard]] const std::vector<ArchiveEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const ArchiveEntry& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] Sense sense() const noexcept { return sense_; }

  // True when the vectors are pairwise distinct and mutually non-dominating.
  [[nodiscard]] bool Audit() const;

 private:
  Sense sense_;
  std::vector<ArchiveEntry> entries_;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  ProblemKind problem = ProblemKind::kMds;
  Algorithm algorithm = Algorithm::kOnePlusOneEa;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<std::uint64_t> evals_to_feasible;
  std::uint64_t evals_total = 0;
  std::optional<std::size_t> first_feasible_size;
  std::optional<std::size_t> best_feasible_size;
  // The EA's final incumbent, or GSEMO's best feasible member (its first
  // entry when none is feasible).
  Solution final_solution;
  std::vector<ObjectiveVector> archive_snapshot;
  double wall_ms = 0.0;
};

// Everything but wall_ms.
bool SameOutcome(const TrialRecord& a, const TrialRecord& b);

struct StepObservation {
  std::uint64_t iteration = 0;  // 1-based offspring index
  std::size_t penalty_before = 0;
  std::size_t penalty_after = 0;
  std::int64_t fitness_before = 0;
  std::int64_t fitness_after = 0;  // incumbent's scalar fitness after selection
  bool feasible_before = false;
  bool accepted = false;
};

struct EngineOptions {
#ifdef NDEBUG
  std::uint64_t audit_every = 1000;
#else
  std::uint64_t audit_every = 1;
#endif
  // (1+1) EA only: called after every selection step.
  std::function<void(const StepObservation&)> observer;
};

// Positions flipped by standard bit mutation: one Bernoulli(1/n) draw per
// bit, in index order. Clears and fills `out`.
void sample_flips(std::size_t n, Rng& rng, std::vector<Vertex>& out);

Solution mutate(const Solution& x, Rng& rng);

// Uniform over {0,1}^n.
Solution random_solution(std::size_t n, Rng& rng);

TrialRecord one_plus_one_ea(const Graph& g, const Problem& p, const RunBudget& budget,
                            std::uint64_t seed, const EngineOptions& options = {});

TrialRecord gsemo(const Graph& g, const Problem& p, const RunBudget& budget,
                  std::uint64_t seed, const EngineOptions& options = {});

TrialRecord run_trial(const Graph& g, const Problem& p, Algorithm algo,
                      const RunBudget& budget, std::uint64_t seed,
                      const EngineOptions& options = {});

// One record per seed, in seed order. workers == 0 picks the default (the
// PLBEA_WORKERS environment variable, else hardware concurrency).
std::vector<TrialRecord> run_trials(const Graph& g, const Problem& p, Algorithm algo,
                                    const RunBudget& budget,
                                    std::span<const std::uint64_t> seeds,
                                    std::size_t workers = 0,
                                    const EngineOptions& options = {});

std::size_t DefaultWorkerCount();

// Runs fn(i) for i in [0, count) over a pool; results must be written to
// per-index slots by the caller. Rethrows the first exception.
void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn);

}  // namespace plbea
