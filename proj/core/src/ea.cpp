#include "plbea/ea.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "plbea/errors.hpp"

namespace plbea {
namespace {

// Engine draws come from their own stream so that a trial seed equal to a
// graph seed does not replay the generator's sequence.
constexpr std::uint64_t kEngineStream = 0x45a1;

bool Better(std::int64_t a, std::int64_t b, Sense sense) {
  return sense == Sense::kMinimize ? a < b : a > b;
}

bool AtLeastAsGood(std::int64_t a, std::int64_t b, Sense sense) {
  return sense == Sense::kMinimize ? a <= b : a >= b;
}

bool MeetsTarget(std::size_t size, const RunBudget& budget, Sense sense) {
  if (!budget.target) return false;
  return sense == Sense::kMinimize ? size <= *budget.target : size >= *budget.target;
}

void CheckPreconditions(const Graph& g, const Problem& p, const RunBudget& budget) {
  if (budget.max_evaluations < 1) throw UsageError("max_evaluations must be >= 1");
  if (g.num_vertices() == 0) throw UsageError("engines need at least one vertex");
  if (p.kind == ProblemKind::kCds && !g.is_connected()) {
    throw UsageError("CDS needs a connected graph");
  }
}

double MillisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::string AlgorithmName(Algorithm algo) {
  return algo == Algorithm::kOnePlusOneEa ? "ea" : "gsemo";
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "ea" || name == "1+1" || name == "(1+1)ea") return Algorithm::kOnePlusOneEa;
  if (name == "gsemo") return Algorithm::kGsemo;
  throw UsageError("unknown algorithm '" + name + "' (expected ea|gsemo)");
}

RunBudget DefaultBudget(std::size_t n, ProblemKind kind, Algorithm algo) {
  const auto dn = static_cast<double>(n);
  double evals = 0.0;
  if (algo == Algorithm::kGsemo) {
    evals = 10.0 * dn * dn * dn;
  } else if (kind == ProblemKind::kMis) {
    evals = 5.0 * dn * dn * dn;
  } else {
    evals = 50.0 * dn * std::log(dn);
  }
  return RunBudget{std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(evals))),
                   std::nullopt};
}

Dominance dominates(std::span<const std::int64_t> p, std::span<const std::int64_t> q,
                    Sense sense) {
  if (p.size() != q.size()) {
    throw UsageError("objective arity mismatch: " + std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()));
  }
  bool strictly_better_somewhere = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!AtLeastAsGood(p[i], q[i], sense)) return Dominance::kNone;
    if (Better(p[i], q[i], sense)) strictly_better_somewhere = true;
  }
  return strictly_better_somewhere ? Dominance::kStrict : Dominance::kWeak;
}

Dominance dominates(const ObjectiveVector& p, const ObjectiveVector& q, Sense sense) {
  const std::int64_t a[] = {p.first, p.second};
  const std::int64_t b[] = {q.first, q.second};
  return dominates(a, b, sense);
}

bool ParetoArchive::Offer(ArchiveEntry candidate) {
  for (const auto& e : entries_) {
    if (dominates(e.f, candidate.f, sense_) != Dominance::kNone) return false;
  }
  std::erase_if(entries_, [&](const ArchiveEntry& e) {
    return dominates(candidate.f, e.f, sense_) != Dominance::kNone;
  });
  entries_.push_back(std::move(candidate));
  return true;
}

bool ParetoArchive::Audit() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (i != j && dominates(entries_[i].f, entries_[j].f, sense_) != Dominance::kNone) {
        return false;
      }
    }
  }
  return true;
}

bool SameOutcome(const TrialRecord& a, const TrialRecord& b) {
  return a.seed == b.seed && a.problem == b.problem && a.algorithm == b.algorithm &&
         a.n == b.n && a.m == b.m && a.evals_to_feasible == b.evals_to_feasible &&
         a.evals_total == b.evals_total && a.first_feasible_size == b.first_feasible_size &&
         a.best_feasible_size == b.best_feasible_size &&
         a.final_solution == b.final_solution && a.archive_snapshot == b.archive_snapshot;
}

void sample_flips(std::size_t n, Rng& rng, std::vector<Vertex>& out) {
  out.clear();
  // P(draw < threshold) = floor((2^64 - 1) / n) / 2^64, within 2^-64 of 1/n.
  const std::uint64_t threshold =
      n <= 1 ? std::numeric_limits<std::uint64_t>::max() : ~std::uint64_t{0} / n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t draw = rng.Next();
    if (n == 1 || draw < threshold) out.push_back(static_cast<Vertex>(i));
  }
}

Solution mutate(const Solution& x, Rng& rng) {
  std::vector<Vertex> flips;
  sample_flips(x.size(), rng, flips);
  Solution y = x;
  for (Vertex v : flips) y.flip(v);
  return y;
}

Solution random_solution(std::size_t n, Rng& rng) {
  Solution x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.Next() >> 63) x.flip(static_cast<Vertex>(i));
  }
  return x;
}

TrialRecord one_plus_one_ea(const Graph& g, const Problem& p, const RunBudget& budget,
                            std::uint64_t seed, const EngineOptions& options) {
  CheckPreconditions(g, p, budget);
  const auto start = std::chrono::steady_clock::now();
  const Sense sense = p.sense();
  const std::size_t n = g.num_vertices();
  Rng rng(seed, kEngineStream);

  TrialRecord rec;
  rec.seed = seed;
  rec.problem = p.kind;
  rec.algorithm = Algorithm::kOnePlusOneEa;
  rec.n = n;
  rec.m = g.num_edges();

  IncrementalEvaluator ev(g, p, random_solution(n, rng));
  std::int64_t fx = ev.Scalar();
  std::size_t penalty_x = ev.Penalty();
  bool feasible_x = ev.Feasible();
  std::uint64_t evals = 1;

  auto note_feasible = [&](std::size_t size) {
    if (!rec.evals_to_feasible) {
      rec.evals_to_feasible = evals;
      rec.first_feasible_size = size;
    }
    if (!rec.best_feasible_size ||
        Better(static_cast<std::int64_t>(size),
               static_cast<std::int64_t>(*rec.best_feasible_size), sense)) {
      rec.best_feasible_size = size;
    }
  };
  if (feasible_x) note_feasible(ev.ones());

  std::vector<Vertex> flips;
  while (evals < budget.max_evaluations &&
         !(feasible_x && MeetsTarget(ev.ones(), budget, sense))) {
    sample_flips(n, rng, flips);
    for (Vertex v : flips) ev.Flip(v);
    const std::int64_t fy = ev.Scalar();
    ++evals;

    StepObservation step;
    step.iteration = evals - 1;
    step.penalty_before = penalty_x;
    step.fitness_before = fx;
    step.feasible_before = feasible_x;
    step.accepted = AtLeastAsGood(fy, fx, sense);
    if (step.accepted) {
      fx = fy;
      penalty_x = ev.Penalty();
      feasible_x = ev.Feasible();
      if (feasible_x) note_feasible(ev.ones());
    } else {
      for (Vertex v : flips) ev.Flip(v);
    }
    step.penalty_after = penalty_x;
    step.fitness_after = fx;
    if (options.observer) options.observer(step);
  }

  rec.evals_total = evals;
  rec.final_solution = ev.solution();
  rec.wall_ms = MillisSince(start);
  return rec;
}

TrialRecord gsemo(const Graph& g, const Problem& p, const RunBudget& budget,
                  std::uint64_t seed, const EngineOptions& options) {
  CheckPreconditions(g, p, budget);
  const auto start = std::chrono::steady_clock::now();
  const Sense sense = p.sense();
  const std::size_t n = g.num_vertices();
  Rng rng(seed, kEngineStream);

  TrialRecord rec;
  rec.seed = seed;
  rec.problem = p.kind;
  rec.algorithm = Algorithm::kGsemo;
  rec.n = n;
  rec.m = g.num_edges();

  ParetoArchive archive(sense);
  IncrementalEvaluator ev(g, p, random_solution(n, rng));
  std::uint64_t evals = 1;
  std::optional<std::size_t> best;  // best feasible size currently archived

  auto offer = [&]() {
    ArchiveEntry entry{ev.solution(), ev.Bi(), ev.Feasible()};
    const std::size_t size = entry.x.ones();
    const bool feasible = entry.feasible;
    if (!archive.Offer(std::move(entry)) || !feasible) return;
    if (!rec.evals_to_feasible) {
      rec.evals_to_feasible = evals;
      rec.first_feasible_size = size;
    }
    best.reset();
    for (const auto& e : archive.entries()) {
      if (!e.feasible) continue;
      const std::size_t s = e.x.ones();
      if (!best || Better(static_cast<std::int64_t>(s), static_cast<std::int64_t>(*best), sense)) {
        best = s;
      }
    }
  };
  offer();

  std::vector<Vertex> flips;
  const std::uint64_t audit_every = std::max<std::uint64_t>(1, options.audit_every);
  while (evals < budget.max_evaluations && !(best && MeetsTarget(*best, budget, sense))) {
    const ArchiveEntry& parent = archive[rng.Below(archive.size())];
    ev.Reset(parent.x);
    sample_flips(n, rng, flips);
    for (Vertex v : flips) ev.Flip(v);
    ++evals;
    offer();
    if ((evals - 1) % audit_every == 0) {
      if (!archive.Audit() || archive.size() > n + 1) {
        throw std::logic_error("Pareto archive invariant violated at evaluation " +
                               std::to_string(evals));
      }
    }
  }

  rec.evals_total = evals;
  rec.best_feasible_size = best;
  const ArchiveEntry* chosen = &archive[0];
  for (const auto& e : archive.entries()) {
    if (e.feasible && best && e.x.ones() == *best) {
      chosen = &e;
      break;
    }
  }
  rec.final_solution = chosen->x;
  for (const auto& e : archive.entries()) rec.archive_snapshot.push_back(e.f);
  std::sort(rec.archive_snapshot.begin(), rec.archive_snapshot.end());
  rec.wall_ms = MillisSince(start);
  return rec;
}

TrialRecord run_trial(const Graph& g, const Problem& p, Algorithm algo,
                      const RunBudget& budget, std::uint64_t seed,
                      const EngineOptions& options) {
  return algo == Algorithm::kOnePlusOneEa ? one_plus_one_ea(g, p, budget, seed, options)
                                          : gsemo(g, p, budget, seed, options);
}

std::size_t DefaultWorkerCount() {
  if (const char* env = std::getenv("PLBEA_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = DefaultWorkerCount();
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<TrialRecord> run_trials(const Graph& g, const Problem& p, Algorithm algo,
                                    const RunBudget& budget,
                                    std::span<const std::uint64_t> seeds,
                                    std::size_t workers, const EngineOptions& options) {
  std::vector<std::uint64_t> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("run_trials needs distinct seeds");
  }
  std::vector<TrialRecord> records(seeds.size());
  ParallelFor(seeds.size(), workers, [&](std::size_t i) {
    records[i] = run_trial(g, p, algo, budget, seeds[i], options);
  });
  return records;
}

}  // namespace plbea
