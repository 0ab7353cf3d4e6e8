#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plbea/ea.hpp"
#include "plbea/fitness.hpp"
#include "plbea/generators.hpp"
#include "plbea/oracles.hpp"
#include "plbea/plb.hpp"

namespace plbea {

// One experiment: a graph, a (problem, algorithm) pair and a batch of trials
// seeded base_seed + trial index.
struct ExperimentConfig {
  std::optional<GenSpec> gen;        // generated graph ...
  std::filesystem::path graph_path;  // ... or a JSON / edge-list file
  ProblemKind problem = ProblemKind::kMds;
  MvcPenalty mvc_penalty = MvcPenalty::kUncoveredEdges;
  Algorithm algorithm = Algorithm::kOnePlusOneEa;
  std::optional<std::uint64_t> max_evaluations;  // DefaultBudget when absent
  std::optional<std::size_t> target;
  std::size_t trials = 10;
  std::uint64_t base_seed = 1;
  std::vector<double> betas = {2.1, 2.5, 3.0};
  std::vector<double> ts = {0.0, 1.0};
  std::size_t exact_limit = DefaultExactLimit();
  std::filesystem::path output;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

// FNV-1a 64 over the canonical JSON dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

Graph load_experiment_graph(const ExperimentConfig& cfg);

// The bound the acceptance checks hold a (problem, algorithm) pair to. Equal
// to the stated factor except CDS under the EA, where the derivation yields
// 2ab + 1 rather than the stated 2ab.
double operative_bound(const RatioBounds& bounds, ProblemKind problem, Algorithm algo);

struct PlbFit {
  PlbParams params;
  PlbConstants constants;
  RatioBounds bounds;
  double operative = 0.0;
};

// Fits c1 at every (beta, t) grid point with beta > 2 and keeps the point
// whose operative bound is tightest (first wins on ties).
PlbFit select_plb_params(const Graph& g, ProblemKind problem, Algorithm algo,
                         const std::vector<double>& betas, const std::vector<double>& ts);

struct ResultRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double beta = 0.0;
  double t = 0.0;
  double c1_fitted = 0.0;
  ProblemKind problem = ProblemKind::kMds;
  Algorithm algo = Algorithm::kOnePlusOneEa;
  std::optional<std::uint64_t> evals_to_feasible;
  std::uint64_t evals_total = 0;
  std::optional<std::size_t> best_size;
  std::size_t reference = 0;
  ReferenceKind reference_kind = ReferenceKind::kExact;
  std::optional<double> ratio;
  double theo_bound = 0.0;
  double wall_ms = 0.0;
};

inline constexpr const char* kCsvColumns =
    "trial,seed,n,m,beta,t,c1_fitted,problem,algo,evals_to_feasible,evals_total,best_size,"
    "reference,reference_kind,ratio,theo_bound,wall_ms";

// Exact optimum when n <= limit, otherwise the size bound on the side that
// makes the reported ratio an over-estimate (lower bound for minimization,
// upper bound for MIS).
std::pair<std::size_t, ReferenceKind> reference_size(const Graph& g, ProblemKind problem,
                                                     std::size_t exact_limit);

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, std::size_t workers = 0);

// Header comment lines (config hash, generator id, config JSON), the column
// row, then one row per trial in trial order.
void write_results_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const std::vector<ResultRow>& rows);
std::string format_row(const ResultRow& row);

// Skips '#' lines and the column row. Throws ParseError naming every
// malformed line.
std::vector<ResultRow> read_results_csv(std::istream& in);

// Runs the experiment and writes cfg.output. Throws IoError when the file
// cannot be written.
std::vector<ResultRow> cmd_run(const ExperimentConfig& cfg, std::size_t workers = 0);

struct DriftSample {
  std::uint64_t iteration = 0;
  std::size_t potential = 0;
  long decrease = 0;
};

struct DriftBin {
  std::size_t potential = 0;
  std::size_t samples = 0;
  double mean_decrease = 0.0;
  double premise_rate = 0.0;  // potential / (e n)
  double ratio = 0.0;         // mean_decrease / premise_rate
  bool populated = false;     // samples >= min_samples
};

struct DriftSummary {
  ProblemKind problem = ProblemKind::kMds;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t min_samples = 100;
  std::size_t total_samples = 0;
  std::vector<DriftBin> bins;  // ascending potential; empty bins omitted
  std::vector<std::size_t> flagged;  // potentials of bins with ratio < 1
  bool premise_holds = true;         // no populated bin flagged
};

// Per-trial samples of the (1+1) EA's penalty potential during the infeasible
// phase. Trial i uses seed + i; runs stop at the first feasible incumbent.
std::vector<std::vector<DriftSample>> collect_drift_samples(const Graph& g, ProblemKind problem,
                                                            std::size_t trials,
                                                            std::uint64_t seed,
                                                            std::size_t workers = 0);

DriftSummary measure_drift(const Graph& g, ProblemKind problem, std::size_t trials,
                           std::uint64_t seed, std::size_t min_samples = 100,
                           std::size_t workers = 0);

nlohmann::json to_json(const DriftSummary& s);

struct AggregateRow {
  std::size_t n = 0;
  ProblemKind problem = ProblemKind::kMds;
  Algorithm algo = Algorithm::kOnePlusOneEa;
  std::size_t trials = 0;
  std::size_t feasible_trials = 0;
  double median_evals_to_feasible = 0.0;
  double mean_evals_to_feasible = 0.0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  double theo_bound = 0.0;  // largest theo_bound among the rows
  double bound_satisfaction = 0.0;  // fraction of rated rows with ratio <= theo_bound
};

struct ScalingStep {
  std::size_t n_from = 0;
  std::size_t n_to = 0;
  double ratio = 0.0;  // T(n_to) / T(n_from) on medians
};

struct ScalingFit {
  ProblemKind problem = ProblemKind::kMds;
  Algorithm algo = Algorithm::kOnePlusOneEa;
  std::vector<ScalingStep> steps;
  double c_nlogn = 0.0;        // least squares T ~ c n ln n
  double loglog_exponent = 0.0;  // slope of ln T against ln n
};

struct SummaryReport {
  std::vector<AggregateRow> aggregates;  // sorted by (problem, algo, n)
  std::vector<ScalingFit> scaling;       // pairs with >= 2 sizes
};

double median(std::vector<double> values);

SummaryReport summarize(const std::vector<ResultRow>& rows);
nlohmann::json to_json(const SummaryReport& report);
std::string format_table(const SummaryReport& report);

// Reads and concatenates the CSVs at `paths`; throws IoError / ParseError.
std::vector<ResultRow> load_results(const std::vector<std::filesystem::path>& paths);
SummaryReport cmd_report(const std::vector<std::filesystem::path>& paths);

}  // namespace plbea
