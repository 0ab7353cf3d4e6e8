#include "plbea/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "plbea/errors.hpp"

namespace plbea {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::json GraphSourceJson(const ExperimentConfig& cfg) {
  if (cfg.gen) {
    return {{"model", ModelName(cfg.gen->model)},
            {"n", cfg.gen->n},
            {"attach_m", cfg.gen->attach_m},
            {"beta_target", cfg.gen->beta_target},
            {"seed", cfg.gen->seed},
            {"path", cfg.gen->path.string()}};
  }
  return {{"file", cfg.graph_path.string()}};
}

template <typename T>
nlohmann::json OptionalJson(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json HashedJson(const ExperimentConfig& cfg) {
  nlohmann::json j = to_json(cfg);
  j.erase("output");
  return j;
}

std::string FormatDouble(double v, int precision = 17) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T ParseInt(const std::string& s) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad integer '" + s + "'");
  }
  return v;
}

double ParseDouble(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad number '" + s + "'");
  }
  return v;
}

ResultRow ParseRow(const std::string& line) {
  const auto f = SplitCsv(line);
  if (f.size() != 17) {
    throw ParseError("expected 17 fields, got " + std::to_string(f.size()));
  }
  ResultRow r;
  r.trial = ParseInt<std::size_t>(f[0]);
  r.seed = ParseInt<std::uint64_t>(f[1]);
  r.n = ParseInt<std::size_t>(f[2]);
  r.m = ParseInt<std::size_t>(f[3]);
  r.beta = ParseDouble(f[4]);
  r.t = ParseDouble(f[5]);
  r.c1_fitted = ParseDouble(f[6]);
  try {
    r.problem = ParseProblem(f[7]);
    r.algo = ParseAlgorithm(f[8]);
    r.reference_kind = ParseReferenceKind(f[13]);
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  if (!f[9].empty()) r.evals_to_feasible = ParseInt<std::uint64_t>(f[9]);
  r.evals_total = ParseInt<std::uint64_t>(f[10]);
  if (!f[11].empty()) r.best_size = ParseInt<std::size_t>(f[11]);
  r.reference = ParseInt<std::size_t>(f[12]);
  if (!f[14].empty()) r.ratio = ParseDouble(f[14]);
  r.theo_bound = ParseDouble(f[15]);
  r.wall_ms = ParseDouble(f[16]);
  return r;
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

nlohmann::json Num(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {{"graph", GraphSourceJson(cfg)},
          {"problem", ProblemName(cfg.problem)},
          {"mvc_penalty", cfg.mvc_penalty == MvcPenalty::kUncoveredEdges ? "uncovered-edges"
                                                                          : "undominated-nodes"},
          {"algorithm", AlgorithmName(cfg.algorithm)},
          {"max_evaluations", OptionalJson(cfg.max_evaluations)},
          {"target", OptionalJson(cfg.target)},
          {"trials", cfg.trials},
          {"base_seed", cfg.base_seed},
          {"betas", cfg.betas},
          {"ts", cfg.ts},
          {"exact_limit", cfg.exact_limit},
          {"output", cfg.output.string()}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig cfg;
    const auto& graph = j.at("graph");
    if (graph.contains("file")) {
      cfg.graph_path = graph.at("file").get<std::string>();
    } else {
      GenSpec spec;
      spec.model = ParseModel(graph.at("model").get<std::string>());
      spec.n = graph.value("n", spec.n);
      spec.attach_m = graph.value("attach_m", spec.attach_m);
      spec.beta_target = graph.value("beta_target", spec.beta_target);
      spec.seed = graph.value("seed", spec.seed);
      spec.path = graph.value("path", std::string());
      cfg.gen = spec;
    }
    cfg.problem = ParseProblem(j.at("problem").get<std::string>());
    const std::string penalty = j.value("mvc_penalty", std::string("uncovered-edges"));
    if (penalty == "uncovered-edges") {
      cfg.mvc_penalty = MvcPenalty::kUncoveredEdges;
    } else if (penalty == "undominated-nodes") {
      cfg.mvc_penalty = MvcPenalty::kUndominatedNodes;
    } else {
      throw UsageError("unknown mvc_penalty '" + penalty + "'");
    }
    cfg.algorithm = ParseAlgorithm(j.at("algorithm").get<std::string>());
    if (j.contains("max_evaluations") && !j["max_evaluations"].is_null()) {
      cfg.max_evaluations = j["max_evaluations"].get<std::uint64_t>();
    }
    if (j.contains("target") && !j["target"].is_null()) {
      cfg.target = j["target"].get<std::size_t>();
    }
    cfg.trials = j.value("trials", cfg.trials);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.betas = j.value("betas", cfg.betas);
    cfg.ts = j.value("ts", cfg.ts);
    cfg.exact_limit = j.value("exact_limit", cfg.exact_limit);
    cfg.output = j.value("output", std::string());
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad experiment config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : HashedJson(cfg).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Graph load_experiment_graph(const ExperimentConfig& cfg) {
  if (cfg.gen) return generate(*cfg.gen);
  if (cfg.graph_path.empty()) throw UsageError("experiment has no graph source");
  return load_graph(cfg.graph_path);
}

double operative_bound(const RatioBounds& bounds, ProblemKind problem, Algorithm algo) {
  const bool ea = algo == Algorithm::kOnePlusOneEa;
  switch (problem) {
    case ProblemKind::kMds:
      return ea ? bounds.mds_ea : bounds.mds_gsemo;
    case ProblemKind::kMvc:
      return ea ? bounds.mvc_ea : bounds.mvc_gsemo;
    case ProblemKind::kCds:
      return ea ? bounds.cds_ea + 1.0 : bounds.cds_gsemo;
    case ProblemKind::kMis:
      return ea ? bounds.mis_ea : bounds.mis_gsemo;
  }
  return kNaN;
}

PlbFit select_plb_params(const Graph& g, ProblemKind problem, Algorithm algo,
                         const std::vector<double>& betas, const std::vector<double>& ts) {
  std::optional<PlbFit> best;
  for (double beta : betas) {
    if (!(beta > 2.0)) continue;
    for (double t : ts) {
      PlbFit fit;
      fit.params = {beta, t, fit_c1(g, beta, t)};
      fit.constants = constants_ab(fit.params);
      fit.bounds = ratio_bounds(fit.params);
      fit.operative = operative_bound(fit.bounds, problem, algo);
      if (!best || fit.operative < best->operative) best = fit;
    }
  }
  if (!best) throw UsageError("no (beta, t) grid point with beta > 2");
  return *best;
}

std::pair<std::size_t, ReferenceKind> reference_size(const Graph& g, ProblemKind problem,
                                                     std::size_t exact_limit) {
  if (g.num_vertices() <= exact_limit) {
    return {exact_solve(g, problem, exact_limit).optimum_size, ReferenceKind::kExact};
  }
  const SizeBounds b = size_bounds(g, problem);
  if (problem == ProblemKind::kMis) return {b.upper, ReferenceKind::kUpperBound};
  return {b.lower, ReferenceKind::kLowerBound};
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, std::size_t workers) {
  if (cfg.trials == 0) throw UsageError("trials must be >= 1");
  const Graph g = load_experiment_graph(cfg);
  const Problem p{cfg.problem, cfg.mvc_penalty};

  RunBudget budget = DefaultBudget(g.num_vertices(), cfg.problem, cfg.algorithm);
  if (cfg.max_evaluations) budget.max_evaluations = *cfg.max_evaluations;
  budget.target = cfg.target;

  PlbParams params{kNaN, kNaN, kNaN};
  double theo = kNaN;
  if (g.num_edges() > 0) {
    const PlbFit fit = select_plb_params(g, cfg.problem, cfg.algorithm, cfg.betas, cfg.ts);
    params = fit.params;
    theo = fit.operative;
  }
  const auto [reference, kind] = reference_size(g, cfg.problem, cfg.exact_limit);

  std::vector<std::uint64_t> seeds(cfg.trials);
  for (std::size_t i = 0; i < cfg.trials; ++i) seeds[i] = cfg.base_seed + i;
  const auto records = run_trials(g, p, cfg.algorithm, budget, seeds, workers);

  std::vector<ResultRow> rows;
  rows.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& rec = records[i];
    ResultRow r;
    r.trial = i;
    r.seed = rec.seed;
    r.n = rec.n;
    r.m = rec.m;
    r.beta = params.beta;
    r.t = params.t;
    r.c1_fitted = params.c1;
    r.problem = cfg.problem;
    r.algo = cfg.algorithm;
    r.evals_to_feasible = rec.evals_to_feasible;
    r.evals_total = rec.evals_total;
    r.best_size = rec.best_feasible_size;
    r.reference = reference;
    r.reference_kind = kind;
    if (r.best_size && *r.best_size > 0 && reference > 0) {
      r.ratio = approx_ratio(*r.best_size, reference, p, kind).ratio;
    }
    r.theo_bound = theo;
    r.wall_ms = rec.wall_ms;
    rows.push_back(r);
  }
  return rows;
}

std::string format_row(const ResultRow& r) {
  std::ostringstream out;
  out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.m << ',' << FormatDouble(r.beta)
      << ',' << FormatDouble(r.t) << ',' << FormatDouble(r.c1_fitted) << ','
      << ProblemName(r.problem) << ',' << AlgorithmName(r.algo) << ',';
  if (r.evals_to_feasible) out << *r.evals_to_feasible;
  out << ',' << r.evals_total << ',';
  if (r.best_size) out << *r.best_size;
  out << ',' << r.reference << ',' << ReferenceKindName(r.reference_kind) << ',';
  if (r.ratio) out << FormatDouble(*r.ratio);
  out << ',' << FormatDouble(r.theo_bound) << ',' << FormatDouble(r.wall_ms, 6);
  return out.str();
}

void write_results_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const std::vector<ResultRow>& rows) {
  out << "# plbea results\n"
      << "# config_hash=" << config_hash(cfg) << '\n'
      << "# generator-id=" << Rng::kGeneratorId << '\n'
      << "# config=" << HashedJson(cfg).dump() << '\n'
      << kCsvColumns << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::vector<std::string> errors;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line == kCsvColumns) continue;
    try {
      rows.push_back(ParseRow(line));
    } catch (const ParseError& e) {
      errors.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "malformed result rows:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ParseError(msg);
  }
  return rows;
}

std::vector<ResultRow> cmd_run(const ExperimentConfig& cfg, std::size_t workers) {
  if (cfg.output.empty()) throw UsageError("experiment has no output path");
  auto rows = run_experiment(cfg, workers);
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw IoError("cannot write " + cfg.output.string());
  write_results_csv(out, cfg, rows);
  out.flush();
  if (!out) throw IoError("write failed for " + cfg.output.string());
  return rows;
}

std::vector<std::vector<DriftSample>> collect_drift_samples(const Graph& g, ProblemKind problem,
                                                            std::size_t trials,
                                                            std::uint64_t seed,
                                                            std::size_t workers) {
  if (problem == ProblemKind::kMis) {
    throw UsageError("drift is measured for the covering problems only");
  }
  const std::size_t n = g.num_vertices();
  const Problem p{problem};
  RunBudget budget = DefaultBudget(n, problem, Algorithm::kOnePlusOneEa);
  budget.max_evaluations *= 10;
  budget.target = n;  // any feasible incumbent ends the run

  std::vector<std::vector<DriftSample>> out(trials);
  ParallelFor(trials, workers, [&](std::size_t i) {
    auto& samples = out[i];
    EngineOptions options;
    options.observer = [&samples](const StepObservation& s) {
      if (s.penalty_before == 0) return;
      samples.push_back({s.iteration, s.penalty_before,
                         static_cast<long>(s.penalty_before) - static_cast<long>(s.penalty_after)});
    };
    one_plus_one_ea(g, p, budget, seed + i, options);
  });
  return out;
}

DriftSummary measure_drift(const Graph& g, ProblemKind problem, std::size_t trials,
                           std::uint64_t seed, std::size_t min_samples, std::size_t workers) {
  DriftSummary s;
  s.problem = problem;
  s.n = g.num_vertices();
  s.trials = trials;
  s.seed = seed;
  s.min_samples = min_samples;

  std::map<std::size_t, std::pair<std::size_t, double>> acc;
  for (const auto& trial : collect_drift_samples(g, problem, trials, seed, workers)) {
    for (const auto& sample : trial) {
      auto& [count, sum] = acc[sample.potential];
      ++count;
      sum += static_cast<double>(sample.decrease);
      ++s.total_samples;
    }
  }
  const double en = std::numbers::e * static_cast<double>(s.n);
  for (const auto& [potential, cs] : acc) {
    DriftBin bin;
    bin.potential = potential;
    bin.samples = cs.first;
    bin.mean_decrease = cs.second / static_cast<double>(cs.first);
    bin.premise_rate = static_cast<double>(potential) / en;
    bin.ratio = bin.mean_decrease / bin.premise_rate;
    bin.populated = bin.samples >= min_samples;
    if (bin.ratio < 1.0) {
      s.flagged.push_back(potential);
      if (bin.populated) s.premise_holds = false;
    }
    s.bins.push_back(bin);
  }
  return s;
}

nlohmann::json to_json(const DriftSummary& s) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : s.bins) {
    bins.push_back({{"potential", b.potential},
                    {"samples", b.samples},
                    {"mean_decrease", b.mean_decrease},
                    {"premise_rate", b.premise_rate},
                    {"ratio", b.ratio},
                    {"populated", b.populated}});
  }
  return {{"problem", ProblemName(s.problem)},
          {"n", s.n},
          {"trials", s.trials},
          {"seed", s.seed},
          {"min_samples", s.min_samples},
          {"total_samples", s.total_samples},
          {"bins", bins},
          {"flagged", s.flagged},
          {"premise_holds", s.premise_holds}};
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

SummaryReport summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<ProblemKind, Algorithm, std::size_t>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) groups[{r.problem, r.algo, r.n}].push_back(&r);

  SummaryReport report;
  for (const auto& [key, group] : groups) {
    AggregateRow a;
    std::tie(a.problem, a.algo, a.n) = key;
    a.trials = group.size();
    std::vector<double> evals;
    std::vector<double> ratios;
    std::size_t satisfied = 0;
    a.theo_bound = kNaN;
    for (const ResultRow* r : group) {
      if (r->evals_to_feasible) evals.push_back(static_cast<double>(*r->evals_to_feasible));
      if (!std::isnan(r->theo_bound) && !(r->theo_bound <= a.theo_bound)) {
        a.theo_bound = r->theo_bound;
      }
      if (r->ratio) {
        ratios.push_back(*r->ratio);
        if (*r->ratio <= r->theo_bound * (1.0 + kPlbTolerance)) ++satisfied;
      }
    }
    a.feasible_trials = evals.size();
    a.median_evals_to_feasible = median(evals);
    a.mean_evals_to_feasible = Mean(evals);
    a.mean_ratio = Mean(ratios);
    a.max_ratio = ratios.empty() ? kNaN : *std::max_element(ratios.begin(), ratios.end());
    a.bound_satisfaction =
        ratios.empty() ? kNaN : static_cast<double>(satisfied) / static_cast<double>(ratios.size());
    report.aggregates.push_back(a);
  }

  std::map<std::pair<ProblemKind, Algorithm>, std::vector<const AggregateRow*>> series;
  for (const auto& a : report.aggregates) {
    if (!std::isnan(a.median_evals_to_feasible) && a.n >= 2) {
      series[{a.problem, a.algo}].push_back(&a);
    }
  }
  for (const auto& [key, points] : series) {
    if (points.size() < 2) continue;
    ScalingFit fit;
    std::tie(fit.problem, fit.algo) = key;
    double sxy = 0.0, sxx = 0.0;
    double lx = 0.0, ly = 0.0, lxx = 0.0, lxy = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double n = static_cast<double>(points[i]->n);
      const double t = points[i]->median_evals_to_feasible;
      const double x = n * std::log(n);
      sxy += x * t;
      sxx += x * x;
      const double ln_n = std::log(n);
      const double ln_t = std::log(t);
      lx += ln_n;
      ly += ln_t;
      lxx += ln_n * ln_n;
      lxy += ln_n * ln_t;
      if (i > 0) {
        fit.steps.push_back({points[i - 1]->n, points[i]->n,
                             t / points[i - 1]->median_evals_to_feasible});
      }
    }
    const double k = static_cast<double>(points.size());
    fit.c_nlogn = sxy / sxx;
    fit.loglog_exponent = (k * lxy - lx * ly) / (k * lxx - lx * lx);
    report.scaling.push_back(fit);
  }
  return report;
}

nlohmann::json to_json(const SummaryReport& report) {
  nlohmann::json aggregates = nlohmann::json::array();
  for (const auto& a : report.aggregates) {
    aggregates.push_back({{"n", a.n},
                          {"problem", ProblemName(a.problem)},
                          {"algo", AlgorithmName(a.algo)},
                          {"trials", a.trials},
                          {"feasible_trials", a.feasible_trials},
                          {"median_evals_to_feasible", Num(a.median_evals_to_feasible)},
                          {"mean_evals_to_feasible", Num(a.mean_evals_to_feasible)},
                          {"mean_ratio", Num(a.mean_ratio)},
                          {"max_ratio", Num(a.max_ratio)},
                          {"theo_bound", Num(a.theo_bound)},
                          {"bound_satisfaction", Num(a.bound_satisfaction)}});
  }
  nlohmann::json scaling = nlohmann::json::array();
  for (const auto& s : report.scaling) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& st : s.steps) {
      steps.push_back({{"n_from", st.n_from}, {"n_to", st.n_to}, {"ratio", Num(st.ratio)}});
    }
    scaling.push_back({{"problem", ProblemName(s.problem)},
                       {"algo", AlgorithmName(s.algo)},
                       {"doubling", steps},
                       {"c_nlogn", Num(s.c_nlogn)},
                       {"loglog_exponent", Num(s.loglog_exponent)}});
  }
  return {{"aggregates", aggregates}, {"scaling", scaling}};
}

std::string format_table(const SummaryReport& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %-6s %6s %6s %8s %12s %12s %9s %9s %9s %7s\n", "problem",
                "algo", "n", "trials", "feasible", "median_T", "mean_T", "mean_r", "max_r",
                "bound", "sat");
  out << buf;
  for (const auto& a : report.aggregates) {
    std::snprintf(buf, sizeof buf, "%-8s %-6s %6zu %6zu %8zu %12.1f %12.1f %9.4f %9.4f %9.4f %7.3f\n",
                  ProblemName(a.problem).c_str(), AlgorithmName(a.algo).c_str(), a.n, a.trials,
                  a.feasible_trials, a.median_evals_to_feasible, a.mean_evals_to_feasible,
                  a.mean_ratio, a.max_ratio, a.theo_bound, a.bound_satisfaction);
    out << buf;
  }
  for (const auto& s : report.scaling) {
    out << '\n' << ProblemName(s.problem) << '/' << AlgorithmName(s.algo) << " scaling:";
    for (const auto& st : s.steps) {
      std::snprintf(buf, sizeof buf, " T(%zu)/T(%zu)=%.3f", st.n_to, st.n_from, st.ratio);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "\n  c (T ~ c n ln n) = %.4f, log-log exponent = %.4f\n",
                  s.c_nlogn, s.loglog_exponent);
    out << buf;
  }
  return out.str();
}

std::vector<ResultRow> load_results(const std::vector<std::filesystem::path>& paths) {
  std::vector<ResultRow> rows;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open results " + path.string());
    try {
      auto part = read_results_csv(in);
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  return rows;
}

SummaryReport cmd_report(const std::vector<std::filesystem::path>& paths) {
  return summarize(load_results(paths));
}

}  // namespace plbea
