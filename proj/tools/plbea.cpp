#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plbea/ea.hpp"
#include "plbea/errors.hpp"
#include "plbea/generators.hpp"
#include "plbea/harness.hpp"
#include "plbea/oracles.hpp"
#include "plbea/plb.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kRefused = 3, kIo = 4 };

// Either --graph FILE or generator flags.
struct GraphSource {
  std::string file;
  std::string model = "pa";
  std::size_t n = 100;
  std::size_t attach_m = 2;
  double beta = 2.5;
  std::uint64_t seed = 1;

  void Register(CLI::App* app, bool with_file) {
    if (with_file) app->add_option("--graph", file, "Graph file (.json or edge list)");
    app->add_option("--model", model, "Generator: pa | chung-lu")->capture_default_str();
    app->add_option("-n,--n", n, "Vertex count")->capture_default_str();
    app->add_option("--attach-m", attach_m, "Edges per new vertex (pa)")->capture_default_str();
    app->add_option("--beta-target", beta, "Weight exponent (chung-lu)")->capture_default_str();
    app->add_option("--graph-seed", seed, "Generator seed")->capture_default_str();
  }

  [[nodiscard]] plbea::GenSpec Spec() const {
    plbea::GenSpec spec;
    spec.model = plbea::ParseModel(model);
    spec.n = n;
    spec.attach_m = attach_m;
    spec.beta_target = beta;
    spec.seed = seed;
    return spec;
  }

  [[nodiscard]] plbea::Graph Load() const {
    return file.empty() ? plbea::generate(Spec()) : plbea::load_graph(file);
  }
};

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw plbea::IoError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw plbea::IoError("write failed for " + path);
}

std::string EdgeListText(const plbea::Graph& g) {
  std::string s = "# n=" + std::to_string(g.num_vertices()) + "\n";
  for (const auto& [u, v] : g.edges()) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

nlohmann::json RatioBoundsJson(const plbea::RatioBounds& b) {
  return {{"mds_ea", b.mds_ea},       {"mds_gsemo", b.mds_gsemo}, {"mvc_ea", b.mvc_ea},
          {"mvc_gsemo", b.mvc_gsemo}, {"cds_ea", b.cds_ea},       {"cds_gsemo", b.cds_gsemo},
          {"mis_ea", b.mis_ea},       {"mis_gsemo", b.mis_gsemo}};
}

nlohmann::json CheckPlbJson(const plbea::Graph& g, double beta, double t,
                            std::optional<double> c1) {
  plbea::PlbParams params{beta, t, 0.0};
  nlohmann::json j;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["max_degree"] = g.max_degree();
  if (c1) {
    params.c1 = *c1;
  } else {
    params.c1 = plbea::fit_c1(g, beta, t);
    j["c1_fitted"] = params.c1;
  }
  j["beta"] = beta;
  j["t"] = t;
  j["c1"] = params.c1;
  const auto check = plbea::check_plb(g, params);
  j["holds"] = check.holds;
  nlohmann::json buckets = nlohmann::json::array();
  for (const auto& b : check.buckets) {
    buckets.push_back({{"d", b.d}, {"count", b.count}, {"bound", b.bound}, {"margin", b.margin}});
  }
  j["buckets"] = buckets;
  if (beta > 2.0) {
    const auto ab = plbea::constants_ab(params);
    j["a"] = ab.a;
    j["b"] = ab.b;
    j["b_alt"] = ab.b_alt;
    j["ratio_bounds"] = RatioBoundsJson(plbea::ratio_bounds(params));
    const auto dsb = plbea::degree_sum_bound(params, g.num_vertices(), g.max_degree());
    j["degree_sum_bound"] = {{"finite_sum", dsb.finite_sum}, {"integral_cap", dsb.integral_cap},
                             {"observed", g.degree_sum()}};
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary algorithms for covering problems on power-law bounded graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  GraphSource gen_src;
  gen_src.Register(gen, false);
  std::string gen_out;
  std::string gen_format = "json";
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");
  gen->add_option("--format", gen_format, "json | edges")
      ->check(CLI::IsMember({"json", "edges"}))
      ->capture_default_str();

  // check-plb
  auto* check = app.add_subcommand("check-plb", "Certify the PLB-U property of a graph");
  GraphSource check_src;
  check_src.Register(check, true);
  double check_beta = 3.0;
  double check_t = 0.0;
  std::optional<double> check_c1;
  check->add_option("--beta", check_beta, "Power-law exponent")->capture_default_str();
  check->add_option("--t", check_t, "Shift")->capture_default_str();
  check->add_option("--c1", check_c1, "Constant (fitted when omitted)");

  // run
  auto* run = app.add_subcommand("run", "Run seeded trials and write a results CSV");
  GraphSource run_src;
  run_src.Register(run, true);
  std::string run_config;
  std::string run_problem = "mds";
  std::string run_algo = "ea";
  std::string run_mvc_penalty = "uncovered-edges";
  std::size_t run_trials = 10;
  std::uint64_t run_seed = 1;
  std::optional<std::uint64_t> run_max_evals;
  std::optional<std::size_t> run_target;
  std::optional<std::size_t> run_exact_limit;
  std::string run_out;
  std::size_t run_workers = 0;
  run->add_option("--config", run_config, "Experiment config JSON (overrides other flags)");
  run->add_option("--problem", run_problem, "mds | mvc | cds | mis")->capture_default_str();
  run->add_option("--algo", run_algo, "ea | gsemo")->capture_default_str();
  run->add_option("--mvc-penalty", run_mvc_penalty, "uncovered-edges | undominated-nodes")
      ->capture_default_str();
  run->add_option("--trials", run_trials, "Number of trials")->capture_default_str();
  run->add_option("--seed", run_seed, "Base seed; trial i uses seed + i")->capture_default_str();
  run->add_option("--max-evals", run_max_evals, "Evaluation budget (default per problem)");
  run->add_option("--target", run_target, "Stop once a feasible solution this good is held");
  run->add_option("--exact-limit", run_exact_limit, "Largest n solved exactly for reference");
  run->add_option("-o,--out", run_out, "Results CSV (default stdout)");
  run->add_option("--workers", run_workers, "Worker threads (0 = default)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact, greedy or bound reference solutions");
  GraphSource oracle_src;
  oracle_src.Register(oracle, true);
  std::string oracle_problem = "mds";
  std::string oracle_method = "exact";
  std::optional<std::size_t> oracle_limit;
  oracle->add_option("--problem", oracle_problem, "mds | mvc | cds | mis")->capture_default_str();
  oracle->add_option("--method", oracle_method, "exact | greedy | bounds")
      ->check(CLI::IsMember({"exact", "greedy", "bounds"}))
      ->capture_default_str();
  oracle->add_option("--limit", oracle_limit, "Exact solver vertex limit");

  // drift
  auto* drift = app.add_subcommand("drift", "Measure the drift of the penalty potential");
  GraphSource drift_src;
  drift_src.Register(drift, true);
  std::string drift_problem = "mds";
  std::size_t drift_trials = 200;
  std::uint64_t drift_seed = 1;
  std::size_t drift_min_samples = 100;
  std::size_t drift_workers = 0;
  std::string drift_out;
  drift->add_option("--problem", drift_problem, "mds | mvc | cds")->capture_default_str();
  drift->add_option("--trials", drift_trials, "Number of runs")->capture_default_str();
  drift->add_option("--seed", drift_seed, "Base seed")->capture_default_str();
  drift->add_option("--min-samples", drift_min_samples, "Samples for a bin to count")
      ->capture_default_str();
  drift->add_option("--workers", drift_workers, "Worker threads (0 = default)");
  drift->add_option("-o,--out", drift_out, "Output JSON (default stdout)");

  // report
  auto* report = app.add_subcommand("report", "Aggregate results CSVs");
  std::vector<std::string> report_inputs;
  std::string report_format = "table";
  std::string report_out;
  report->add_option("inputs", report_inputs, "Results CSV files")->required();
  report->add_option("--format", report_format, "table | json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  report->add_option("-o,--out", report_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      const plbea::GenSpec spec = gen_src.Spec();
      const plbea::Graph g = plbea::generate(spec);
      WriteText(gen_out, gen_format == "json"
                             ? plbea::graph_to_json(g, plbea::generator_meta(spec)).dump(2) + "\n"
                             : EdgeListText(g));
    } else if (*check) {
      const plbea::Graph g = check_src.Load();
      std::cout << CheckPlbJson(g, check_beta, check_t, check_c1).dump(2) << "\n";
    } else if (*run) {
      plbea::ExperimentConfig cfg;
      if (!run_config.empty()) {
        cfg = plbea::load_config(run_config);
      } else {
        if (run_src.file.empty()) {
          cfg.gen = run_src.Spec();
        } else {
          cfg.graph_path = run_src.file;
        }
        cfg.problem = plbea::ParseProblem(run_problem);
        cfg.algorithm = plbea::ParseAlgorithm(run_algo);
        if (run_mvc_penalty == "undominated-nodes") {
          cfg.mvc_penalty = plbea::MvcPenalty::kUndominatedNodes;
        } else if (run_mvc_penalty != "uncovered-edges") {
          throw plbea::UsageError("unknown --mvc-penalty '" + run_mvc_penalty + "'");
        }
        cfg.trials = run_trials;
        cfg.base_seed = run_seed;
        cfg.max_evaluations = run_max_evals;
        cfg.target = run_target;
        if (run_exact_limit) cfg.exact_limit = *run_exact_limit;
      }
      if (!run_out.empty()) cfg.output = run_out;
      if (cfg.output.empty() || cfg.output == "-") {
        cfg.output.clear();
        plbea::write_results_csv(std::cout, cfg, plbea::run_experiment(cfg, run_workers));
      } else {
        plbea::cmd_run(cfg, run_workers);
      }
    } else if (*oracle) {
      const plbea::Graph g = oracle_src.Load();
      const plbea::ProblemKind problem = plbea::ParseProblem(oracle_problem);
      nlohmann::json j;
      if (oracle_method == "exact") {
        j = plbea::to_json(plbea::exact_solve(
            g, problem, oracle_limit.value_or(plbea::DefaultExactLimit())));
      } else if (oracle_method == "greedy") {
        switch (problem) {
          case plbea::ProblemKind::kMds:
            j = plbea::to_json(plbea::greedy_mds(g));
            break;
          case plbea::ProblemKind::kCds:
            j = plbea::to_json(plbea::greedy_cds(g));
            break;
          case plbea::ProblemKind::kMis:
            j = plbea::to_json(plbea::greedy_mis(g));
            break;
          case plbea::ProblemKind::kMvc:
            throw plbea::UsageError("no greedy construction for mvc; use --method bounds");
        }
      } else {
        const auto b = plbea::size_bounds(g, problem);
        j = {{"problem", plbea::ProblemName(problem)},
             {"method", "bounds"},
             {"lower", b.lower},
             {"upper", b.upper}};
      }
      std::cout << j.dump(2) << "\n";
    } else if (*drift) {
      const plbea::Graph g = drift_src.Load();
      const auto summary =
          plbea::measure_drift(g, plbea::ParseProblem(drift_problem), drift_trials, drift_seed,
                               drift_min_samples, drift_workers);
      WriteText(drift_out, plbea::to_json(summary).dump(2) + "\n");
    } else if (*report) {
      std::vector<std::filesystem::path> paths(report_inputs.begin(), report_inputs.end());
      const auto summary = plbea::cmd_report(paths);
      WriteText(report_out, report_format == "json" ? plbea::to_json(summary).dump(2) + "\n"
                                                    : plbea::format_table(summary));
    }
  } catch (const plbea::RefusedError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const plbea::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const plbea::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const plbea::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
