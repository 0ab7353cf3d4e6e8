#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

int Invoke(const std::string& args) {
  const std::string cmd = std::string(PLBEA_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Runs the CLI with stdout sent to a file.
int InvokeTo(const std::string& args, const fs::path& out) {
  const std::string cmd =
      std::string(PLBEA_CLI) + " " + args + " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path Temp(const std::string& name) {
  return fs::temp_directory_path() / ("plbea_cli_" + name);
}

}  // namespace

TEST(Cli, GenIsDeterministic) {
  const auto a = Temp("a.json"), b = Temp("b.json");
  ASSERT_EQ(Invoke("gen --model pa -n 200 --attach-m 2 --graph-seed 7 -o " + a.string()), 0);
  ASSERT_EQ(Invoke("gen --model pa -n 200 --attach-m 2 --graph-seed 7 -o " + b.string()), 0);
  EXPECT_EQ(Slurp(a), Slurp(b));
  const auto j = nlohmann::json::parse(Slurp(a));
  EXPECT_EQ(j["n"], 200);
  EXPECT_EQ(j["meta"]["generator-id"], "splitmix64-ctr/1");
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, CheckPlbFitsSingleEdge) {
  const auto g = Temp("k2.txt");
  std::ofstream(g) << "0 1\n";
  const auto out = Temp("k2.json");
  ASSERT_EQ(InvokeTo("check-plb --graph " + g.string() + " --beta 3 --t 0", out), 0);
  const auto j = nlohmann::json::parse(Slurp(out));
  EXPECT_DOUBLE_EQ(j["c1_fitted"].get<double>(), 1.0);
  EXPECT_TRUE(j["holds"].get<bool>());
  EXPECT_TRUE(j.contains("b_alt"));
  fs::remove(g);
  fs::remove(out);
}

TEST(Cli, ExitCodes) {
  const auto big = Temp("big.json");
  ASSERT_EQ(Invoke("gen -n 30 -o " + big.string()), 0);
  EXPECT_EQ(Invoke("oracle --graph " + big.string() + " --problem mds --method exact"), 3);
  EXPECT_EQ(Invoke("oracle --graph " + big.string() + " --problem mds --method greedy"), 0);
  EXPECT_EQ(Invoke("oracle --graph " + big.string() + " --problem mis --method bounds"), 0);
  EXPECT_EQ(Invoke("oracle --graph " + big.string() + " --problem tsp"), 2);
  EXPECT_EQ(Invoke("gen --no-such-flag"), 2);
  EXPECT_EQ(Invoke(""), 2);
  EXPECT_EQ(Invoke("oracle --graph /nonexistent/graph.txt"), 4);
  EXPECT_EQ(Invoke("run --graph " + big.string() + " --trials 1 -o /nonexistent-dir/out.csv"), 4);

  const auto bad = Temp("bad.csv");
  std::ofstream(bad) << "1,2,3\n";
  EXPECT_EQ(Invoke("report " + bad.string()), 4);
  fs::remove(bad);
  fs::remove(big);
}

TEST(Cli, RunAndReport) {
  const auto csv = Temp("run.csv");
  ASSERT_EQ(Invoke("run -n 20 --graph-seed 3 --problem mds --algo ea --trials 4 --seed 9 -o " +
                csv.string()),
            0);
  const std::string text = Slurp(csv);
  EXPECT_NE(text.find("# config_hash="), std::string::npos);
  const auto rep = Temp("rep.json");
  ASSERT_EQ(Invoke("report --format json -o " + rep.string() + " " + csv.string()), 0);
  const auto j = nlohmann::json::parse(Slurp(rep));
  ASSERT_EQ(j["aggregates"].size(), 1u);
  EXPECT_EQ(j["aggregates"][0]["trials"], 4);

  // 1 vs 8 workers: identical apart from wall time.
  const auto csv8 = Temp("run8.csv");
  ASSERT_EQ(Invoke("run -n 20 --graph-seed 3 --problem mds --algo ea --trials 4 --seed 9 "
                "--workers 8 -o " + csv8.string()),
            0);
  auto strip = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, out;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') line = line.substr(0, line.rfind(','));
      out += line + "\n";
    }
    return out;
  };
  EXPECT_EQ(strip(text), strip(Slurp(csv8)));
  fs::remove(csv);
  fs::remove(csv8);
  fs::remove(rep);
}

TEST(Cli, Drift) {
  const auto out = Temp("drift.json");
  ASSERT_EQ(Invoke("drift -n 40 --problem mds --trials 5 --seed 2 -o " + out.string()), 0);
  const auto j = nlohmann::json::parse(Slurp(out));
  EXPECT_EQ(j["trials"], 5);
  EXPECT_FALSE(j["bins"].empty());
  EXPECT_EQ(Invoke("drift -n 40 --problem mis --trials 2"), 2);
  fs::remove(out);
}
