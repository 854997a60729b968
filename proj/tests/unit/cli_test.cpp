#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

// Runs the CLI with `args` through the shell; stderr is discarded.
Outcome hitl(const std::string& args) {
  const std::string cmd = std::string(HITL_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hitl-cli-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, RunWritesSuiteEventsAndOracle) {
  const fs::path out = scratch("run");
  const Outcome r = hitl("run --subject builtin:triangle-steve --golden builtin:triangle-golden "
                     "--seed-input '2 2 2' --budget 6 --oracle simulated --rng-seed 7 --out " +
                     out.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
  EXPECT_TRUE(fs::exists(out / "events.jsonl"));
  EXPECT_TRUE(fs::exists(out / "oracle.smt"));
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary.at("labeled"), 6);
  EXPECT_EQ(summary.at("termination"), "budget");

  // The stored oracle is consistent with the stored suite.
  const Outcome e = hitl("eval-oracle --formula " + (out / "oracle.smt").string() + " --suite " +
                     out.string());
  ASSERT_EQ(e.status, 0);
  const auto acc = nlohmann::json::parse(e.out);
  EXPECT_EQ(acc.at("accuracy"), "1.0");
  EXPECT_EQ(acc.at("tests"), 6);
  fs::remove_all(out);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(hitl("run --subject builtin:triangle-steve --golden builtin:triangle-golden").status, 2);
  EXPECT_EQ(hitl("").status, 2);
  EXPECT_EQ(hitl("bogus").status, 2);
  EXPECT_EQ(hitl("run --subject builtin:nope --seed-input '1 1 1' --golden builtin:triangle-golden").status, 2);
  EXPECT_EQ(hitl("run --subject builtin:triangle-steve --seed-input '1 1' --golden builtin:triangle-golden").status, 2);
  EXPECT_EQ(hitl("run --subject builtin:triangle-steve --seed-input '2 2 2' --budget 0 --golden builtin:triangle-golden").status, 2);
  EXPECT_EQ(hitl("run --subject builtin:triangle-steve --seed-input '2 2 2' --oracle simulated").status, 2);
  EXPECT_EQ(hitl("score --patched builtin:triangle-golden --golden builtin:triangle-golden --grid 6..1").status, 2);
  EXPECT_EQ(hitl("experiment --subjects nope").status, 2);
}

TEST(Cli, SessionErrorsExitOne) {
  // A seed the golden version agrees with is not a failure.
  EXPECT_EQ(hitl("run --subject builtin:triangle-steve --golden builtin:triangle-golden "
                 "--seed-input '1 1 1' --oracle simulated").status,
            1);
}

TEST(Cli, Score) {
  const Outcome same = hitl("score --patched builtin:triangle-golden --golden builtin:triangle-golden --grid 1..6");
  EXPECT_EQ(same.status, 0);
  EXPECT_EQ(same.out, "1.0\n");
  const Outcome overfit = hitl("score --patched builtin:triangle-overfit --golden builtin:triangle-golden --grid 1..6");
  EXPECT_EQ(overfit.status, 0);
  EXPECT_LT(std::stod(overfit.out), 1.0);
  const Outcome external = hitl("score --patched \"awk '{print \\$1+\\$2}'\" --golden builtin:threshold-golden --arity 2 --grid 0..3");
  EXPECT_EQ(external.status, 0);
  EXPECT_EQ(external.out, "1.0\n");
}

TEST(Cli, EvalOracleOnGrid) {
  const fs::path dir = scratch("formula");
  fs::create_directories(dir);
  std::ofstream(dir / "f.smt")
      << "(or (and (= (- x0 x1) 0) (= (- x1 x2) 0) (distinct x0 1) (= o 2)) "
         "(and (= (- x0 x1) 0) (= x2 1) (distinct x0 1) (= o 1)))\n";
  const Outcome r = hitl("eval-oracle --formula " + (dir / "f.smt").string() +
                     " --subject builtin:triangle-steve --golden builtin:triangle-golden --grid 1..6");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("accuracy"), "1.0");
  EXPECT_EQ(j.at("conditional_accuracy"), "1.0");
  EXPECT_EQ(j.at("tests"), 216);
  fs::remove_all(dir);
}

TEST(Cli, ExperimentCsvIsReproducible) {
  const fs::path a = scratch("exp-a"), b = scratch("exp-b");
  const std::string args = "experiment --subjects absdiff,threshold --l-values 3,5 --reps 2 --no-timing --out ";
  ASSERT_EQ(hitl(args + a.string()).status, 0);
  ASSERT_EQ(hitl(args + b.string() + " --jobs 2").status, 0);
  const std::string runs = slurp(a / "runs.csv");
  EXPECT_EQ(runs, slurp(b / "runs.csv"));
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
  EXPECT_EQ(std::count(runs.begin(), runs.end(), '\n'), 9);
  fs::remove_all(a);
  fs::remove_all(b);
}
