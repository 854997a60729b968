// hitl: command-line front end for active oracle learning sessions,
// experiments and scoring.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "hitl/errors.hpp"
#include "hitl/eval.hpp"
#include "hitl/service.hpp"
#include "hitl/session.hpp"
#include "hitl/suite_io.hpp"

namespace {

using namespace hitl;
namespace fs = std::filesystem;

// Thrown for bad flag values that CLI11 cannot see (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::chrono::milliseconds seconds_to_ms(double seconds) {
  if (!(seconds >= 0)) throw UsageError("--timeout must be a non-negative number of seconds");
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

std::pair<std::int64_t, std::int64_t> parse_grid(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--grid expects LO..HI, got '" + text + "'");
  try {
    std::size_t a = 0, b = 0;
    const std::string lo_text = text.substr(0, dots), hi_text = text.substr(dots + 2);
    const std::int64_t lo = std::stoll(lo_text, &a);
    const std::int64_t hi = std::stoll(hi_text, &b);
    if (a != lo_text.size() || b != hi_text.size() || lo > hi) throw std::invalid_argument("grid");
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError("--grid expects LO..HI with LO <= HI, got '" + text + "'");
  }
}

Subject make_subject(const std::string& spec, std::size_t arity, const char* flag) {
  try {
    return Subject::from_spec(spec, arity);
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

// Shortest decimal with at least one fractional digit: 1 -> "1.0".
std::string decimal(const Rational& value) {
  if (is_integer(value)) return to_string(value) + ".0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", to_double(value));
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

void apply_config_file(const fs::path& file, SessionConfig& config) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read config file " + file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.contains("mutation")) {
      const auto& m = j.at("mutation");
      if (m.contains("keep_prob")) config.mutation.keep_prob = m.at("keep_prob").get<double>();
      if (m.contains("random_range")) {
        const auto& r = m.at("random_range");
        config.mutation.random_min = r.at(0).get<std::int64_t>();
        config.mutation.random_max = r.at(1).get<std::int64_t>();
      }
      if (m.contains("integer_only"))
        config.mutation.integer_only = m.at("integer_only").get<bool>();
    }
    if (j.contains("learner")) {
      const auto& l = j.at("learner");
      if (l.contains("max_evaluations"))
        config.learner.max_evaluations = l.at("max_evaluations").get<std::int64_t>();
      if (l.contains("max_terms")) config.learner.max_terms = l.at("max_terms").get<int>();
      if (l.contains("max_literals")) config.learner.max_literals = l.at("max_literals").get<int>();
      if (l.contains("beam_width")) config.learner.beam_width = l.at("beam_width").get<int>();
    }
    if (j.contains("committee_budget_factor"))
      config.committee_budget_factor = j.at("committee_budget_factor").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad config file " + file.string() + ": " + e.what());
  }
}

void validate_config(const SessionConfig& config) {
  try {
    config.validate();
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
  std::string subject;
  std::string golden;
  std::size_t arity = 0;
  std::string seed_input;
  int budget = 30;
  int committee = 10;
  double timeout_s = 600;
  std::string oracle = "simulated";
  std::uint64_t rng_seed = 0;
  std::string out;
  std::string serve = "127.0.0.1:8080";
  std::string static_dir;
  std::string config_file;
  bool linger = false;
  bool quiet = false;
};

void write_outputs(const fs::path& dir, const SessionResult& result, const Subject& subject) {
  export_suite(result.suite, subject.spec(), subject.arity(), dir);
  write_events(result.events, dir / "events.jsonl");
  save_oracle(result.oracle, result.suite, dir);
}

nlohmann::json result_summary(const SessionResult& result) {
  return {{"termination", std::string(to_string(result.termination))},
          {"labeled", result.suite.size()},
          {"generated", result.generated},
          {"decided_to_label", result.decided_to_label},
          {"human_labeled", result.human_labeled},
          {"labeled_failing", result.labeled_failing},
          {"duplicates_skipped", result.duplicates_skipped},
          {"elapsed_ms", result.elapsed.count()},
          {"oracle", formula_to_text(result.oracle.formula())},
          {"provenance", std::string(to_string(result.oracle.provenance()))}};
}

class SignalWatcher {
 public:
  // Blocks SIGINT/SIGTERM process-wide; must run before other threads start.
  SignalWatcher() {
    sigemptyset(&set_);
    sigaddset(&set_, SIGINT);
    sigaddset(&set_, SIGTERM);
    sigaddset(&set_, SIGUSR1);
    pthread_sigmask(SIG_BLOCK, &set_, nullptr);
  }

  template <class Fn>
  void start(Fn on_signal) {
    thread_ = std::thread([this, on_signal] {
      int sig = 0;
      while (sigwait(&set_, &sig) == 0) {
        if (sig == SIGUSR1) return;
        on_signal();
        signalled_ = true;
      }
    });
  }

  bool signalled() const { return signalled_; }

  // Blocks until SIGINT/SIGTERM arrives (used by --linger).
  void wait() {
    if (thread_.joinable()) thread_.join();
  }

  ~SignalWatcher() {
    if (thread_.joinable()) {
      pthread_kill(thread_.native_handle(), SIGUSR1);
      thread_.join();
    }
  }

 private:
  sigset_t set_;
  std::thread thread_;
  std::atomic<bool> signalled_{false};
};

int cmd_run(const RunArgs& args) {
  SessionConfig config;
  if (!args.config_file.empty()) apply_config_file(args.config_file, config);
  config.budget_l = args.budget;
  config.committee_s = args.committee;
  config.loop_timeout = seconds_to_ms(args.timeout_s);
  config.rng_seed = args.rng_seed;
  validate_config(config);

  const Subject subject = make_subject(args.subject, args.arity, "--subject");
  InputVector seed;
  try {
    seed = parse_input(args.seed_input);
  } catch (const Error& e) {
    throw UsageError(std::string("--seed-input: ") + e.what());
  }
  if (seed.size() != subject.arity())
    throw UsageError("--seed-input has " + std::to_string(seed.size()) +
                     " values but the subject takes " + std::to_string(subject.arity()));
  std::optional<Subject> golden;
  if (!args.golden.empty()) golden = make_subject(args.golden, subject.arity(), "--golden");

  SessionOptions options;
  if (golden) options.ground_truth = *golden;

  std::optional<SessionResult> result;
  if (args.oracle == "simulated") {
    if (!golden) throw UsageError("--oracle simulated needs --golden");
    SimulatedHuman human(*golden);
    result.emplace(run_session(config, subject, seed, human, options));
  } else {
    const auto [host, port] = [&] {
      try {
        return parse_listen_address(args.serve);
      } catch (const Error& e) {
        throw UsageError(std::string("--serve: ") + e.what());
      }
    }();
    SignalWatcher signals;
    InteractiveHuman human;
    std::optional<fs::path> static_dir;
    if (!args.static_dir.empty()) static_dir = args.static_dir;
    LabelService service(human, config, subject.spec(), static_dir);
    const int bound = service.start(host, port);
    std::cerr << "labeling console at http://" << host << ":" << bound << "/\n";

    std::atomic<bool> cancel{false};
    signals.start([&] {
      cancel = true;
      human.close();
    });
    options.observer = &service;
    options.cancel = &cancel;
    try {
      result.emplace(run_session(config, subject, seed, human, options));
    } catch (const Error& e) {
      service.finish(std::string("error: ") + e.what());
      service.stop();
      throw;
    }
    service.finish(std::string(to_string(result->termination)));
    if (args.linger && !cancel) {
      std::cerr << "session finished; serving until interrupted\n";
      signals.wait();
    }
    service.stop();
  }

  if (!args.out.empty()) write_outputs(args.out, *result, subject);
  if (!args.quiet) std::cout << result_summary(*result).dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
  std::vector<std::string> subjects{"triangle"};
  std::vector<int> l_values{10, 20, 30};
  int reps = 30;
  std::uint64_t base_seed = 1;
  std::string out;
  bool no_timing = false;
  unsigned jobs = 1;
  int committee = 10;
  double timeout_s = 600;
  bool progress = false;
};

int cmd_experiment(const ExperimentArgs& args) {
  ExperimentPlan plan;
  for (const auto& name : args.subjects) {
    try {
      plan.subjects.push_back(builtin_experiment(name));
    } catch (const Error& e) {
      throw UsageError(std::string("--subjects: ") + e.what());
    }
  }
  plan.l_values = args.l_values;
  for (int l : plan.l_values)
    if (l < 1) throw UsageError("--l-values must be positive");
  if (args.reps < 1) throw UsageError("--reps must be positive");
  plan.repetitions = args.reps;
  plan.base_seed = args.base_seed;
  plan.record_wall_time = !args.no_timing;
  plan.jobs = std::max(1u, args.jobs);
  plan.session.committee_s = args.committee;
  plan.session.loop_timeout = seconds_to_ms(args.timeout_s);
  validate_config(plan.session);

  ProgressFn progress;
  if (args.progress)
    progress = [](const RunReport& r) {
      std::cerr << r.subject << " l=" << r.l << " rep=" << r.rep << " " << r.status << "\n";
    };
  const auto reports = run_experiment(plan, progress);
  const std::string runs = runs_csv(reports);
  const std::string summary = summary_csv(reports);
  if (args.out.empty()) {
    std::cout << summary;
  } else {
    fs::create_directories(args.out);
    std::ofstream(fs::path(args.out) / "runs.csv") << runs;
    std::ofstream(fs::path(args.out) / "summary.csv") << summary;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// score / eval-oracle

ValidationSuite load_validation(const std::string& suite_dir, const std::string& subject_spec,
                                const std::string& golden_spec, const std::string& grid,
                                std::size_t arity) {
  if (!suite_dir.empty()) return import_suite(suite_dir).tests;
  if (subject_spec.empty() || golden_spec.empty() || grid.empty())
    throw UsageError("give either --suite DIR or --subject, --golden and --grid");
  const Subject buggy = make_subject(subject_spec, arity, "--subject");
  const Subject golden = make_subject(golden_spec, buggy.arity(), "--golden");
  const auto [lo, hi] = parse_grid(grid);
  return grid_validation_suite(buggy, golden, lo, hi);
}

struct ScoreArgs {
  std::string patched;
  std::string golden;
  std::size_t arity = 0;
  std::string grid;
  std::string suite;
};

int cmd_score(const ScoreArgs& args) {
  const Subject patched = make_subject(args.patched, args.arity, "--patched");
  const Subject golden = make_subject(args.golden, patched.arity(), "--golden");
  ValidationSuite v;
  if (!args.suite.empty()) {
    v = import_suite(args.suite).tests;
  } else {
    if (args.grid.empty()) throw UsageError("score needs --grid or --suite");
    const auto [lo, hi] = parse_grid(args.grid);
    v = grid_validation_suite(golden, golden, lo, hi);
  }
  std::cout << decimal(validation_score(patched, v, golden)) << "\n";
  return 0;
}

struct EvalArgs {
  std::string formula;
  std::size_t arity = 0;
  std::string suite;
  std::string subject;
  std::string golden;
  std::string grid;
};

int cmd_eval_oracle(const EvalArgs& args) {
  const ValidationSuite v =
      load_validation(args.suite, args.subject, args.golden, args.grid, args.arity);
  if (v.empty()) throw UsageError("the validation suite is empty");
  const std::size_t arity = args.arity ? args.arity : v.front().test.arity();
  const LraFormula f = load_formula(args.formula, arity);
  nlohmann::json out{{"tests", v.size()}, {"accuracy", decimal(prediction_accuracy(f, v))}};
  const bool any_failing =
      std::any_of(v.begin(), v.end(), [](const LabeledTest& t) { return t.failing(); });
  out["conditional_accuracy"] =
      any_failing ? nlohmann::json(decimal(conditional_accuracy(f, v))) : nlohmann::json(nullptr);
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active learning of automatic bug oracles for numeric programs"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one labeling session");
  run_cmd->add_option("--subject", run.subject, "builtin:NAME or a shell command")->required();
  run_cmd->add_option("--golden", run.golden, "reference version (simulated human, ground truth)");
  run_cmd->add_option("--arity", run.arity, "number of inputs (required for commands)");
  run_cmd->add_option("--seed-input", run.seed_input, "failing input, space separated")->required();
  run_cmd->add_option("--budget", run.budget, "maximum labeled tests l")->capture_default_str();
  run_cmd->add_option("--committee", run.committee, "committee size S")->capture_default_str();
  run_cmd->add_option("--timeout", run.timeout_s, "loop timeout in seconds")->capture_default_str();
  run_cmd->add_option("--oracle", run.oracle, "who labels")
      ->check(CLI::IsMember({"simulated", "interactive"}))
      ->capture_default_str();
  run_cmd->add_option("--rng-seed", run.rng_seed, "random seed")->capture_default_str();
  run_cmd->add_option("--out", run.out, "directory for the suite, events and oracle");
  run_cmd->add_option("--serve", run.serve, "listen address for interactive mode")
      ->capture_default_str();
  run_cmd->add_option("--static", run.static_dir, "console files to serve at /");
  run_cmd->add_option("--config", run.config_file, "JSON file with mutation/learner settings");
  run_cmd->add_flag("--linger", run.linger, "keep serving after the session ends");
  run_cmd->add_flag("--quiet", run.quiet, "do not print the result summary");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Repeated sessions on builtin subjects");
  exp_cmd->add_option("--subjects", exp.subjects, "triangle, threshold, absdiff")
      ->delimiter(',')
      ->capture_default_str();
  exp_cmd->add_option("--l-values", exp.l_values, "budgets")->delimiter(',')->capture_default_str();
  exp_cmd->add_option("--reps", exp.reps, "repetitions per budget")->capture_default_str();
  exp_cmd->add_option("--base-seed", exp.base_seed, "seed of repetition 0")->capture_default_str();
  exp_cmd->add_option("--out", exp.out, "directory for runs.csv and summary.csv");
  exp_cmd->add_flag("--no-timing", exp.no_timing, "write wall_ms as 0 (reproducible CSV)");
  exp_cmd->add_option("--jobs", exp.jobs, "parallel sessions")->capture_default_str();
  exp_cmd->add_option("--committee", exp.committee, "committee size S")->capture_default_str();
  exp_cmd->add_option("--timeout", exp.timeout_s, "loop timeout in seconds")->capture_default_str();
  exp_cmd->add_flag("--progress", exp.progress, "report each finished session on stderr");

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Validation score of a patched program");
  score_cmd->add_option("--patched", score.patched, "patched program")->required();
  score_cmd->add_option("--golden", score.golden, "reference version")->required();
  score_cmd->add_option("--arity", score.arity, "number of inputs (required for commands)");
  score_cmd->add_option("--grid", score.grid, "integer grid LO..HI per input");
  score_cmd->add_option("--suite", score.suite, "exported suite directory instead of a grid");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval-oracle", "Accuracy of a stored oracle formula");
  eval_cmd->add_option("--formula", eval.formula, "oracle.smt file")->required();
  eval_cmd->add_option("--arity", eval.arity, "formula arity (default: from the suite)");
  eval_cmd->add_option("--suite", eval.suite, "exported suite directory");
  eval_cmd->add_option("--subject", eval.subject, "buggy program, for a grid suite");
  eval_cmd->add_option("--golden", eval.golden, "reference version, for a grid suite");
  eval_cmd->add_option("--grid", eval.grid, "integer grid LO..HI per input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*exp_cmd) return cmd_experiment(exp);
    if (*score_cmd) return cmd_score(score);
    if (*eval_cmd) return cmd_eval_oracle(eval);
  } catch (const UsageError& e) {
    std::cerr << "hitl: " << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hitl: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
