#include "hitl/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "hitl/errors.hpp"

namespace hitl {

ValidationSuite grid_validation_suite(const Subject& buggy, const Subject& golden,
                                      std::int64_t lo, std::int64_t hi,
                                      const std::optional<InputVector>& exclude) {
  if (buggy.arity() != golden.arity())
    throw StructuralError("buggy and golden versions disagree on arity");
  if (lo > hi) throw StructuralError("empty grid");
  const SimulatedHumanOracle oracle(golden);
  ValidationSuite suite;
  std::vector<std::int64_t> cursor(buggy.arity(), lo);
  for (;;) {
    InputVector input(cursor.begin(), cursor.end());
    if (!exclude || input != *exclude) {
      LabeledTest t = oracle.label(run_subject(buggy, input));
      suite.push_back(std::move(t));
    }
    std::size_t i = cursor.size();
    while (i > 0 && cursor[i - 1] == hi) cursor[--i] = lo;
    if (i == 0) break;
    ++cursor[i - 1];
  }
  return suite;
}

Rational prediction_accuracy(const LraFormula& oracle, std::span<const LabeledTest> suite) {
  if (suite.empty()) throw StructuralError("accuracy of an empty validation suite");
  const auto agree = std::count_if(suite.begin(), suite.end(), [&](const LabeledTest& t) {
    return evaluate_formula(oracle, t.test) == t.failing();
  });
  return Rational(agree, static_cast<std::int64_t>(suite.size()));
}

Rational conditional_accuracy(const LraFormula& oracle, std::span<const LabeledTest> suite) {
  std::int64_t failing = 0, caught = 0;
  for (const auto& t : suite) {
    if (!t.failing()) continue;
    ++failing;
    if (evaluate_formula(oracle, t.test)) ++caught;
  }
  if (failing == 0) throw StructuralError("conditional accuracy needs a failing validation test");
  return Rational(caught, failing);
}

EffortMetrics effort_metrics(std::span<const SessionEvent> events) {
  if (events.empty()) throw StructuralError("effort metrics of an empty event log");
  EffortMetrics m;
  int truth_known = 0, truth_failing = 0;
  for (const auto& e : events) {
    if (e.is_seed()) continue;
    ++m.generated;
    if (e.truth) {
      ++truth_known;
      if (*e.truth == Verdict::failing) ++truth_failing;
    }
    if (e.label) {
      ++m.labeled;
      if (e.label->verdict == Verdict::failing) ++m.labeled_failing;
      if (e.decision && e.decision->shortcut) ++m.shortcut_sent;
      else ++m.committee_sent;
    }
  }
  if (m.generated > 0) {
    m.p_labeled = Rational(m.labeled, m.generated);
    if (truth_known == m.generated) {
      m.generated_failing = truth_failing;
      m.p_generate_failing = Rational(truth_failing, m.generated);
    }
  }
  if (m.labeled > 0) m.p_label_failing = Rational(m.labeled_failing, m.labeled);
  return m;
}

Rational validation_score(const Subject& patched, std::span<const LabeledTest> suite,
                          const Subject& golden) {
  if (patched.arity() != golden.arity())
    throw StructuralError("patched and golden versions disagree on arity");
  if (suite.empty()) throw StructuralError("validation score of an empty suite");
  std::int64_t passed = 0;
  for (const auto& t : suite) {
    try {
      if (patched.execute(t.test.input) == golden.execute(t.test.input)) ++passed;
    } catch (const SubjectError&) {
      // counts as a failing validation test
    }
  }
  return Rational(passed, static_cast<std::int64_t>(suite.size()));
}

ExperimentSubject builtin_experiment(std::string_view name) {
  auto make = [](std::string n, std::string_view buggy, std::string_view golden, InputVector seed,
                 std::int64_t lo, std::int64_t hi) {
    Subject b = Subject::builtin(buggy);
    Subject g = Subject::builtin(golden);
    ValidationSuite v = grid_validation_suite(b, g, lo, hi, seed);
    return ExperimentSubject{std::move(n), std::move(b), std::move(g), std::move(seed),
                             std::move(v)};
  };
  if (name == "triangle")
    return make("triangle", "triangle-steve", "triangle-golden", {2, 2, 2}, 1, 6);
  if (name == "threshold")
    return make("threshold", "threshold-buggy", "threshold-golden", {2, 5}, -4, 10);
  if (name == "absdiff")
    return make("absdiff", "absdiff-buggy", "absdiff-golden", {1, 4}, -5, 5);
  throw StructuralError("unknown experiment subject '" + std::string(name) + "'");
}

namespace {

RunReport run_one(const ExperimentPlan& plan, const ExperimentSubject& subject, int l, int rep) {
  RunReport r;
  r.subject = subject.name;
  r.l = l;
  r.rep = rep;
  r.seed = plan.base_seed + static_cast<std::uint64_t>(rep);
  const auto start = Clock::now();
  try {
    SessionConfig config = plan.session;
    config.budget_l = l;
    config.rng_seed = r.seed;
    SimulatedHuman human(subject.golden);
    SessionOptions options;
    options.ground_truth = subject.golden;
    const SessionResult result = run_session(config, subject.buggy, subject.seed, human, options);
    r.status = std::string(to_string(result.termination));
    r.accuracy = prediction_accuracy(result.oracle.formula(), subject.validation);
    r.conditional_accuracy = conditional_accuracy(result.oracle.formula(), subject.validation);
    r.effort = effort_metrics(result.events);
  } catch (const std::exception& e) {
    r.status = std::string("error: ") + e.what();
  }
  if (plan.record_wall_time)
    r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return r;
}

std::string fixed(const std::optional<Rational>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", to_double(*v));
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::vector<RunReport> run_experiment(const ExperimentPlan& plan, const ProgressFn& progress) {
  if (plan.repetitions < 1) throw StructuralError("repetitions must be >= 1");
  struct Job {
    const ExperimentSubject* subject;
    int l;
    int rep;
  };
  std::vector<Job> jobs;
  for (const auto& s : plan.subjects)
    for (int l : plan.l_values)
      for (int rep = 0; rep < plan.repetitions; ++rep) jobs.push_back({&s, l, rep});

  std::vector<RunReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      reports[i] = run_one(plan, *jobs[i].subject, jobs[i].l, jobs[i].rep);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(reports[i]);
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(plan.jobs, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::sort(reports.begin(), reports.end(), [](const RunReport& a, const RunReport& b) {
    return std::tie(a.subject, a.l, a.rep) < std::tie(b.subject, b.l, b.rep);
  });
  return reports;
}

std::string runs_csv(std::span<const RunReport> reports) {
  std::string out =
      "subject,l,rep,seed,accuracy,cond_accuracy,generated,labeled,labeled_failing,p_labeled,"
      "p_label_failing,p_generate_failing,wall_ms,status\n";
  for (const auto& r : reports) {
    out += csv_field(r.subject) + "," + std::to_string(r.l) + "," + std::to_string(r.rep) + "," +
           std::to_string(r.seed) + ",";
    if (r.ok()) {
      out += fixed(r.accuracy) + "," + fixed(r.conditional_accuracy) + "," +
             std::to_string(r.effort.generated) + "," + std::to_string(r.effort.labeled) + "," +
             std::to_string(r.effort.labeled_failing) + "," + fixed(r.effort.p_labeled) + "," +
             fixed(r.effort.p_label_failing) + "," + fixed(r.effort.p_generate_failing) + ",";
    } else {
      out += ",,,,,,,,";
    }
    out += std::to_string(r.wall_ms) + "," + csv_field(r.status) + "\n";
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::string summary_csv(std::span<const RunReport> reports) {
  std::map<std::pair<std::string, int>, std::vector<const RunReport*>> groups;
  for (const auto& r : reports) groups[{r.subject, r.l}].push_back(&r);

  std::string out =
      "subject,l,runs,errors,median_accuracy,mean_accuracy,median_cond_accuracy,"
      "mean_cond_accuracy,median_p_labeled,mean_p_labeled,median_p_label_failing,"
      "mean_p_label_failing,median_p_generate_failing,mean_p_generate_failing,"
      "pooled_p_label_failing,pooled_p_generate_failing\n";
  for (const auto& [key, rows] : groups) {
    int errors = 0;
    std::vector<double> acc, cond, pl, plf, pgf;
    std::int64_t labeled = 0, labeled_failing = 0, generated = 0, generated_failing = 0;
    for (const RunReport* r : rows) {
      if (!r->ok()) {
        ++errors;
        continue;
      }
      acc.push_back(to_double(*r->accuracy));
      cond.push_back(to_double(*r->conditional_accuracy));
      if (r->effort.p_labeled) pl.push_back(to_double(*r->effort.p_labeled));
      if (r->effort.p_label_failing) plf.push_back(to_double(*r->effort.p_label_failing));
      if (r->effort.p_generate_failing) pgf.push_back(to_double(*r->effort.p_generate_failing));
      labeled += r->effort.labeled;
      labeled_failing += r->effort.labeled_failing;
      if (r->effort.generated_failing) {
        generated += r->effort.generated;
        generated_failing += *r->effort.generated_failing;
      }
    }
    auto mean = [](const std::vector<double>& v) {
      return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    auto stats = [&](const std::vector<double>& v) {
      return v.empty() ? std::string(",") : fixed(median(v)) + "," + fixed(mean(v));
    };
    out += csv_field(key.first) + "," + std::to_string(key.second) + "," +
           std::to_string(rows.size()) + "," + std::to_string(errors) + "," + stats(acc) + "," +
           stats(cond) + "," + stats(pl) + "," + stats(plf) + "," + stats(pgf) + "," +
           (labeled ? fixed(static_cast<double>(labeled_failing) / static_cast<double>(labeled)) : "") +
           "," +
           (generated ? fixed(static_cast<double>(generated_failing) / static_cast<double>(generated))
                      : "") +
           "\n";
  }
  return out;
}

}  // namespace hitl
