#include "hitl/subject.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <map>

#include "hitl/errors.hpp"

namespace hitl {

namespace {

// Triangle classifier: 1 equilateral, 2 isosceles, 3 scalene,
// 4 invalid. `equilateral` decides line 6.
Rational classify(std::span<const Rational> s,
                  const std::function<bool(const Rational&, const Rational&,
                                           const Rational&)>& equilateral) {
  const Rational& a = s[0];
  const Rational& b = s[1];
  const Rational& c = s[2];
  if (a <= 0 || b <= 0 || c <= 0) return 4;
  if (a <= c - b || b <= a - c || c <= b - a) return 4;
  if (equilateral(a, b, c)) return 1;
  if (a == b || b == c || c == a) return 2;
  return 3;
}

struct BuiltinEntry {
  BuiltinInfo info;
  BuiltinFunction fn;
};

const std::map<std::string, BuiltinEntry, std::less<>>& registry() {
  static const auto* table = [] {
    auto* t = new std::map<std::string, BuiltinEntry, std::less<>>;
    auto add = [t](std::string name, std::size_t arity, std::string failure,
                   std::string description, BuiltinFunction fn) {
      BuiltinInfo info{name, arity, std::move(failure), std::move(description)};
      t->emplace(std::move(name), BuiltinEntry{std::move(info), std::move(fn)});
    };

    // `a == b == c` in C compares (a == b), i.e. 0 or 1, against c.
    add("triangle-steve", 3,
        "(or (and (= (- x0 x1) 0) (= (- x1 x2) 0) (distinct x0 1) (= o 2)) "
        "(and (= (- x0 x1) 0) (= x2 1) (distinct x0 1) (= o 1)))",
        "triangle classifier with the chained-equality bug on line 6",
        [](std::span<const Rational> s) {
          return classify(s, [](const Rational& a, const Rational& b, const Rational& c) {
            return Rational(a == b ? 1 : 0) == c;
          });
        });
    add("triangle-golden", 3, "", "triangle classifier, line 6 reads a == b && b == c",
        [](std::span<const Rational> s) {
          return classify(s, [](const Rational& a, const Rational& b, const Rational& c) {
            return a == b && b == c;
          });
        });
    add("triangle-overfit", 3, "",
        "plausible patch that replaces line 6 with a == 2; passes <2,2,2> only",
        [](std::span<const Rational> s) {
          return classify(s, [](const Rational& a, const Rational&, const Rational&) {
            return a == 2;
          });
        });
    add("triangle-fixed", 3, "",
        "independently written correct classifier (sorts the sides first)",
        [](std::span<const Rational> s) {
          std::vector<Rational> v(s.begin(), s.end());
          std::sort(v.begin(), v.end());
          if (v[0] <= 0 || v[0] + v[1] <= v[2]) return Rational(4);
          if (v[0] == v[2]) return Rational(1);
          if (v[0] == v[1] || v[1] == v[2]) return Rational(2);
          return Rational(3);
        });

    add("threshold-buggy", 2, "(<= x0 3)",
        "sum of two values, off by one whenever x0 <= 3",
        [](std::span<const Rational> s) {
          return s[0] <= 3 ? Rational(s[0] + s[1] + 1) : Rational(s[0] + s[1]);
        });
    add("threshold-golden", 2, "", "sum of two values",
        [](std::span<const Rational> s) { return Rational(s[0] + s[1]); });

    add("absdiff-buggy", 2, "(< (- x0 x1) 0)",
        "distance between two values, forgets the absolute value",
        [](std::span<const Rational> s) { return Rational(s[0] - s[1]); });
    add("absdiff-golden", 2, "", "distance between two values",
        [](std::span<const Rational> s) { return Rational(boost::multiprecision::abs(s[0] - s[1])); });
    return t;
  }();
  return *table;
}

void ignore_sigpipe() {
  static const bool done = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

Rational run_command(const std::string& command, std::span<const Rational> input,
                     std::chrono::milliseconds timeout) {
  ignore_sigpipe();
  int in_pipe[2];
  int out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) throw SubjectCrash("pipe() failed");
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw SubjectCrash("pipe() failed");
  }

  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw SubjectCrash("fork() failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    const int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) dup2(devnull, STDERR_FILENO);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  const std::string line = input_to_string(input) + "\n";
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = write(in_pipe[1], line.data() + written, line.size() - written);
    if (n <= 0) break;  // child closed stdin early; its exit status decides
    written += static_cast<std::size_t>(n);
  }
  close(in_pipe[1]);

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::string output;
  bool timed_out = false;
  char buffer[4096];
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{out_pipe[0], POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) {
      timed_out = true;
      break;
    }
    const ssize_t n = read(out_pipe[0], buffer, sizeof buffer);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buffer, static_cast<std::size_t>(n));
    if (output.size() > (1u << 20)) break;
  }
  close(out_pipe[0]);

  if (timed_out) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out)
    throw SubjectTimeout("'" + command + "' exceeded " + std::to_string(timeout.count()) +
                         " ms on input " + input_to_string(input));
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw SubjectCrash("'" + command + "' failed on input " + input_to_string(input) +
                       (WIFSIGNALED(status) ? " (signal " + std::to_string(WTERMSIG(status)) + ")"
                                            : " (exit " + std::to_string(WEXITSTATUS(status)) + ")"));

  const auto first = output.find_first_not_of(" \t\r\n");
  const auto last = output.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw OutputFormatError("'" + command + "' printed nothing");
  const std::string token = output.substr(first, last - first + 1);
  try {
    return parse_rational(token);
  } catch (const ParseError&) {
    throw OutputFormatError("'" + command + "' printed a non-number: " + token);
  }
}

}  // namespace

Subject Subject::builtin(std::string_view name) {
  const auto& table = registry();
  const auto it = table.find(name);
  if (it == table.end()) throw StructuralError("unknown builtin subject '" + std::string(name) + "'");
  Subject s;
  s.kind_ = Kind::builtin;
  s.arity_ = it->second.info.arity;
  s.integer_only_ = true;
  s.spec_ = "builtin:" + it->second.info.name;
  s.fn_ = it->second.fn;
  return s;
}

Subject Subject::external(std::string command, std::size_t arity,
                          std::chrono::milliseconds timeout) {
  if (arity == 0) throw StructuralError("external subjects need an arity >= 1");
  if (timeout.count() <= 0) throw StructuralError("subject timeout must be positive");
  Subject s;
  s.kind_ = Kind::external;
  s.arity_ = arity;
  s.timeout_ = timeout;
  s.spec_ = command;
  s.command_ = std::move(command);
  return s;
}

Subject Subject::from_spec(std::string_view spec, std::size_t arity) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.substr(0, prefix.size()) == prefix) {
    Subject s = builtin(spec.substr(prefix.size()));
    if (arity != 0 && arity != s.arity())
      throw StructuralError(std::string(spec) + " has arity " + std::to_string(s.arity()) +
                            ", not " + std::to_string(arity));
    return s;
  }
  return external(std::string(spec), arity);
}

Subject Subject::function(std::string name, std::size_t arity, BuiltinFunction fn,
                          bool integer_only) {
  if (arity == 0) throw StructuralError("subjects need an arity >= 1");
  Subject s;
  s.kind_ = Kind::builtin;
  s.arity_ = arity;
  s.integer_only_ = integer_only;
  s.spec_ = std::move(name);
  s.fn_ = std::move(fn);
  return s;
}

Rational Subject::execute(std::span<const Rational> input) const {
  if (input.size() != arity_)
    throw StructuralError(spec_ + " expects " + std::to_string(arity_) + " inputs, got " +
                          std::to_string(input.size()));
  if (kind_ == Kind::builtin) return fn_(input);
  return run_command(command_, input, timeout_);
}

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> catalog = [] {
    std::vector<BuiltinInfo> out;
    for (const auto& [name, entry] : registry()) out.push_back(entry.info);
    return out;
  }();
  return catalog;
}

TestCase run_subject(const Subject& subject, std::span<const Rational> input) {
  return TestCase{InputVector(input.begin(), input.end()), subject.execute(input)};
}

LabeledTest SimulatedHumanOracle::label(const TestCase& test) const {
  Rational expected;
  try {
    expected = golden_.execute(test.input);
  } catch (const SubjectError& e) {
    throw OracleUnavailable(std::string("golden version unavailable: ") + e.what());
  }
  const Verdict verdict = expected == test.output ? Verdict::passing : Verdict::failing;
  return LabeledTest{test, Label::checked(test, verdict, expected),
                     LabelSource::simulated_golden};
}

}  // namespace hitl
