#include "hitl/suite_io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hitl/errors.hpp"

namespace hitl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
  if (!out) throw Error("failed writing " + file.string());
}

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) {
  const auto end = text.find('\n');
  std::string line = text.substr(0, end);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

json input_json(const InputVector& input) {
  json arr = json::array();
  for (const auto& v : input) arr.push_back(to_string(v));
  return arr;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("expected a decimal string", 0);
}

}  // namespace

json export_suite(const Suite& suite, const std::string& subject_spec, std::size_t arity,
                  const fs::path& directory) {
  fs::create_directories(directory);
  json tests = json::array();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const LabeledTest& t = suite[i];
    const std::string stem = "t" + std::to_string(i);
    write_text(directory / (stem + ".in"), input_to_string(t.test.input) + "\n");
    json entry{{"id", i},
               {"input", stem + ".in"},
               {"output", to_string(t.test.output)},
               {"verdict", std::string(to_string(t.label.verdict))},
               {"source", std::string(to_string(t.source))}};
    const fs::path expected_file = directory / (stem + ".expected");
    if (t.label.expected_output) {
      write_text(expected_file, to_string(*t.label.expected_output) + "\n");
      entry["expected"] = stem + ".expected";
      entry["expected_missing"] = false;
    } else {
      fs::remove(expected_file);
      entry["expected"] = nullptr;
      entry["expected_missing"] = true;
    }
    tests.push_back(std::move(entry));
  }
  json manifest{{"format", 1}, {"subject", subject_spec}, {"arity", arity}, {"tests", tests}};
  write_text(directory / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

StoredSuite import_suite(const fs::path& directory) {
  json manifest;
  try {
    manifest = json::parse(read_text(directory / "manifest.json"));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest.json: ") + e.what(), e.byte);
  }
  StoredSuite stored;
  try {
    stored.subject = manifest.at("subject").get<std::string>();
    stored.arity = manifest.at("arity").get<std::size_t>();
    for (const auto& entry : manifest.at("tests")) {
      TestCase test{parse_input(first_line(read_text(directory / entry.at("input").get<std::string>()))),
                    parse_rational(entry.at("output").get<std::string>())};
      if (test.arity() != stored.arity)
        throw StructuralError("test " + entry.at("input").get<std::string>() + " has arity " +
                              std::to_string(test.arity()));
      std::optional<Rational> expected;
      if (entry.contains("expected") && !entry.at("expected").is_null())
        expected = parse_rational(
            first_line(read_text(directory / entry.at("expected").get<std::string>())));
      const Verdict verdict = parse_verdict(entry.at("verdict").get<std::string>());
      stored.tests.push_back(LabeledTest{test, Label::checked(test, verdict, expected),
                                         parse_label_source(entry.at("source").get<std::string>())});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest.json: ") + e.what(), 0);
  }
  return stored;
}

json decision_to_json(const CommitteeDecision& d) {
  json j{{"shortcut", d.shortcut}, {"sent", d.send_to_human}};
  if (d.shortcut) {
    j["votes"] = nullptr;
    j["theta_hat"] = nullptr;
  } else {
    j["votes"] = d.votes;
    j["members"] = d.members;
    j["abstained"] = d.abstained;
    j["theta_hat"] = d.theta_hat ? json(to_string(*d.theta_hat)) : json(nullptr);
  }
  return j;
}

json event_to_json(const SessionEvent& e) {
  json j{{"iter", e.iter},
         {"parent", e.parent ? json(*e.parent) : json(nullptr)},
         {"input", input_json(e.test.input)},
         {"output", to_string(e.test.output)}};
  if (e.decision) j["decision"] = decision_to_json(*e.decision);
  if (e.label) {
    json label{{"verdict", std::string(to_string(e.label->verdict))}};
    label["expected"] =
        e.label->expected_output ? json(to_string(*e.label->expected_output)) : json(nullptr);
    j["label"] = label;
  }
  if (e.unanswered) j["unanswered"] = true;
  if (e.truth) j["truth"] = std::string(to_string(*e.truth));
  return j;
}

SessionEvent event_from_json(const json& j) {
  SessionEvent e;
  try {
    e.iter = j.at("iter").get<int>();
    if (!j.at("parent").is_null()) e.parent = j.at("parent").get<int>();
    for (const auto& v : j.at("input")) e.test.input.push_back(rational_from_json(v));
    e.test.output = rational_from_json(j.at("output"));
    if (j.contains("decision")) {
      const json& d = j.at("decision");
      CommitteeDecision decision;
      decision.shortcut = d.at("shortcut").get<bool>();
      decision.send_to_human = d.at("sent").get<bool>();
      if (!decision.shortcut) {
        decision.votes = d.at("votes").get<int>();
        decision.members = d.value("members", 0);
        decision.abstained = d.value("abstained", 0);
        if (!d.at("theta_hat").is_null()) decision.theta_hat = rational_from_json(d.at("theta_hat"));
      }
      e.decision = decision;
    }
    if (j.contains("label")) {
      const json& l = j.at("label");
      Label label{parse_verdict(l.at("verdict").get<std::string>()), std::nullopt};
      if (l.contains("expected") && !l.at("expected").is_null())
        label.expected_output = rational_from_json(l.at("expected"));
      e.label = label;
    }
    e.unanswered = j.value("unanswered", false);
    if (j.contains("truth")) e.truth = parse_verdict(j.at("truth").get<std::string>());
  } catch (const json::exception& ex) {
    throw ParseError(std::string("event: ") + ex.what(), 0);
  }
  return e;
}

void write_events(const std::vector<SessionEvent>& events, const fs::path& file) {
  std::string text;
  for (const auto& e : events) text += event_to_json(e).dump() + "\n";
  write_text(file, text);
}

std::vector<SessionEvent> read_events(const fs::path& file) {
  std::istringstream in(read_text(file));
  std::vector<SessionEvent> events;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      try {
        events.push_back(event_from_json(json::parse(line)));
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("events: ") + e.what(), offset + e.byte);
      }
    }
    offset += line.size() + 1;
  }
  return events;
}

std::string suite_fingerprint(const Suite& suite) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
  };
  for (const auto& t : suite) {
    mix(input_to_string(t.test.input));
    mix("|" + to_string(t.test.output) + "|" + std::string(to_string(t.label.verdict)) + "\n");
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << hash;
  return hex.str();
}

void save_oracle(const LearnedOracle& oracle, const Suite& training, const fs::path& directory) {
  fs::create_directories(directory);
  write_text(directory / "oracle.smt", formula_to_text(oracle.formula()) + "\n");
  json sidecar{{"arity", oracle.formula().arity()},
               {"provenance", std::string(to_string(oracle.provenance()))},
               {"consistent_with", oracle.consistent_with()},
               {"training_suite_hash", suite_fingerprint(training)}};
  write_text(directory / "oracle.json", sidecar.dump(2) + "\n");
}

LraFormula load_formula(const fs::path& file, std::size_t arity) {
  return text_to_formula(read_text(file), arity);
}

}  // namespace hitl
