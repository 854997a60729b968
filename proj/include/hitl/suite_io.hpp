#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hitl/learner.hpp"
#include "hitl/model.hpp"
#include "hitl/session.hpp"

namespace hitl {

struct StoredSuite {
  std::string subject;
  std::size_t arity = 0;
  Suite tests;

  friend bool operator==(const StoredSuite&, const StoredSuite&) = default;
};

// Writes manifest.json plus t<N>.in and (when known) t<N>.expected into
// `directory`, creating it if needed. Returns the manifest.
nlohmann::json export_suite(const Suite& suite, const std::string& subject_spec,
                            std::size_t arity, const std::filesystem::path& directory);

StoredSuite import_suite(const std::filesystem::path& directory);

nlohmann::json decision_to_json(const CommitteeDecision& decision);
nlohmann::json event_to_json(const SessionEvent& event);
SessionEvent event_from_json(const nlohmann::json& json);

void write_events(const std::vector<SessionEvent>& events, const std::filesystem::path& file);
std::vector<SessionEvent> read_events(const std::filesystem::path& file);

// Stable 64-bit FNV-1a fingerprint of the suite's canonical text, as hex.
std::string suite_fingerprint(const Suite& suite);

// oracle.smt (formula text) and oracle.json (provenance, training-suite hash).
void save_oracle(const LearnedOracle& oracle, const Suite& training,
                 const std::filesystem::path& directory);
LraFormula load_formula(const std::filesystem::path& file, std::size_t arity);

}  // namespace hitl
