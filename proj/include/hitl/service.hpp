#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "hitl/config.hpp"
#include "hitl/session.hpp"

namespace httplib {
class Server;
}

namespace hitl {

struct PendingQuery {
  std::uint64_t id = 0;
  TestCase test;
  std::chrono::system_clock::time_point issued_at;
  // Query 0 asks the human to confirm the reported failure.
  bool seed = false;
};

// A human answering through the HTTP API. The session thread blocks in
// query() on a single-slot channel until submit() delivers the matching label.
class InteractiveHuman final : public HumanOracle {
 public:
  enum class Submit { accepted, conflict, invalid };

  Label confirm_seed(const TestCase& seed, Clock::time_point deadline) override;
  std::optional<Label> query(const TestCase& test, Clock::time_point deadline) override;
  LabelSource source() const override { return LabelSource::human; }

  std::optional<PendingQuery> pending() const;
  // `conflict` for an id that is not the pending one (stale, unknown or
  // already answered); `invalid` when the label contradicts the actual output.
  Submit submit(std::uint64_t query_id, Verdict verdict, std::optional<Rational> expected,
                std::string* reason = nullptr);
  // Wakes a blocked query() (which then returns no answer) and refuses new ones.
  void close();

 private:
  std::optional<Label> ask(const TestCase& test, bool seed, Clock::time_point deadline);

  mutable std::mutex mutex_;
  std::condition_variable answered_;
  std::optional<PendingQuery> pending_;
  std::optional<Label> answer_;
  std::uint64_t next_id_ = 0;
  bool closed_ = false;
};

// Serves the labeling API and the console's static files, and tracks session
// progress as a SessionObserver.
class LabelService final : public SessionObserver {
 public:
  LabelService(InteractiveHuman& human, SessionConfig config, std::string subject_spec,
               std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~LabelService() override;

  LabelService(const LabelService&) = delete;
  LabelService& operator=(const LabelService&) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port; throws Error when binding fails.
  int start(const std::string& host, int port);
  void stop();

  void on_event(const SessionEvent& event) override;
  void on_oracle(const LearnedOracle& oracle, const Suite& suite) override;
  void finish(std::string outcome);

  nlohmann::json session_json() const;
  nlohmann::json events_json() const;

 private:
  void install_routes();

  InteractiveHuman& human_;
  SessionConfig config_;
  std::string subject_spec_;
  std::optional<std::filesystem::path> static_dir_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;

  mutable std::mutex mutex_;
  nlohmann::json events_ = nlohmann::json::array();
  std::size_t labeled_ = 0;
  std::size_t failing_ = 0;
  std::string oracle_text_ = "(true)";
  std::string outcome_;  // empty while running
};

// "host:port" or ":port" or "port".
std::pair<std::string, int> parse_listen_address(const std::string& address);

}  // namespace hitl
