#include "hitl/service.hpp"

#include <httplib.h>

#include "hitl/errors.hpp"
#include "hitl/suite_io.hpp"

namespace hitl {

using nlohmann::json;

Label InteractiveHuman::confirm_seed(const TestCase& seed, Clock::time_point deadline) {
  auto label = ask(seed, true, deadline);
  if (!label) throw OracleUnavailable("the human did not confirm the seed");
  return *label;
}

std::optional<Label> InteractiveHuman::query(const TestCase& test, Clock::time_point deadline) {
  return ask(test, false, deadline);
}

std::optional<Label> InteractiveHuman::ask(const TestCase& test, bool seed,
                                           Clock::time_point deadline) {
  std::unique_lock lock(mutex_);
  if (closed_) return std::nullopt;
  pending_ = PendingQuery{next_id_++, test, std::chrono::system_clock::now(), seed};
  answer_.reset();
  answered_.wait_until(lock, deadline, [&] { return answer_.has_value() || closed_; });
  pending_.reset();
  std::optional<Label> out = std::move(answer_);
  answer_.reset();
  return out;
}

std::optional<PendingQuery> InteractiveHuman::pending() const {
  std::lock_guard lock(mutex_);
  return pending_;
}

InteractiveHuman::Submit InteractiveHuman::submit(std::uint64_t query_id, Verdict verdict,
                                                  std::optional<Rational> expected,
                                                  std::string* reason) {
  std::lock_guard lock(mutex_);
  if (!pending_ || pending_->id != query_id || answer_) {
    if (reason) *reason = "query " + std::to_string(query_id) + " is not pending";
    return Submit::conflict;
  }
  try {
    answer_ = Label::checked(pending_->test, verdict, std::move(expected));
  } catch (const StructuralError& e) {
    if (reason) *reason = e.what();
    return Submit::invalid;
  }
  pending_.reset();
  answered_.notify_all();
  return Submit::accepted;
}

void InteractiveHuman::close() {
  std::lock_guard lock(mutex_);
  closed_ = true;
  answered_.notify_all();
}

namespace {

constexpr const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>oracle labeling</title></head>"
    "<body><p>The labeling console is not installed. The JSON API is served under "
    "<code>/api/</code>: session, query, label, events.</p></body></html>";

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

}  // namespace

LabelService::LabelService(InteractiveHuman& human, SessionConfig config,
                           std::string subject_spec,
                           std::optional<std::filesystem::path> static_dir)
    : human_(human),
      config_(std::move(config)),
      subject_spec_(std::move(subject_spec)),
      static_dir_(std::move(static_dir)),
      server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

LabelService::~LabelService() { stop(); }

void LabelService::install_routes() {
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server_->Get("/api/session", [this](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, session_json());
  });

  server_->Get("/api/query", [this](const httplib::Request&, httplib::Response& res) {
    const auto q = human_.pending();
    if (!q) {
      res.status = 204;
      return;
    }
    json input = json::array();
    for (const auto& v : q->test.input) input.push_back(to_string(v));
    const auto issued = std::chrono::duration_cast<std::chrono::milliseconds>(
                            q->issued_at.time_since_epoch())
                            .count();
    reply_json(res, 200,
               {{"query_id", q->id},
                {"input", input},
                {"output", to_string(q->test.output)},
                {"seed", q->seed},
                {"issued_at_ms", issued}});
  });

  server_->Post("/api/label", [this](const httplib::Request& req, httplib::Response& res) {
    std::uint64_t id = 0;
    Verdict verdict;
    std::optional<Rational> expected;
    try {
      const json body = json::parse(req.body);
      const json& qid = body.at("query_id");
      if (!qid.is_number_unsigned()) throw ParseError("query_id must be a non-negative integer", 0);
      id = qid.get<std::uint64_t>();
      verdict = parse_verdict(body.at("verdict").get<std::string>());
      if (body.contains("expected_output") && !body.at("expected_output").is_null()) {
        const json& e = body.at("expected_output");
        if (e.is_string()) expected = parse_rational(e.get<std::string>());
        else if (e.is_number()) expected = parse_rational(e.dump());
        else throw ParseError("expected_output must be a decimal string", 0);
      }
    } catch (const std::exception& e) {
      reply_json(res, 400, {{"error", e.what()}});
      return;
    }
    std::string reason;
    switch (human_.submit(id, verdict, expected, &reason)) {
      case InteractiveHuman::Submit::accepted:
        reply_json(res, 200, {{"accepted", true}, {"query_id", id}});
        return;
      case InteractiveHuman::Submit::conflict:
        reply_json(res, 409, {{"error", reason}});
        return;
      case InteractiveHuman::Submit::invalid:
        reply_json(res, 400, {{"error", reason}});
        return;
    }
  });

  server_->Get("/api/events", [this](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, events_json());
  });

  if (static_dir_) {
    if (!server_->set_mount_point("/", static_dir_->string()))
      throw Error("cannot serve console files from " + static_dir_->string());
  } else {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html");
    });
  }
}

int LabelService::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error("cannot listen on " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void LabelService::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void LabelService::on_event(const SessionEvent& event) {
  std::lock_guard lock(mutex_);
  events_.push_back(event_to_json(event));
}

void LabelService::on_oracle(const LearnedOracle& oracle, const Suite& suite) {
  std::lock_guard lock(mutex_);
  oracle_text_ = formula_to_text(oracle.formula());
  labeled_ = suite.size();
  failing_ = static_cast<std::size_t>(
      std::count_if(suite.begin(), suite.end(), [](const LabeledTest& t) { return t.failing(); }));
}

void LabelService::finish(std::string outcome) {
  std::lock_guard lock(mutex_);
  outcome_ = std::move(outcome);
}

json LabelService::session_json() const {
  std::lock_guard lock(mutex_);
  return {{"subject", subject_spec_},
          {"budget", config_.budget_l},
          {"committee_s", config_.committee_s},
          {"rng_seed", config_.rng_seed},
          {"timeout_ms", config_.loop_timeout.count()},
          {"labeled", labeled_},
          {"failing", failing_},
          {"passing", labeled_ - failing_},
          {"oracle", oracle_text_},
          {"state", outcome_.empty() ? "running" : "finished"},
          {"outcome", outcome_.empty() ? json(nullptr) : json(outcome_)}};
}

json LabelService::events_json() const {
  std::lock_guard lock(mutex_);
  return events_;
}

std::pair<std::string, int> parse_listen_address(const std::string& address) {
  std::string host = "127.0.0.1";
  std::string port = address;
  if (const auto colon = address.rfind(':'); colon != std::string::npos) {
    if (colon > 0) host = address.substr(0, colon);
    port = address.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    const int p = std::stoi(port, &used);
    if (used != port.size() || p < 0 || p > 65535) throw std::out_of_range("port");
    return {host, p};
  } catch (const std::exception&) {
    throw ParseError("bad listen address '" + address + "'", 0);
  }
}

}  // namespace hitl
