#include "oath/service.hpp"

#include <chrono>

#include <httplib.h>

namespace oath {

using nlohmann::json;

LiveSession::LiveSession(const Scenario& scenario, SimConfig config, int pace_ms, bool start_paused)
    : sim_(scenario, config), pace_ms_(pace_ms), paused_(start_paused) {}

LiveSession::~LiveSession() { stop(); }

void LiveSession::start() {
  std::lock_guard lk(mutex_);
  if (worker_.joinable()) return;
  stop_ = false;
  worker_ = std::thread([this] { loop(); });
}

void LiveSession::stop() {
  {
    std::lock_guard lk(mutex_);
    stop_ = true;
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

void LiveSession::loop() {
  std::unique_lock lk(mutex_);
  while (!stop_) {
    cv_.wait(lk, [&] { return stop_ || (!paused_ && !sim_.finished()); });
    if (stop_) break;
    sim_.step();
    if (pace_ms_ > 0) cv_.wait_for(lk, std::chrono::milliseconds(pace_ms_), [&] { return stop_; });
  }
}

void LiveSession::pause() {
  std::lock_guard lk(mutex_);
  paused_ = true;
}

void LiveSession::resume() {
  {
    std::lock_guard lk(mutex_);
    paused_ = false;
  }
  cv_.notify_all();
}

bool LiveSession::step_once() {
  std::lock_guard lk(mutex_);
  if (!paused_ || sim_.finished()) return false;
  sim_.step();
  return true;
}

InstructionAck LiveSession::submit(const Instruction& ins) {
  std::lock_guard lk(mutex_);
  return sim_.submit(ins);
}

json LiveSession::snapshot() const {
  std::lock_guard lk(mutex_);
  json s = sim_.snapshot();
  s["paused"] = paused_;
  return s;
}

json LiveSession::roadmap() const {
  std::lock_guard lk(mutex_);
  return sim_.roadmap_json();
}

json LiveSession::status() const {
  std::lock_guard lk(mutex_);
  return {{"step", sim_.current_step()},
          {"paused", paused_},
          {"finished", sim_.finished()},
          {"outcome", sim_.metrics().outcome},
          {"trace_size", sim_.trace().size()}};
}

std::string LiveSession::trace_jsonl(std::size_t since) const {
  std::lock_guard lk(mutex_);
  const auto& t = sim_.trace();
  if (since >= t.size()) return {};
  return to_jsonl(std::vector<TraceEvent>(t.begin() + static_cast<std::ptrdiff_t>(since), t.end()));
}

std::vector<Instruction> LiveSession::applied_instructions() const {
  std::lock_guard lk(mutex_);
  return sim_.applied_instructions();
}

Metrics LiveSession::metrics() const {
  std::lock_guard lk(mutex_);
  return sim_.metrics();
}

bool LiveSession::paused() const {
  std::lock_guard lk(mutex_);
  return paused_;
}

bool LiveSession::finished() const {
  std::lock_guard lk(mutex_);
  return sim_.finished();
}

std::size_t LiveSession::current_step() const {
  std::lock_guard lk(mutex_);
  return sim_.current_step();
}

namespace {

Reply json_reply(int status, const json& body) { return {status, body.dump(), "application/json"}; }

Reply error_reply(int status, std::vector<std::string> errors) {
  return json_reply(status, {{"accepted", false}, {"errors", errors}});
}

json ack_json(const InstructionAck& ack, double latency_ms) {
  json j = {{"accepted", ack.accepted}, {"step", ack.applied_step}, {"latency_ms", latency_ms}};
  if (!ack.accepted) j["errors"] = json::array({ack.error});
  if (ack.task) j["task"] = *ack.task;
  return j;
}

// Submits and measures the time until the roadmap and plans are updated,
// lock wait included.
json timed_submit(LiveSession& session, const Instruction& ins, bool& accepted) {
  const auto t0 = std::chrono::steady_clock::now();
  const InstructionAck ack = session.submit(ins);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  accepted = ack.accepted;
  return ack_json(ack, ms);
}

}  // namespace

Reply handle_request(LiveSession& session, std::string_view method, std::string_view path, std::string_view body,
                     std::string_view since) {
  const std::string_view prefix = "/api/v1/";
  if (path.substr(0, prefix.size()) != prefix) return error_reply(404, {"unknown path"});
  const std::string_view route = path.substr(prefix.size());

  if (method == "GET") {
    if (route == "snapshot") return json_reply(200, session.snapshot());
    if (route == "roadmap") return json_reply(200, session.roadmap());
    if (route == "status") return json_reply(200, session.status());
    if (route == "trace") {
      std::size_t from = 0;
      if (!since.empty()) {
        try {
          from = std::stoull(std::string(since));
        } catch (const std::exception&) {
          return error_reply(400, {"since: expected a non-negative integer"});
        }
      }
      return {200, session.trace_jsonl(from), "application/x-ndjson"};
    }
    return error_reply(404, {"unknown path"});
  }
  if (method != "POST") return error_reply(405, {"method not allowed"});

  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    return error_reply(400, {std::string("invalid JSON: ") + e.what()});
  }

  if (route == "instruction") {
    Instruction ins;
    try {
      ins = instruction_from_json(doc);
    } catch (const SchemaError& e) {
      return error_reply(400, e.issues());
    }
    bool accepted = false;
    const json ack = timed_submit(session, ins, accepted);
    return json_reply(accepted ? 200 : 409, ack);
  }
  if (route == "translate") {
    if (!doc.is_object() || !doc.contains("text") || !doc["text"].is_string()) return error_reply(400, {"text: missing"});
    const Translation tr = translate(doc["text"].get<std::string>());
    if (!tr.instruction) return error_reply(422, {tr.error});
    json out = {{"instruction", to_json(*tr.instruction)}};
    if (doc.value("submit", false)) {
      bool accepted = false;
      out["ack"] = timed_submit(session, *tr.instruction, accepted);
      return json_reply(accepted ? 200 : 409, out);
    }
    return json_reply(200, out);
  }
  if (route == "control") {
    const std::string action = doc.is_object() ? doc.value("action", "") : "";
    if (action == "pause") {
      session.pause();
    } else if (action == "resume") {
      session.resume();
    } else if (action == "step") {
      if (!session.step_once()) return json_reply(409, {{"errors", {"step needs a paused, unfinished session"}}, {"status", session.status()}});
    } else {
      return error_reply(400, {"action: expected pause, resume or step"});
    }
    return json_reply(200, session.status());
  }
  return error_reply(404, {"unknown path"});
}

struct Service::Impl {
  LiveSession& session;
  httplib::Server server;
  std::thread thread;

  explicit Impl(LiveSession& s) : session(s) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const std::string since = req.has_param("since") ? req.get_param_value("since") : "";
      const Reply r = handle_request(session, req.method, req.path, req.body, since);
      res.status = r.status;
      res.set_content(r.body, r.content_type);
      res.set_header("Access-Control-Allow-Origin", "*");
    };
    server.Get(R"(/api/v1/.*)", forward);
    server.Post(R"(/api/v1/.*)", forward);
    server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.status = 204;
    });
  }
};

Service::Service(LiveSession& session) : impl_(std::make_unique<Impl>(session)) {}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::listen_background() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void Service::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace oath
