#pragma once

#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

#include <json.hpp>

#include "oath/simulation.hpp"

namespace oath {

// One authoritative simulation advanced by a paced background thread.
// Readers and instruction producers take the same lock, so everything they
// see or submit lands on a step boundary.
class LiveSession {
 public:
  LiveSession(const Scenario& scenario, SimConfig config = {}, int pace_ms = 100, bool start_paused = false);
  ~LiveSession();
  LiveSession(const LiveSession&) = delete;
  LiveSession& operator=(const LiveSession&) = delete;

  void start();
  void stop();
  void pause();
  void resume();
  // Runs exactly one step while paused; false if running or finished.
  bool step_once();

  InstructionAck submit(const Instruction& ins);

  nlohmann::json snapshot() const;
  nlohmann::json roadmap() const;
  nlohmann::json status() const;
  std::string trace_jsonl(std::size_t since = 0) const;
  std::vector<Instruction> applied_instructions() const;
  Metrics metrics() const;
  bool paused() const;
  bool finished() const;
  std::size_t current_step() const;

 private:
  void loop();

  mutable std::mutex mutex_;
  std::condition_variable cv_;
  Simulation sim_;
  int pace_ms_;
  bool paused_;
  bool stop_ = false;
  std::thread worker_;
};

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Routes under /api/v1: GET snapshot, roadmap, trace (?since=n), status;
// POST instruction, translate, control.
Reply handle_request(LiveSession& session, std::string_view method, std::string_view path, std::string_view body,
                     std::string_view since = {});

// HTTP front end for a LiveSession.
class Service {
 public:
  explicit Service(LiveSession& session);
  ~Service();

  // Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  void listen();            // blocks until stop()
  void listen_background();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace oath
