#include <doctest.h>

#include <chrono>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "oath/service.hpp"
#include "sim_fixtures.hpp"

using namespace oath;
using nlohmann::json;

namespace {

Scenario small_field() {
  Scenario s = fixtures::open_field(500);
  s.robots = {fixtures::robot(0, {1, 1}), fixtures::robot(1, {19, 1})};
  s.tasks = {fixtures::task(0, {5, 5}, "A"), fixtures::task(1, {15, 5}, "B"), fixtures::task(2, {10, 10}, "A")};
  return s;
}

const std::string add_task_body =
    R"({"schema":"oath.instruction/1","intent":"add_task","payload":{"pickup":[4,12],"delivery":"B"}})";

std::vector<json> lines(const std::string& ndjson) {
  std::vector<json> out;
  std::stringstream ss(ndjson);
  for (std::string l; std::getline(ss, l);) {
    if (!l.empty()) out.push_back(json::parse(l));
  }
  return out;
}

}  // namespace

TEST_SUITE("service") {

TEST_CASE("GET endpoints on a paused session") {
  LiveSession session(small_field(), {}, 1, true);
  Reply r = handle_request(session, "GET", "/api/v1/snapshot", "");
  CHECK(r.status == 200);
  const json snap = json::parse(r.body);
  CHECK(snap["schema"] == "oath.snapshot/1");
  CHECK(snap["paused"] == true);
  CHECK(snap["robots"].size() == 2);
  CHECK(snap["tasks"].size() == 3);

  r = handle_request(session, "GET", "/api/v1/roadmap", "");
  CHECK(r.status == 200);
  CHECK(json::parse(r.body)["nodes"].size() > 10);

  r = handle_request(session, "GET", "/api/v1/status", "");
  CHECK(json::parse(r.body)["step"] == 0);

  r = handle_request(session, "GET", "/api/v1/trace", "");
  CHECK(r.content_type == "application/x-ndjson");
  CHECK(handle_request(session, "GET", "/api/v1/trace", "", "abc").status == 400);
  CHECK(handle_request(session, "GET", "/api/v1/nothing", "").status == 404);
  CHECK(handle_request(session, "DELETE", "/api/v1/snapshot", "").status == 405);
}

TEST_CASE("instruction errors are all reported") {
  LiveSession session(small_field(), {}, 1, true);
  Reply r = handle_request(session, "POST", "/api/v1/instruction", "not json");
  CHECK(r.status == 400);
  r = handle_request(session, "POST", "/api/v1/instruction",
                     R"({"schema":"oath.instruction/9","intent":"fly","payload":{}})");
  CHECK(r.status == 400);
  const json j = json::parse(r.body);
  CHECK(j["accepted"] == false);
  CHECK(j["errors"].size() >= 2);
}

TEST_CASE("accepted add_task shows up at the next boundary") {
  LiveSession session(small_field(), {}, 1, true);
  CHECK(handle_request(session, "POST", "/api/v1/control", R"({"action":"step"})").status == 200);
  const Reply r = handle_request(session, "POST", "/api/v1/instruction", add_task_body);
  REQUIRE(r.status == 200);
  const json ack = json::parse(r.body);
  CHECK(ack["accepted"] == true);
  CHECK(ack["task"] == 3);
  CHECK(ack["step"] == 1);
  CHECK(ack["latency_ms"].get<double>() >= 0.0);
  const json snap = session.snapshot();
  bool found = false;
  for (const auto& t : snap["tasks"]) found = found || t["id"] == 3;
  CHECK(found);
  REQUIRE(session.applied_instructions().size() == 1);
  CHECK(session.applied_instructions()[0].issue_step == 1);
}

TEST_CASE("rejected instruction answers 409") {
  LiveSession session(small_field(), {}, 1, true);
  const Reply r = handle_request(session, "POST", "/api/v1/instruction",
                                 R"({"schema":"oath.instruction/1","intent":"change_task_priority","payload":{"task":99,"priority":2}})");
  CHECK(r.status == 409);
  CHECK(json::parse(r.body)["errors"].size() == 1);
}

TEST_CASE("control: pause, step, resume") {
  LiveSession session(small_field(), {}, 1, true);
  CHECK(handle_request(session, "POST", "/api/v1/control", R"({"action":"jump"})").status == 400);
  for (int i = 0; i < 3; ++i) handle_request(session, "POST", "/api/v1/control", R"({"action":"step"})");
  CHECK(session.current_step() == 3);

  session.start();
  handle_request(session, "POST", "/api/v1/control", R"({"action":"resume"})");
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  CHECK(handle_request(session, "POST", "/api/v1/control", R"({"action":"step"})").status == 409);
  handle_request(session, "POST", "/api/v1/control", R"({"action":"pause"})");
  const std::size_t frozen = session.current_step();
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  CHECK(session.current_step() == frozen);
  CHECK(frozen >= 3);
  session.resume();
  while (!session.finished()) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  CHECK(session.current_step() >= frozen);
  CHECK(session.metrics().delivered == 3);
  session.stop();

  const Reply late = handle_request(session, "POST", "/api/v1/instruction", add_task_body);
  CHECK(late.status == 409);
  CHECK(handle_request(session, "POST", "/api/v1/control", R"({"action":"step"})").status == 409);
}

TEST_CASE("translate endpoint") {
  LiveSession session(small_field(), {}, 1, true);
  Reply r = handle_request(session, "POST", "/api/v1/translate", R"({"text":"hello there"})");
  CHECK(r.status == 422);
  r = handle_request(session, "POST", "/api/v1/translate", R"({"text":"pickup task at 3.5, 4 deliver to 10 12"})");
  CHECK(r.status == 200);
  json j = json::parse(r.body);
  CHECK(j["instruction"]["intent"] == "add_task");
  CHECK_FALSE(j.contains("ack"));
  CHECK(session.applied_instructions().empty());

  r = handle_request(session, "POST", "/api/v1/translate", R"({"text":"Please prioritize task 1","submit":true})");
  CHECK(r.status == 200);
  j = json::parse(r.body);
  CHECK(j["ack"]["accepted"] == true);
  CHECK(session.applied_instructions().size() == 1);
}

TEST_CASE("trace since and FIFO order of applied instructions") {
  LiveSession session(small_field(), {}, 1, true);
  session.step_once();
  const auto all = lines(session.trace_jsonl());
  REQUIRE(all.size() > 2);
  const auto tail = lines(handle_request(session, "GET", "/api/v1/trace", "", "2").body);
  CHECK(tail.size() == all.size() - 2);
  CHECK(tail.front() == all[2]);
  CHECK(handle_request(session, "GET", "/api/v1/trace", "", std::to_string(all.size() + 5)).body.empty());

  for (int i = 0; i < 3; ++i) {
    json body = json::parse(add_task_body);
    body["payload"]["id"] = 20 + i;
    CHECK(handle_request(session, "POST", "/api/v1/instruction", body.dump()).status == 200);
  }
  const auto applied = session.applied_instructions();
  REQUIRE(applied.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(std::get<AddTaskPayload>(applied[i].payload).id == 20 + i);
}

TEST_CASE("over HTTP") {
  LiveSession session(small_field(), {}, 1, true);
  Service service(session);
  const int port = service.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  service.listen_background();

  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Get("/api/v1/snapshot");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(json::parse(res->body)["step"] == 0);

  res = cli.Post("/api/v1/instruction", "{\"intent\":1}", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  CHECK(json::parse(res->body)["errors"].is_array());

  res = cli.Post("/api/v1/instruction", add_task_body, "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);

  res = cli.Get("/api/v1/trace?since=0");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body.find("\"instruction\"") != std::string::npos);

  res = cli.Options("/api/v1/instruction");
  REQUIRE(res);
  CHECK(res->status == 204);
  service.stop();
}

}
