#include <doctest.h>

#include "oath/audit.hpp"
#include "sim_fixtures.hpp"

using namespace oath;

namespace {

bool mentions(const AuditReport& r, const std::string& what) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& s) { return s.find(what) != std::string::npos; });
}

std::size_t index_of(const AuditInput& in, const std::string& type, std::size_t nth = 0) {
  for (std::size_t i = 0; i < in.trace.size(); ++i) {
    if (in.trace[i].type == type && nth-- == 0) return i;
  }
  FAIL("event not found");
  return 0;
}

AuditInput clean_input() {
  Scenario s = fixtures::open_field();
  s.robots = {fixtures::robot(0, {1, 1}, 2), fixtures::robot(1, {19, 1}, 2)};
  s.tasks = {fixtures::task(0, {10, 3}, "A"), fixtures::task(1, {12, 5}, "B", 1), fixtures::task(2, {4, 9}, "A")};
  Simulation sim(s);
  REQUIRE(sim.run().success);
  return audit_input(sim);
}

}  // namespace

TEST_SUITE("audit") {

TEST_CASE("a clean run passes") {
  const auto in = clean_input();
  const auto rep = audit(in);
  CHECK(rep.ok());
  CHECK(rep.moves == in.s_total);
}

TEST_CASE("doctored traces are caught") {
  const AuditInput base = clean_input();

  SUBCASE("double pickup") {
    auto in = base;
    const auto i = index_of(in, "pickup");
    in.trace.insert(in.trace.begin() + static_cast<std::ptrdiff_t>(i), in.trace[i]);
    CHECK(mentions(audit(in), "picked up twice"));
  }
  SUBCASE("teleport") {
    auto in = base;
    in.trace[index_of(in, "move", 3)].payload["from"] = 100000;
    CHECK(mentions(audit(in), "does not start at robot node"));
  }
  SUBCASE("two moves in one step") {
    auto in = base;
    const auto i = index_of(in, "move", 2);
    in.trace[i].step = in.trace[index_of(in, "move", 1)].step;
    const auto r = in.trace[index_of(in, "move", 1)].payload["robot"];
    in.trace[i].payload["robot"] = r;
    CHECK_FALSE(audit(in).ok());
  }
  SUBCASE("missing move") {
    auto in = base;
    in.trace.erase(in.trace.begin() + static_cast<std::ptrdiff_t>(index_of(in, "move", 0)));
    CHECK(mentions(audit(in), "step total"));
  }
  SUBCASE("capacity") {
    auto in = base;
    for (auto& r : in.robots) r.capacity = 0;
    CHECK(mentions(audit(in), "capacity exceeded"));
  }
  SUBCASE("capability") {
    auto in = base;
    for (auto& r : in.robots) r.capability = {1, 0};
    CHECK(mentions(audit(in), "incapable"));
  }
  SUBCASE("delivery before pickup") {
    auto in = base;
    auto& d = in.trace[index_of(in, "delivery")];
    d.payload["time"] = 0;
    CHECK(mentions(audit(in), "not after pickup"));
  }
  SUBCASE("wrong delivery node") {
    auto in = base;
    const TaskId t = in.trace[index_of(in, "delivery")].payload["task"];
    in.tasks[t].delivery = 999999;
    CHECK(mentions(audit(in), "away from its delivery node"));
  }
  SUBCASE("undelivered task in a successful run") {
    auto in = base;
    in.tasks[77] = in.tasks.begin()->second;
    in.tasks[77].id = 77;
    CHECK(mentions(audit(in), "task 77: not delivered"));
  }
  SUBCASE("move through an obstacle") {
    auto in = base;
    const auto& m = in.trace[index_of(in, "move", 4)];
    const Point a = in.positions[m.payload["from"].get<NodeId>()];
    const Point b = in.positions[m.payload["to"].get<NodeId>()];
    const Point c = 0.5 * (a + b);
    in.obstacles.push_back({0, {{c.x - 0.01, c.y - 0.01}, {c.x + 0.01, c.y - 0.01}, {c.x + 0.01, c.y + 0.01}}});
    CHECK(mentions(audit(in), "crosses an obstacle"));
    in.obstacles.back().from_step = m.step + 1;
    CHECK_FALSE(mentions(audit(in), "crosses an obstacle"));
  }
}

}
