#include "oath/audit.hpp"

#include <set>

namespace oath {

AuditInput audit_input(const Simulation& sim) {
  AuditInput in;
  in.trace = sim.trace();
  for (const auto& [id, rec] : sim.tasks()) in.tasks[id] = rec.task;
  const auto& routes = sim.routes();
  for (std::size_t i = 0; i < sim.robots().size(); ++i) {
    const auto& r = sim.robots()[i];
    in.robots.push_back({r.id, r.capability, r.capacity, routes[i].front(), routes[i].back()});
  }
  for (NodeId v = 0; v < sim.roadmap().node_count(); ++v) in.positions.push_back(sim.roadmap().node(v).position);
  for (const auto& o : sim.scenario().obstacles) in.obstacles.push_back({0, o.polygon});
  for (const auto& ins : sim.applied_instructions()) {
    if (const auto* o = std::get_if<ObstaclePayload>(&ins.payload)) in.obstacles.push_back({ins.issue_step.value_or(0), o->polygon});
  }
  in.s_total = sim.metrics().s_total;
  return in;
}

AuditReport audit(const AuditInput& in) {
  AuditReport rep;
  auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

  struct RobotView {
    NodeId node = kNoNode;
    int load = 0;
    std::size_t last_move_step = SIZE_MAX;
    const AuditRobot* spec = nullptr;
  };
  std::map<RobotId, RobotView> robots;
  for (const auto& r : in.robots) robots[r.id] = {r.start, 0, SIZE_MAX, &r};

  std::map<TaskId, RobotId> picked_by;
  std::map<TaskId, std::size_t> pick_time;
  std::map<TaskId, RobotId> delivered_by;
  bool success = false;
  bool finished = false;

  for (const auto& e : in.trace) {
    const auto& p = e.payload;
    const std::string at = "step " + std::to_string(e.step) + ": ";
    if (e.type == "move" || e.type == "pickup" || e.type == "delivery") {
      if (!robots.count(p["robot"].get<RobotId>())) {
        fail(at + "unknown robot");
        continue;
      }
    }
    if (e.type == "move") {
      ++rep.moves;
      RobotView& v = robots[p["robot"].get<RobotId>()];
      const auto from = p["from"].get<NodeId>();
      const auto to = p["to"].get<NodeId>();
      if (v.node != from) fail(at + "move does not start at robot node");
      if (v.last_move_step == e.step) fail(at + "robot moved twice in one step");
      v.last_move_step = e.step;
      v.node = to;
      if (from < in.positions.size() && to < in.positions.size()) {
        for (const auto& o : in.obstacles) {
          if (e.step >= o.from_step && segment_intersects_polygon(in.positions[from], in.positions[to], o.polygon)) {
            fail(at + "move " + std::to_string(from) + "->" + std::to_string(to) + " crosses an obstacle");
          }
        }
      }
    } else if (e.type == "pickup" || e.type == "delivery") {
      const RobotId rid = p["robot"].get<RobotId>();
      const TaskId tid = p["task"].get<TaskId>();
      const std::size_t time = p["time"].get<std::size_t>();
      RobotView& v = robots[rid];
      auto it = in.tasks.find(tid);
      if (it == in.tasks.end()) {
        fail(at + "unknown task " + std::to_string(tid));
        continue;
      }
      const Task& t = it->second;
      const std::string who = "task " + std::to_string(tid);
      if (e.type == "pickup") {
        if (picked_by.count(tid)) fail(who + ": picked up twice");
        picked_by[tid] = rid;
        pick_time[tid] = time;
        if (v.node != t.pickup) fail(who + ": picked up away from its pickup node");
        const auto& cap = v.spec->capability;
        if (t.type < 0 || t.type >= static_cast<int>(cap.size()) || !(cap[static_cast<std::size_t>(t.type)] > 0.0)) {
          fail(who + ": picked up by incapable robot " + std::to_string(rid));
        }
        if (++v.load > v.spec->capacity) fail(who + ": capacity exceeded by robot " + std::to_string(rid));
      } else {
        if (delivered_by.count(tid)) fail(who + ": delivered twice");
        delivered_by[tid] = rid;
        if (v.node != t.delivery) fail(who + ": delivered away from its delivery node");
        if (!picked_by.count(tid)) {
          fail(who + ": delivered before pickup");
        } else {
          if (picked_by[tid] != rid) fail(who + ": served by two robots");
          if (!(pick_time[tid] < time)) fail(who + ": delivery not after pickup");
        }
        if (--v.load < 0) fail(who + ": negative load");
      }
    } else if (e.type == "finish") {
      finished = true;
      success = p["success"].get<bool>();
    }
  }

  if (rep.moves != in.s_total) fail("step total differs from recounted move events");
  for (const auto& r : in.robots) {
    if (robots[r.id].node != r.final_node) fail("robot " + std::to_string(r.id) + ": route does not match move events");
  }
  if (finished && success) {
    for (const auto& [id, t] : in.tasks) {
      if (!delivered_by.count(id)) fail("task " + std::to_string(id) + ": not delivered in a successful run");
    }
  }
  return rep;
}

AuditReport audit(const Simulation& sim) { return audit(audit_input(sim)); }

}  // namespace oath
