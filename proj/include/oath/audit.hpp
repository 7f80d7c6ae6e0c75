#pragma once

#include <map>
#include <string>
#include <vector>

#include "oath/simulation.hpp"

namespace oath {

struct AuditReport {
  std::vector<std::string> violations;
  std::size_t moves = 0;  // move events recounted from the trace

  bool ok() const { return violations.empty(); }
};

struct AuditRobot {
  RobotId id = 0;
  std::vector<double> capability;
  int capacity = 1;
  NodeId start = kNoNode;
  NodeId final_node = kNoNode;
};

struct AuditObstacle {
  std::size_t from_step = 0;  // moves at or after this step must avoid it
  std::vector<Point> polygon;
};

// Everything the checker needs, detached from a live simulation so tests can
// feed it doctored traces.
struct AuditInput {
  std::vector<TraceEvent> trace;
  std::map<TaskId, Task> tasks;
  std::vector<AuditRobot> robots;
  std::vector<Point> positions;  // by node id
  std::vector<AuditObstacle> obstacles;
  std::size_t s_total = 0;
};

AuditInput audit_input(const Simulation& sim);

// Replays a recorded trace against the mission constraints: single server per
// task, full coverage on success, capacity at all times, capability, pickup
// before delivery at the right nodes, one edge per robot per step along a
// continuous route, no edge through an obstacle that existed at the time, and
// the step total matching the move events.
AuditReport audit(const AuditInput& input);
AuditReport audit(const Simulation& sim);

}  // namespace oath
