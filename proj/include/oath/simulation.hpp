#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oath/allocator.hpp"
#include "oath/instruction.hpp"
#include "oath/path_planner.hpp"
#include "oath/roadmap.hpp"
#include "oath/scenario.hpp"
#include "oath/workspace.hpp"

namespace oath {

inline constexpr std::string_view kSnapshotSchema = "oath.snapshot/1";

struct SimConfig {
  std::optional<AllocatorKind> allocator;  // overrides the scenario
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps_cap;
  bool record_trace = true;
};

struct Metrics {
  double t_alloc = 0.0;  // seconds
  double t_total = 0.0;  // seconds
  std::size_t s_total = 0;
  std::size_t steps = 0;
  std::size_t rounds = 0;
  std::size_t delivered = 0;
  std::size_t tasks = 0;
  bool success = false;
  std::string outcome = "running";  // running, completed, step_cap, deadlock
  std::vector<TaskId> stranded;     // tasks left when the run stopped
};

struct TraceEvent {
  std::size_t step = 0;
  std::string type;
  nlohmann::json payload;
};

nlohmann::json to_json(const TraceEvent& e);
// One compact JSON object per line, keys sorted.
std::string to_jsonl(const std::vector<TraceEvent>& trace);

struct InstructionAck {
  bool accepted = false;
  std::string error;
  std::optional<TaskId> task;     // add_task
  std::size_t applied_step = 0;
};

struct RobotState {
  RobotId id = 0;
  RobotClass cls = RobotClass::ground;
  std::vector<double> capability;
  int capacity = 1;
  NodeId node = kNoNode;
  std::vector<CarriedItem> carried;
  std::deque<RouteStop> stops;
  std::deque<NodeId> path;  // nodes still to enter
  int cluster = -1;
  std::size_t steps = 0;
  std::unique_ptr<DStarLitePlanner> planner;
};

struct TaskRecord {
  Task task;
  RobotId holder = -1;
  std::optional<std::size_t> pickup_step;  // arrival times in steps
  std::optional<std::size_t> delivery_step;
  std::vector<RobotId> holders;  // every robot that was ever given the task
  RobotId picked_by = -1;
  RobotId delivered_by = -1;
};

// Discrete-step closed loop: sensing, rounds for idle robots, one edge per
// robot per step, instructions applied at step boundaries.
class Simulation {
 public:
  explicit Simulation(const Scenario& scenario, SimConfig config = {});

  // Advances one step. Returns false once the mission has ended.
  bool step();
  const Metrics& run();

  // Applies an instruction at the current step boundary, stamped with that
  // step, so replaying the stamped list as a script gives the same run.
  InstructionAck submit(const Instruction& ins);
  bool finished() const { return finished_; }

  std::size_t current_step() const { return step_; }
  const Metrics& metrics() const { return metrics_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }
  const Roadmap& roadmap() const { return roadmap_; }
  const Workspace& workspace() const { return workspace_; }
  const std::vector<RobotState>& robots() const { return robots_; }
  const std::map<TaskId, TaskRecord>& tasks() const { return tasks_; }
  const std::vector<std::vector<NodeId>>& routes() const { return routes_; }
  const Scenario& scenario() const { return scenario_; }
  AllocatorKind allocator() const { return allocator_; }

  // Instructions in the order they were applied, with their steps.
  const std::vector<Instruction>& applied_instructions() const { return applied_; }

  nlohmann::json snapshot() const;
  nlohmann::json roadmap_json() const;

 private:
  void emit(std::string type, nlohmann::json payload);
  InstructionAck apply(const Instruction& ins);
  void sense();
  void discover(std::size_t obstacle);
  void on_roadmap_change(const std::vector<EdgeKey>& changed);
  void run_round();
  void start_route(RobotState& r, RoutePlan plan);
  bool replan(RobotState& r, const std::vector<EdgeKey>* changed);
  void release_unpicked(RobotState& r, const char* reason);
  void interrupt(RobotState& r, const char* reason);
  void move(RobotState& r);
  // `time` is the step count at which the robot stands on its node.
  void arrive(RobotState& r, std::size_t time);
  std::vector<NodeId> goal_sites_except(RobotId id) const;
  std::vector<Robot> idle_robots() const;
  std::vector<Task> unassigned_pool() const;
  NodeId delivery_node(const std::string& label, std::optional<Point> p, Point& where, std::string& error);
  void finish(std::string outcome);
  std::uint64_t signature() const;

  Scenario scenario_;
  AllocatorKind allocator_;
  std::size_t steps_cap_;
  bool record_trace_;
  Workspace workspace_;
  Roadmap roadmap_;
  DistanceCache cache_;
  std::vector<RobotState> robots_;
  std::map<TaskId, TaskRecord> tasks_;
  std::map<std::string, NodeId> delivery_nodes_;
  std::vector<std::vector<NodeId>> routes_;  // executed node sequence per robot
  std::vector<Instruction> scripted_;        // sorted by issue step
  std::size_t next_scripted_ = 0;
  std::vector<Instruction> applied_;
  std::vector<TraceEvent> trace_;
  Metrics metrics_;
  std::size_t step_ = 0;
  bool finished_ = false;
  std::uint64_t last_signature_ = 0;
  std::size_t quiet_steps_ = 0;
  double wall_ = 0.0;
};

struct RunResult {
  Metrics metrics;
  std::vector<TraceEvent> trace;
};

RunResult run_scenario(const Scenario& scenario, SimConfig config = {});

}  // namespace oath
