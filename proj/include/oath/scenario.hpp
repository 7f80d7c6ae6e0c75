#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "oath/allocator.hpp"
#include "oath/halton.hpp"
#include "oath/instruction.hpp"
#include "oath/task.hpp"
#include "oath/workspace.hpp"

namespace oath {

inline constexpr std::string_view kScenarioSchema = "oath.scenario/1";

struct RobotSpec {
  RobotId id = 0;
  RobotClass cls = RobotClass::ground;
  Point start;
  std::vector<double> capability;
  int capacity = 1;
};

struct TaskSpec {
  TaskId id = 0;
  Point pickup;
  std::string delivery_label;  // empty when given by coordinates
  Point delivery;
  int type = 0;
  double priority = 1.0;
};

struct Scenario {
  std::string name = "scenario";
  double width = 20.0;
  double height = 20.0;
  std::vector<Obstacle> obstacles;
  std::map<std::string, Point> delivery_points;
  std::vector<std::string> task_types{"delivery", "inspection"};
  std::vector<RobotSpec> robots;
  std::vector<TaskSpec> tasks;
  HaltonConfig sampling;
  double theta = 0.1;
  AllocatorKind allocator = AllocatorKind::oath;
  std::uint64_t seed = 1;
  std::size_t steps_cap = 5000;
  double sensing_radius = 1.5;
  std::vector<Instruction> instructions;  // scripted, each with issue_step

  Workspace workspace() const;
};

// Parses and validates; every problem is reported in one SchemaError.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

// Checks references, bounds and ids; returns the list of problems.
std::vector<std::string> validate(const Scenario& s);

struct MazeOptions {
  std::size_t tasks = 25;
  std::size_t robots = 4;
  int capacity = 3;
  std::uint64_t seed = 1;
  std::size_t n_candidates = 1000;
  double special_fraction = 0.4;  // share of type-1 tasks (ground robots only)
  bool hidden_obstacles = true;
};

// 20 x 20 four-room maze with delivery rooms B-E, hidden bushes and gates,
// and alternating ground robots (capability [1,1]) and drones ([1,0]).
Scenario make_maze_scenario(const MazeOptions& options);

}  // namespace oath
