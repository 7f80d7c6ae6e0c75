#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oath/geometry.hpp"
#include "oath/roadmap.hpp"

namespace oath {

using TaskId = int;
using RobotId = int;

enum class TaskState { unassigned, assigned, picked, delivered };
enum class RobotClass { ground, drone };

std::string_view to_string(TaskState state);
std::string_view to_string(RobotClass cls);
RobotClass robot_class_from_string(std::string_view name);

struct Task {
  TaskId id = 0;
  NodeId pickup = kNoNode;
  NodeId delivery = kNoNode;
  Point pickup_pos;
  Point delivery_pos;
  int type = 0;
  double priority = 1.0;
  TaskState state = TaskState::unassigned;
  std::string label;
};

struct CarriedItem {
  TaskId task = 0;
  NodeId delivery = kNoNode;
};

// Allocation-time view of a robot.
struct Robot {
  RobotId id = 0;
  RobotClass cls = RobotClass::ground;
  NodeId node = kNoNode;
  Point position;
  std::vector<double> capability;
  int capacity = 1;
  std::vector<CarriedItem> carried;

  int free_capacity() const { return capacity - static_cast<int>(carried.size()); }
  bool can_do(int type) const {
    return type >= 0 && type < static_cast<int>(capability.size()) && capability[type] > 0.0;
  }
};

}  // namespace oath
