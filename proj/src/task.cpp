#include "oath/task.hpp"

#include <stdexcept>

namespace oath {

std::string_view to_string(TaskState state) {
  switch (state) {
    case TaskState::unassigned: return "unassigned";
    case TaskState::assigned: return "assigned";
    case TaskState::picked: return "picked";
    case TaskState::delivered: return "delivered";
  }
  return "unassigned";
}

std::string_view to_string(RobotClass cls) { return cls == RobotClass::drone ? "drone" : "ground"; }

RobotClass robot_class_from_string(std::string_view name) {
  if (name == "ground") return RobotClass::ground;
  if (name == "drone") return RobotClass::drone;
  throw std::invalid_argument("unknown robot class '" + std::string(name) + "'");
}

}  // namespace oath
