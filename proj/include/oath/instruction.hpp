#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oath/geometry.hpp"
#include "oath/task.hpp"
#include "oath/workspace.hpp"

namespace oath {

inline constexpr std::string_view kInstructionSchema = "oath.instruction/1";

enum class Intent { add_task, obstacle_update, change_task_priority };

std::string_view to_string(Intent intent);
Intent intent_from_string(std::string_view name);

struct AddTaskPayload {
  Point pickup;
  std::string delivery_label;       // named delivery point, or empty
  std::optional<Point> delivery;    // explicit coordinates
  int type = 0;
  double priority = 1.0;
  std::optional<TaskId> id;
};

struct ObstaclePayload {
  std::string id;
  std::vector<Point> polygon;
  ObstacleKind kind = ObstacleKind::wall;
};

struct PriorityPayload {
  TaskId task = 0;
  double priority = 1.0;
};

struct Instruction {
  Intent intent = Intent::add_task;
  std::optional<std::size_t> issue_step;
  std::variant<AddTaskPayload, ObstaclePayload, PriorityPayload> payload;
};

// Every problem found in a document, not just the first.
class SchemaError : public std::invalid_argument {
 public:
  explicit SchemaError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Accepts the versioned object; "schema" may be omitted inside a scenario.
Instruction instruction_from_json(const nlohmann::json& j, bool require_schema = true);
nlohmann::json to_json(const Instruction& ins);

struct Translation {
  std::optional<Instruction> instruction;
  std::string error;
};

// Offline rule-based stand-in for a language-model translator. Understands
// new-task, wall/obstacle and priority phrasings, with numbers in digits or
// words ("five and nineteen point five").
Translation translate(std::string_view text, const std::vector<std::string>& type_names = {"delivery", "inspection"});

// Helpers shared by the scenario reader.
Point point_from_json(const nlohmann::json& j, const std::string& where, std::vector<std::string>& issues);
nlohmann::json to_json(Point p);

}  // namespace oath
