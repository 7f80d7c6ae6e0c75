#include "oath/instruction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace oath {

using nlohmann::json;

std::string_view to_string(Intent intent) {
  switch (intent) {
    case Intent::add_task: return "add_task";
    case Intent::obstacle_update: return "obstacle_update";
    case Intent::change_task_priority: return "change_task_priority";
  }
  return "?";
}

Intent intent_from_string(std::string_view name) {
  for (auto i : {Intent::add_task, Intent::obstacle_update, Intent::change_task_priority}) {
    if (to_string(i) == name) return i;
  }
  throw std::invalid_argument("unknown intent: " + std::string(name));
}

namespace {

std::string join(const std::vector<std::string>& issues) {
  std::string out;
  for (const auto& s : issues) out += (out.empty() ? "" : "; ") + s;
  return out;
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> issues)
    : std::invalid_argument(join(issues)), issues_(std::move(issues)) {}

Point point_from_json(const json& j, const std::string& where, std::vector<std::string>& issues) {
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("x") && j.contains("y") && j["x"].is_number() && j["y"].is_number()) {
    return {j["x"].get<double>(), j["y"].get<double>()};
  }
  issues.push_back(where + ": expected a point [x, y]");
  return {};
}

json to_json(Point p) { return json::array({p.x, p.y}); }

Instruction instruction_from_json(const json& j, bool require_schema) {
  std::vector<std::string> issues;
  Instruction ins;
  if (!j.is_object()) throw SchemaError({"instruction: expected an object"});
  if (j.contains("schema")) {
    if (!j["schema"].is_string() || j["schema"].get<std::string>() != kInstructionSchema) {
      issues.push_back("schema: expected \"" + std::string(kInstructionSchema) + "\"");
    }
  } else if (require_schema) {
    issues.push_back("schema: missing");
  }
  if (!j.contains("intent") || !j["intent"].is_string()) {
    issues.push_back("intent: missing or not a string");
    throw SchemaError(issues);
  }
  try {
    ins.intent = intent_from_string(j["intent"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    issues.push_back(std::string("intent: ") + e.what());
    throw SchemaError(issues);
  }
  if (j.contains("issue_step")) {
    if (j["issue_step"].is_number_unsigned()) {
      ins.issue_step = j["issue_step"].get<std::size_t>();
    } else if (!j["issue_step"].is_null()) {
      issues.push_back("issue_step: expected a non-negative integer");
    }
  }
  if (!j.contains("payload") || !j["payload"].is_object()) {
    issues.push_back("payload: missing or not an object");
    throw SchemaError(issues);
  }
  const json& p = j["payload"];

  switch (ins.intent) {
    case Intent::add_task: {
      AddTaskPayload a;
      if (!p.contains("pickup")) {
        issues.push_back("payload.pickup: missing");
      } else {
        a.pickup = point_from_json(p["pickup"], "payload.pickup", issues);
      }
      if (!p.contains("delivery")) {
        issues.push_back("payload.delivery: missing");
      } else if (p["delivery"].is_string()) {
        a.delivery_label = p["delivery"].get<std::string>();
        if (a.delivery_label.empty()) issues.push_back("payload.delivery: empty label");
      } else {
        a.delivery = point_from_json(p["delivery"], "payload.delivery", issues);
      }
      if (p.contains("type")) {
        if (p["type"].is_number_integer() && p["type"].get<int>() >= 0) {
          a.type = p["type"].get<int>();
        } else {
          issues.push_back("payload.type: expected a non-negative integer");
        }
      }
      if (p.contains("priority")) {
        if (p["priority"].is_number() && p["priority"].get<double>() > 0.0) {
          a.priority = p["priority"].get<double>();
        } else {
          issues.push_back("payload.priority: expected a positive number");
        }
      }
      if (p.contains("id")) {
        if (p["id"].is_number_integer() && p["id"].get<int>() >= 0) {
          a.id = p["id"].get<int>();
        } else {
          issues.push_back("payload.id: expected a non-negative integer");
        }
      }
      ins.payload = a;
      break;
    }
    case Intent::obstacle_update: {
      ObstaclePayload o;
      if (p.contains("id")) {
        if (p["id"].is_string()) {
          o.id = p["id"].get<std::string>();
        } else {
          issues.push_back("payload.id: expected a string");
        }
      }
      if (p.contains("kind")) {
        try {
          o.kind = obstacle_kind_from_string(p["kind"].get<std::string>());
        } catch (const std::exception&) {
          issues.push_back("payload.kind: expected wall, gate or bush");
        }
      }
      if (!p.contains("polygon") || !p["polygon"].is_array()) {
        issues.push_back("payload.polygon: missing or not an array");
      } else {
        for (std::size_t i = 0; i < p["polygon"].size(); ++i) {
          o.polygon.push_back(point_from_json(p["polygon"][i], "payload.polygon[" + std::to_string(i) + "]", issues));
        }
        if (o.polygon.size() < 3) issues.push_back("payload.polygon: needs at least 3 vertices");
      }
      ins.payload = o;
      break;
    }
    case Intent::change_task_priority: {
      PriorityPayload c;
      if (!p.contains("task") || !p["task"].is_number_integer()) {
        issues.push_back("payload.task: missing or not an integer");
      } else {
        c.task = p["task"].get<int>();
      }
      if (!p.contains("priority") || !p["priority"].is_number() || !(p["priority"].get<double>() > 0.0)) {
        issues.push_back("payload.priority: expected a positive number");
      } else {
        c.priority = p["priority"].get<double>();
      }
      ins.payload = c;
      break;
    }
  }
  if (!issues.empty()) throw SchemaError(issues);
  return ins;
}

json to_json(const Instruction& ins) {
  json j;
  j["schema"] = kInstructionSchema;
  j["intent"] = to_string(ins.intent);
  if (ins.issue_step) j["issue_step"] = *ins.issue_step;
  json p = json::object();
  if (const auto* a = std::get_if<AddTaskPayload>(&ins.payload)) {
    p["pickup"] = to_json(a->pickup);
    p["delivery"] = a->delivery ? to_json(*a->delivery) : json(a->delivery_label);
    p["type"] = a->type;
    p["priority"] = a->priority;
    if (a->id) p["id"] = *a->id;
  } else if (const auto* o = std::get_if<ObstaclePayload>(&ins.payload)) {
    p["id"] = o->id;
    p["kind"] = to_string(o->kind);
    json poly = json::array();
    for (Point q : o->polygon) poly.push_back(to_json(q));
    p["polygon"] = poly;
  } else if (const auto* c = std::get_if<PriorityPayload>(&ins.payload)) {
    p["task"] = c->task;
    p["priority"] = c->priority;
  }
  j["payload"] = p;
  return j;
}

namespace {

const std::map<std::string, int>& small_numbers() {
  static const std::map<std::string, int> m = {
      {"zero", 0},     {"one", 1},        {"two", 2},       {"three", 3},     {"four", 4},
      {"five", 5},     {"six", 6},        {"seven", 7},     {"eight", 8},     {"nine", 9},
      {"ten", 10},     {"eleven", 11},    {"twelve", 12},   {"thirteen", 13}, {"fourteen", 14},
      {"fifteen", 15}, {"sixteen", 16},   {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
      {"twenty", 20},  {"thirty", 30},    {"forty", 40},    {"fifty", 50},    {"sixty", 60},
      {"seventy", 70}, {"eighty", 80},    {"ninety", 90}};
  return m;
}

bool is_number_word(const std::string& w) { return small_numbers().count(w) > 0; }

bool parse_digits(const std::string& w, double& out) {
  if (w.empty() || !(std::isdigit(static_cast<unsigned char>(w[0])) || w[0] == '-')) return false;
  std::istringstream is(w);
  is >> out;
  return !is.fail() && is.eof();
}

struct Token {
  std::string word;
  bool number = false;
  double value = 0.0;
};

// Lower-cases, strips punctuation and folds spelled-out numbers into values.
std::vector<Token> tokenize(std::string_view text) {
  std::string clean;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    const bool decimal_point = c == '.' && i > 0 && i + 1 < text.size() &&
                               std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                               std::isdigit(static_cast<unsigned char>(text[i + 1]));
    const bool sign = c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]));
    clean += (std::isalnum(static_cast<unsigned char>(c)) || decimal_point || sign) ? c : ' ';
  }
  std::vector<std::string> words;
  std::istringstream is(clean);
  for (std::string w; is >> w;) words.push_back(w);

  std::vector<Token> out;
  for (std::size_t i = 0; i < words.size();) {
    double v = 0.0;
    if (parse_digits(words[i], v)) {
      out.push_back({words[i], true, v});
      ++i;
      continue;
    }
    if (!is_number_word(words[i])) {
      out.push_back({words[i], false, 0.0});
      ++i;
      continue;
    }
    int whole = small_numbers().at(words[i++]);
    if (whole >= 20 && whole % 10 == 0 && i < words.size() && is_number_word(words[i]) &&
        small_numbers().at(words[i]) < 10) {
      whole += small_numbers().at(words[i++]);
    }
    double value = whole;
    if (i + 1 < words.size() && words[i] == "point" && is_number_word(words[i + 1])) {
      ++i;
      double scale = 0.1;
      while (i < words.size() && is_number_word(words[i]) && small_numbers().at(words[i]) < 10) {
        value += scale * small_numbers().at(words[i++]);
        scale /= 10.0;
      }
    }
    out.push_back({"#", true, value});
  }
  return out;
}

bool has_word(const std::vector<Token>& toks, std::initializer_list<std::string_view> words) {
  return std::any_of(toks.begin(), toks.end(), [&](const Token& t) {
    return std::find(words.begin(), words.end(), t.word) != words.end();
  });
}

std::vector<double> numbers(const std::vector<Token>& toks) {
  std::vector<double> v;
  for (const auto& t : toks) {
    if (t.number) v.push_back(t.value);
  }
  return v;
}

// Number that directly follows one of `words`.
std::optional<double> number_after(const std::vector<Token>& toks, std::initializer_list<std::string_view> words) {
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (std::find(words.begin(), words.end(), toks[i].word) != words.end() && toks[i + 1].number) {
      return toks[i + 1].value;
    }
  }
  return std::nullopt;
}

}  // namespace

Translation translate(std::string_view text, const std::vector<std::string>& type_names) {
  const auto toks = tokenize(text);
  Translation out;

  if (has_word(toks, {"priority", "prioritize", "prioritise", "urgent"})) {
    const auto task = number_after(toks, {"task", "number"});
    if (!task) {
      out.error = "priority change needs a task number";
      return out;
    }
    double weight = 10.0;
    if (auto w = number_after(toks, {"to", "weight"})) {
      weight = *w;
    } else if (auto w2 = number_after(toks, {"priority"})) {
      weight = *w2;
    }
    if (!(weight > 0.0)) {
      out.error = "priority must be positive";
      return out;
    }
    out.instruction = Instruction{Intent::change_task_priority, std::nullopt, PriorityPayload{static_cast<TaskId>(*task), weight}};
    return out;
  }

  if (has_word(toks, {"wall", "obstacle", "obstacles", "blocked", "bush", "bushes", "gate"})) {
    const auto v = numbers(toks);
    if (v.size() < 6 || v.size() % 2 != 0) {
      out.error = "obstacle needs at least three coordinate pairs";
      return out;
    }
    ObstaclePayload o;
    o.kind = has_word(toks, {"bush", "bushes"}) ? ObstacleKind::bush
             : has_word(toks, {"gate"})          ? ObstacleKind::gate
                                                 : ObstacleKind::wall;
    for (std::size_t i = 0; i < v.size(); i += 2) o.polygon.push_back({v[i], v[i + 1]});
    out.instruction = Instruction{Intent::obstacle_update, std::nullopt, o};
    return out;
  }

  if (has_word(toks, {"task", "pickup", "pick"})) {
    const auto v = numbers(toks);
    if (v.size() < 2) {
      out.error = "new task needs pickup coordinates";
      return out;
    }
    AddTaskPayload a;
    a.pickup = {v[0], v[1]};
    if (v.size() >= 4) a.delivery = Point{v[2], v[3]};
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
      const auto& w = toks[i].word;
      if ((w == "point" || w == "room" || w == "to") && toks[i + 1].word.size() == 1 &&
          std::isalpha(static_cast<unsigned char>(toks[i + 1].word[0])) && toks[i + 1].word != "a") {
        a.delivery_label = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(toks[i + 1].word[0]))));
        a.delivery.reset();
        break;
      }
    }
    if (a.delivery_label.empty() && !a.delivery) {
      out.error = "new task needs a delivery point";
      return out;
    }
    for (std::size_t t = 0; t < type_names.size(); ++t) {
      if (has_word(toks, {type_names[t]})) a.type = static_cast<int>(t);
    }
    if (has_word(toks, {"special"}) && type_names.size() > 1) a.type = 1;
    out.instruction = Instruction{Intent::add_task, std::nullopt, a};
    return out;
  }

  out.error = "no recognised intent";
  return out;
}

}  // namespace oath
