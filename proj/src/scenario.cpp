#include "oath/scenario.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace oath {

using nlohmann::json;

Workspace Scenario::workspace() const { return Workspace(width, height, obstacles); }

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where, std::vector<std::string>& issues) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    issues.push_back(where + "." + key + ": wrong type");
    return fallback;
  }
}

std::vector<Point> rect(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }

}  // namespace

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> issues;
  if (!(s.width > 0.0) || !(s.height > 0.0)) issues.push_back("workspace: width and height must be positive");
  const auto in_bounds = [&](Point p) { return p.x >= 0.0 && p.y >= 0.0 && p.x <= s.width && p.y <= s.height; };
  std::set<std::string> obstacle_ids;
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const auto& o = s.obstacles[i];
    const std::string where = "obstacle " + (o.id.empty() ? std::to_string(i) : o.id);
    if (o.polygon.size() < 3) issues.push_back(where + ": needs at least 3 vertices");
    else if (!is_simple_polygon(o.polygon)) issues.push_back(where + ": polygon is not simple");
    for (Point p : o.polygon) {
      if (!in_bounds(p)) {
        issues.push_back(where + ": vertex out of bounds");
        break;
      }
    }
    if (!o.id.empty() && !obstacle_ids.insert(o.id).second) issues.push_back(where + ": duplicate id");
  }
  for (const auto& [label, p] : s.delivery_points) {
    if (!in_bounds(p)) issues.push_back("delivery point " + label + ": out of bounds");
  }
  const std::size_t n_types = s.task_types.size();
  if (n_types == 0) issues.push_back("task_types: must not be empty");
  std::set<RobotId> robot_ids;
  for (const auto& r : s.robots) {
    const std::string where = "robot " + std::to_string(r.id);
    if (!robot_ids.insert(r.id).second) issues.push_back(where + ": duplicate id");
    if (!in_bounds(r.start)) issues.push_back(where + ": start out of bounds");
    if (r.capability.size() != n_types) issues.push_back(where + ": capability length must equal the number of task types");
    double total = 0.0;
    for (double c : r.capability) {
      if (c < 0.0) issues.push_back(where + ": negative capability");
      total += c;
    }
    if (!(total > 0.0)) issues.push_back(where + ": capability must not be all zero");
    if (r.capacity < 1) issues.push_back(where + ": capacity must be at least 1");
  }
  std::set<TaskId> task_ids;
  for (const auto& t : s.tasks) {
    const std::string where = "task " + std::to_string(t.id);
    if (t.id < 0) issues.push_back(where + ": id must be non-negative");
    if (!task_ids.insert(t.id).second) issues.push_back(where + ": duplicate id");
    if (!in_bounds(t.pickup)) issues.push_back(where + ": pickup out of bounds");
    if (!t.delivery_label.empty() && !s.delivery_points.count(t.delivery_label)) {
      issues.push_back(where + ": unknown delivery point " + t.delivery_label);
    } else if (!in_bounds(t.delivery)) {
      issues.push_back(where + ": delivery out of bounds");
    }
    if (t.pickup == t.delivery) issues.push_back(where + ": pickup equals delivery");
    if (t.type < 0 || static_cast<std::size_t>(t.type) >= n_types) issues.push_back(where + ": unknown task type");
    if (!(t.priority > 0.0)) issues.push_back(where + ": priority must be positive");
  }
  for (std::size_t i = 0; i < s.instructions.size(); ++i) {
    if (!s.instructions[i].issue_step) issues.push_back("instruction " + std::to_string(i) + ": issue_step missing");
  }
  try {
    s.sampling.validate();
  } catch (const std::invalid_argument& e) {
    issues.push_back(std::string("sampling: ") + e.what());
  }
  if (!(s.theta >= 0.0)) issues.push_back("theta: must be non-negative");
  if (!(s.sensing_radius >= 0.0)) issues.push_back("sensing_radius: must be non-negative");
  return issues;
}

Scenario scenario_from_json(const json& j) {
  std::vector<std::string> issues;
  Scenario s;
  if (!j.is_object()) throw SchemaError({"scenario: expected an object"});
  if (!j.contains("schema") || !j["schema"].is_string() || j["schema"].get<std::string>() != kScenarioSchema) {
    issues.push_back("schema: expected \"" + std::string(kScenarioSchema) + "\"");
  }
  s.name = get_or<std::string>(j, "name", s.name, "scenario", issues);

  if (!j.contains("workspace") || !j["workspace"].is_object()) {
    issues.push_back("workspace: missing");
  } else {
    const json& w = j["workspace"];
    s.width = get_or<double>(w, "width", s.width, "workspace", issues);
    s.height = get_or<double>(w, "height", s.height, "workspace", issues);
    if (w.contains("obstacles")) {
      for (std::size_t i = 0; i < w["obstacles"].size(); ++i) {
        const json& o = w["obstacles"][i];
        const std::string where = "workspace.obstacles[" + std::to_string(i) + "]";
        Obstacle ob;
        ob.id = get_or<std::string>(o, "id", "obstacle" + std::to_string(i), where, issues);
        ob.known_at_start = get_or<bool>(o, "known", true, where, issues);
        try {
          ob.kind = obstacle_kind_from_string(get_or<std::string>(o, "kind", "wall", where, issues));
        } catch (const std::exception&) {
          issues.push_back(where + ".kind: expected wall, gate or bush");
        }
        if (!o.contains("polygon") || !o["polygon"].is_array()) {
          issues.push_back(where + ".polygon: missing");
        } else {
          for (std::size_t v = 0; v < o["polygon"].size(); ++v) {
            ob.polygon.push_back(point_from_json(o["polygon"][v], where + ".polygon[" + std::to_string(v) + "]", issues));
          }
        }
        s.obstacles.push_back(std::move(ob));
      }
    }
  }
  if (j.contains("delivery_points")) {
    for (const auto& [label, p] : j["delivery_points"].items()) {
      s.delivery_points[label] = point_from_json(p, "delivery_points." + label, issues);
    }
  }
  if (j.contains("task_types")) s.task_types = get_or<std::vector<std::string>>(j, "task_types", s.task_types, "scenario", issues);

  if (j.contains("robots")) {
    for (std::size_t i = 0; i < j["robots"].size(); ++i) {
      const json& r = j["robots"][i];
      const std::string where = "robots[" + std::to_string(i) + "]";
      RobotSpec rs;
      rs.id = get_or<int>(r, "id", static_cast<int>(i), where, issues);
      try {
        rs.cls = robot_class_from_string(get_or<std::string>(r, "class", "ground", where, issues));
      } catch (const std::exception&) {
        issues.push_back(where + ".class: expected ground or drone");
      }
      if (!r.contains("start")) issues.push_back(where + ".start: missing");
      else rs.start = point_from_json(r["start"], where + ".start", issues);
      rs.capability = get_or<std::vector<double>>(r, "capability", std::vector<double>(s.task_types.size(), 1.0), where, issues);
      rs.capacity = get_or<int>(r, "capacity", 1, where, issues);
      s.robots.push_back(std::move(rs));
    }
  }
  if (j.contains("tasks")) {
    for (std::size_t i = 0; i < j["tasks"].size(); ++i) {
      const json& t = j["tasks"][i];
      const std::string where = "tasks[" + std::to_string(i) + "]";
      TaskSpec ts;
      ts.id = get_or<int>(t, "id", static_cast<int>(i), where, issues);
      if (!t.contains("pickup")) issues.push_back(where + ".pickup: missing");
      else ts.pickup = point_from_json(t["pickup"], where + ".pickup", issues);
      if (!t.contains("delivery")) {
        issues.push_back(where + ".delivery: missing");
      } else if (t["delivery"].is_string()) {
        ts.delivery_label = t["delivery"].get<std::string>();
        if (auto it = s.delivery_points.find(ts.delivery_label); it != s.delivery_points.end()) ts.delivery = it->second;
      } else {
        ts.delivery = point_from_json(t["delivery"], where + ".delivery", issues);
      }
      ts.type = get_or<int>(t, "type", 0, where, issues);
      ts.priority = get_or<double>(t, "priority", 1.0, where, issues);
      s.tasks.push_back(std::move(ts));
    }
  }
  if (j.contains("sampling")) {
    const json& c = j["sampling"];
    s.sampling.n_candidates = get_or<std::size_t>(c, "n_candidates", s.sampling.n_candidates, "sampling", issues);
    s.sampling.delta_min = get_or<double>(c, "delta_min", s.sampling.delta_min, "sampling", issues);
    s.sampling.delta_opt = get_or<double>(c, "delta_opt", s.sampling.delta_opt, "sampling", issues);
    s.sampling.sigma = get_or<double>(c, "sigma", s.sampling.sigma, "sampling", issues);
    s.sampling.beta = get_or<double>(c, "beta", s.sampling.beta, "sampling", issues);
    s.sampling.seed = get_or<std::uint64_t>(c, "seed", s.sampling.seed, "sampling", issues);
    s.sampling.bases = get_or<std::vector<std::uint32_t>>(c, "bases", s.sampling.bases, "sampling", issues);
  }
  s.theta = get_or<double>(j, "theta", s.theta, "scenario", issues);
  try {
    s.allocator = allocator_from_string(get_or<std::string>(j, "allocator", "oath", "scenario", issues));
  } catch (const std::exception&) {
    issues.push_back("allocator: expected oath, cbba, kan or kam");
  }
  s.seed = get_or<std::uint64_t>(j, "seed", s.seed, "scenario", issues);
  s.steps_cap = get_or<std::size_t>(j, "steps_cap", s.steps_cap, "scenario", issues);
  s.sensing_radius = get_or<double>(j, "sensing_radius", s.sensing_radius, "scenario", issues);
  if (j.contains("instructions")) {
    for (std::size_t i = 0; i < j["instructions"].size(); ++i) {
      try {
        s.instructions.push_back(instruction_from_json(j["instructions"][i], false));
      } catch (const SchemaError& e) {
        for (const auto& msg : e.issues()) issues.push_back("instructions[" + std::to_string(i) + "]." + msg);
      }
    }
  }
  for (auto& msg : validate(s)) issues.push_back(std::move(msg));
  if (!issues.empty()) throw SchemaError(issues);
  return s;
}

json to_json(const Scenario& s) {
  json j;
  j["schema"] = kScenarioSchema;
  j["name"] = s.name;
  json obstacles = json::array();
  for (const auto& o : s.obstacles) {
    json poly = json::array();
    for (Point p : o.polygon) poly.push_back(to_json(p));
    obstacles.push_back({{"id", o.id}, {"kind", to_string(o.kind)}, {"known", o.known_at_start}, {"polygon", poly}});
  }
  j["workspace"] = {{"width", s.width}, {"height", s.height}, {"obstacles", obstacles}};
  json dps = json::object();
  for (const auto& [label, p] : s.delivery_points) dps[label] = to_json(p);
  j["delivery_points"] = dps;
  j["task_types"] = s.task_types;
  json robots = json::array();
  for (const auto& r : s.robots) {
    robots.push_back({{"id", r.id},
                      {"class", to_string(r.cls)},
                      {"start", to_json(r.start)},
                      {"capability", r.capability},
                      {"capacity", r.capacity}});
  }
  j["robots"] = robots;
  json tasks = json::array();
  for (const auto& t : s.tasks) {
    tasks.push_back({{"id", t.id},
                     {"pickup", to_json(t.pickup)},
                     {"delivery", t.delivery_label.empty() ? to_json(t.delivery) : json(t.delivery_label)},
                     {"type", t.type},
                     {"priority", t.priority}});
  }
  j["tasks"] = tasks;
  j["sampling"] = {{"n_candidates", s.sampling.n_candidates}, {"delta_min", s.sampling.delta_min},
                   {"delta_opt", s.sampling.delta_opt},       {"sigma", s.sampling.sigma},
                   {"beta", s.sampling.beta},                 {"seed", s.sampling.seed},
                   {"bases", s.sampling.bases}};
  j["theta"] = s.theta;
  j["allocator"] = to_string(s.allocator);
  j["seed"] = s.seed;
  j["steps_cap"] = s.steps_cap;
  j["sensing_radius"] = s.sensing_radius;
  json ins = json::array();
  for (const auto& i : s.instructions) ins.push_back(to_json(i));
  j["instructions"] = ins;
  return j;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError({std::string("parse error: ") + e.what()});
  }
  return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << to_json(s).dump(2) << "\n";
}

Scenario make_maze_scenario(const MazeOptions& opt) {
  Scenario s;
  s.name = "maze";
  s.width = 20.0;
  s.height = 20.0;
  int n = 0;
  auto wall = [&](std::vector<Point> poly) {
    s.obstacles.push_back({"wall" + std::to_string(n++), std::move(poly), ObstacleKind::wall, true});
  };
  // Cross walls with two doors each.
  wall(rect(0, 9.9, 4, 10.1));
  wall(rect(6, 9.9, 14, 10.1));
  wall(rect(16, 9.9, 20, 10.1));
  wall(rect(9.9, 0, 10.1, 4));
  wall(rect(9.9, 6, 10.1, 14));
  wall(rect(9.9, 16, 10.1, 20));
  // Inner walls, one per quadrant.
  wall(rect(2, 6.9, 7, 7.1));
  wall(rect(12.9, 2, 13.1, 8));
  wall(rect(6.9, 12, 7.1, 17));
  wall(rect(13, 12.9, 18, 13.1));
  // Delivery rooms in the corners.
  wall(rect(0, 15.9, 2.5, 16.1));
  wall(rect(3.9, 17.5, 4.1, 20));
  wall(rect(17.5, 15.9, 20, 16.1));
  wall(rect(15.9, 17.5, 16.1, 20));
  wall(rect(17.5, 3.9, 20, 4.1));
  wall(rect(15.9, 0, 16.1, 2.5));
  wall(rect(0, 3.9, 2.5, 4.1));
  wall(rect(3.9, 0, 4.1, 2.5));
  s.delivery_points = {{"B", {1.5, 18.5}}, {"C", {18.5, 18.5}}, {"D", {18.5, 1.5}}, {"E", {1.5, 1.5}}};

  if (opt.hidden_obstacles) {
    auto hidden = [&](const char* id, std::vector<Point> poly, ObstacleKind kind) {
      s.obstacles.push_back({id, std::move(poly), kind, false});
    };
    hidden("bush0", rect(5.6, 3.6, 6.4, 4.4), ObstacleKind::bush);
    hidden("bush1", rect(15.1, 6.1, 15.9, 6.9), ObstacleKind::bush);
    hidden("bush2", rect(4.1, 13.1, 4.9, 13.9), ObstacleKind::bush);
    hidden("bush3", rect(12.1, 15.6, 12.9, 16.4), ObstacleKind::bush);
    hidden("gate0", rect(14.0, 9.85, 14.7, 10.15), ObstacleKind::gate);
    hidden("gate1", rect(9.85, 4.0, 10.15, 4.7), ObstacleKind::gate);
  }

  Workspace truth(s.width, s.height, s.obstacles);
  for (std::size_t i = 0; i < truth.obstacles().size(); ++i) truth.discover(i);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> coord(0.5, 19.5);
  auto clear_point = [&]() {
    while (true) {
      const Point p{coord(rng), coord(rng)};
      if (truth.clearance(p, true) >= 0.5) return p;
    }
  };

  const std::vector<Point> starts = {{3, 5.5},   {15, 5},   {5, 14.5}, {16.5, 14.5}, {8, 8},    {12, 8},
                                     {8, 12},    {12, 12},  {2, 11.5}, {18, 11.5},   {11, 2.5}, {11, 18}};
  for (std::size_t r = 0; r < opt.robots; ++r) {
    RobotSpec rs;
    rs.id = static_cast<RobotId>(r);
    rs.cls = r % 2 == 0 ? RobotClass::ground : RobotClass::drone;
    rs.capability = rs.cls == RobotClass::ground ? std::vector<double>{1.0, 1.0} : std::vector<double>{1.0, 0.0};
    rs.capacity = opt.capacity;
    rs.start = r < starts.size() ? starts[r] : clear_point();
    s.robots.push_back(rs);
  }

  const std::vector<std::string> labels = {"B", "C", "D", "E"};
  std::uniform_int_distribution<std::size_t> room(0, labels.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < opt.tasks; ++i) {
    TaskSpec t;
    t.id = static_cast<TaskId>(i);
    t.pickup = clear_point();
    t.delivery_label = labels[room(rng)];
    t.delivery = s.delivery_points.at(t.delivery_label);
    t.type = unit(rng) < opt.special_fraction ? 1 : 0;
    s.tasks.push_back(t);
  }
  s.sampling.n_candidates = opt.n_candidates;
  s.sampling.seed = opt.seed;
  s.seed = opt.seed;
  return s;
}

}  // namespace oath
