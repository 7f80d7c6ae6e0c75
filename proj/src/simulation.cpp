#include "oath/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oath {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string_view to_string(StopKind k) { return k == StopKind::pickup ? "pickup" : "delivery"; }

json stops_json(const std::deque<RouteStop>& stops) {
  json out = json::array();
  for (const auto& s : stops) out.push_back({{"node", s.node}, {"task", s.task}, {"kind", to_string(s.kind)}});
  return out;
}

json edges_json(const std::vector<EdgeKey>& edges) {
  json out = json::array();
  for (const auto& [a, b] : edges) out.push_back({a, b});
  return out;
}

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

}  // namespace

json to_json(const TraceEvent& e) { return {{"step", e.step}, {"type", e.type}, {"payload", e.payload}}; }

std::string to_jsonl(const std::vector<TraceEvent>& trace) {
  std::string out;
  for (const auto& e : trace) {
    out += to_json(e).dump();
    out += '\n';
  }
  return out;
}

Simulation::Simulation(const Scenario& scenario, SimConfig config)
    : scenario_(scenario),
      allocator_(config.allocator.value_or(scenario.allocator)),
      steps_cap_(config.steps_cap.value_or(scenario.steps_cap)),
      record_trace_(config.record_trace),
      cache_(roadmap_) {
  if (config.seed) {
    scenario_.seed = *config.seed;
    scenario_.sampling.seed = *config.seed;
  }
  if (auto issues = validate(scenario_); !issues.empty()) throw SchemaError(issues);
  const auto t0 = Clock::now();
  workspace_ = scenario_.workspace();
  roadmap_ = Roadmap::build(sample_map(workspace_, scenario_.sampling), workspace_);

  std::vector<Site> sites;
  std::vector<std::string> labels;
  for (const auto& [label, p] : scenario_.delivery_points) {
    sites.push_back({p, NodeTag::delivery, -1, label});
    labels.push_back(label);
  }
  for (const auto& r : scenario_.robots) sites.push_back({r.start, NodeTag::robot_start, -1, "robot" + std::to_string(r.id)});
  for (const auto& t : scenario_.tasks) {
    sites.push_back({t.pickup, NodeTag::pickup, t.id, ""});
    if (t.delivery_label.empty()) sites.push_back({t.delivery, NodeTag::delivery, t.id, ""});
  }
  const AttachResult attached = roadmap_.attach_sites(sites, workspace_);
  std::size_t at = 0;
  for (const auto& label : labels) delivery_nodes_[label] = attached.ids[at++];
  for (const auto& r : scenario_.robots) {
    RobotState rs;
    rs.id = r.id;
    rs.cls = r.cls;
    rs.capability = r.capability;
    rs.capacity = r.capacity;
    rs.node = attached.ids[at++];
    robots_.push_back(std::move(rs));
  }
  std::sort(robots_.begin(), robots_.end(), [](const RobotState& a, const RobotState& b) { return a.id < b.id; });
  for (const auto& t : scenario_.tasks) {
    TaskRecord rec;
    rec.task.id = t.id;
    rec.task.pickup = attached.ids[at++];
    rec.task.pickup_pos = t.pickup;
    if (t.delivery_label.empty()) {
      rec.task.delivery = attached.ids[at++];
      rec.task.delivery_pos = t.delivery;
    } else {
      rec.task.delivery = delivery_nodes_.at(t.delivery_label);
      rec.task.delivery_pos = scenario_.delivery_points.at(t.delivery_label);
    }
    rec.task.type = t.type;
    rec.task.priority = t.priority;
    rec.task.label = t.delivery_label;
    tasks_[t.id] = rec;
  }
  routes_.resize(robots_.size());
  for (std::size_t i = 0; i < robots_.size(); ++i) routes_[i].push_back(robots_[i].node);

  scripted_ = scenario_.instructions;
  std::stable_sort(scripted_.begin(), scripted_.end(),
                   [](const Instruction& a, const Instruction& b) { return a.issue_step.value_or(0) < b.issue_step.value_or(0); });
  metrics_.tasks = tasks_.size();
  wall_ += seconds_since(t0);

  json iso = json::array();
  for (NodeId v : attached.isolated) iso.push_back(v);
  emit("start", {{"allocator", to_string(allocator_)},
                 {"seed", scenario_.seed},
                 {"robots", robots_.size()},
                 {"tasks", tasks_.size()},
                 {"nodes", roadmap_.alive_count()},
                 {"edges", roadmap_.edge_count()},
                 {"isolated_sites", iso}});
}

void Simulation::emit(std::string type, json payload) {
  if (record_trace_) trace_.push_back({step_, std::move(type), std::move(payload)});
}

std::vector<NodeId> Simulation::goal_sites_except(RobotId id) const {
  std::vector<NodeId> out;
  for (const auto& r : robots_) {
    if (r.id == id) continue;
    for (const auto& s : r.stops) out.push_back(s.node);
  }
  return out;
}

std::vector<Robot> Simulation::idle_robots() const {
  std::vector<Robot> out;
  for (const auto& r : robots_) {
    if (!r.stops.empty() || !roadmap_.valid(r.node)) continue;
    Robot robot;
    robot.id = r.id;
    robot.cls = r.cls;
    robot.node = r.node;
    robot.position = roadmap_.position(r.node);
    robot.capability = r.capability;
    robot.capacity = r.capacity;
    robot.carried = r.carried;
    out.push_back(std::move(robot));
  }
  return out;
}

std::vector<Task> Simulation::unassigned_pool() const {
  std::vector<Task> out;
  for (const auto& [id, rec] : tasks_) {
    if (rec.task.state != TaskState::unassigned) continue;
    if (!roadmap_.valid(rec.task.pickup) || !roadmap_.valid(rec.task.delivery)) continue;
    out.push_back(rec.task);
  }
  return out;
}

bool Simulation::step() {
  if (finished_) return false;
  const auto t0 = Clock::now();

  while (next_scripted_ < scripted_.size() && scripted_[next_scripted_].issue_step.value_or(0) <= step_) {
    apply(scripted_[next_scripted_++]);
  }

  const bool pending = next_scripted_ < scripted_.size();
  const bool all_done = std::all_of(tasks_.begin(), tasks_.end(),
                                    [](const auto& kv) { return kv.second.task.state == TaskState::delivered; });
  if (all_done && !pending) {
    wall_ += seconds_since(t0);
    finish("completed");
    return false;
  }
  if (step_ >= steps_cap_) {
    wall_ += seconds_since(t0);
    finish("step_cap");
    return false;
  }

  sense();
  run_round();
  const std::size_t before = metrics_.s_total;
  for (auto& r : robots_) move(r);
  const bool moved = metrics_.s_total != before;
  ++step_;
  metrics_.steps = step_;

  const std::uint64_t sig = signature();
  if (!moved && sig == last_signature_ && next_scripted_ >= scripted_.size()) {
    ++quiet_steps_;
  } else {
    quiet_steps_ = 0;
  }
  last_signature_ = sig;
  wall_ += seconds_since(t0);
  if (quiet_steps_ >= 2) {
    finish("deadlock");
    return false;
  }
  return true;
}

const Metrics& Simulation::run() {
  while (step()) {
  }
  return metrics_;
}

std::uint64_t Simulation::signature() const {
  std::uint64_t h = 0;
  for (const auto& [id, rec] : tasks_) {
    hash_mix(h, static_cast<std::uint64_t>(id));
    hash_mix(h, static_cast<std::uint64_t>(rec.task.state));
    hash_mix(h, static_cast<std::uint64_t>(rec.holder + 1));
  }
  for (const auto& r : robots_) {
    hash_mix(h, r.node);
    hash_mix(h, r.stops.size());
    hash_mix(h, r.carried.size());
  }
  return h;
}

void Simulation::finish(std::string outcome) {
  finished_ = true;
  metrics_.outcome = std::move(outcome);
  metrics_.success = metrics_.outcome == "completed";
  metrics_.t_total = wall_;
  metrics_.stranded.clear();
  for (const auto& [id, rec] : tasks_) {
    if (rec.task.state != TaskState::delivered) metrics_.stranded.push_back(id);
  }
  json stranded = json::array();
  for (TaskId id : metrics_.stranded) stranded.push_back(id);
  emit("finish", {{"outcome", metrics_.outcome},
                  {"success", metrics_.success},
                  {"s_total", metrics_.s_total},
                  {"steps", metrics_.steps},
                  {"rounds", metrics_.rounds},
                  {"delivered", metrics_.delivered},
                  {"stranded", stranded}});
}

InstructionAck Simulation::submit(const Instruction& ins) {
  if (finished_) {
    InstructionAck ack;
    ack.error = "mission already finished";
    return ack;
  }
  // Scripted instructions due at this boundary keep their place in front.
  while (next_scripted_ < scripted_.size() && scripted_[next_scripted_].issue_step.value_or(0) <= step_) {
    apply(scripted_[next_scripted_++]);
  }
  return apply(ins);
}

NodeId Simulation::delivery_node(const std::string& label, std::optional<Point> p, Point& where, std::string& error) {
  if (!label.empty()) {
    auto it = delivery_nodes_.find(label);
    if (it == delivery_nodes_.end()) {
      error = "unknown delivery point " + label;
      return kNoNode;
    }
    where = scenario_.delivery_points.at(label);
    return it->second;
  }
  where = *p;
  return kNoNode;
}

InstructionAck Simulation::apply(const Instruction& ins) {
  InstructionAck ack;
  ack.applied_step = step_;
  Instruction stamped = ins;
  stamped.issue_step = step_;
  const json record = to_json(stamped);

  auto reject = [&](std::string why) {
    ack.accepted = false;
    ack.error = std::move(why);
    emit("instruction_rejected", {{"instruction", record}, {"error", ack.error}});
    return ack;
  };

  if (const auto* a = std::get_if<AddTaskPayload>(&ins.payload)) {
    if (a->type < 0 || static_cast<std::size_t>(a->type) >= scenario_.task_types.size()) return reject("unknown task type");
    if (!(a->priority > 0.0)) return reject("priority must be positive");
    TaskId id = a->id.value_or(-1);
    if (id < 0 || tasks_.count(id)) id = tasks_.empty() ? 0 : tasks_.rbegin()->first + 1;
    Point dpos;
    std::string error;
    NodeId dnode = delivery_node(a->delivery_label, a->delivery, dpos, error);
    if (!error.empty()) return reject(error);
    if (a->pickup == dpos) return reject("pickup equals delivery");
    std::vector<Site> sites{{a->pickup, NodeTag::pickup, id, ""}};
    if (dnode == kNoNode) sites.push_back({dpos, NodeTag::delivery, id, ""});
    AttachResult res;
    try {
      res = roadmap_.attach_sites(sites, workspace_);
    } catch (const std::invalid_argument& e) {
      return reject(e.what());
    }
    TaskRecord rec;
    rec.task.id = id;
    rec.task.pickup = res.ids[0];
    rec.task.pickup_pos = a->pickup;
    rec.task.delivery = dnode == kNoNode ? res.ids[1] : dnode;
    rec.task.delivery_pos = dpos;
    rec.task.type = a->type;
    rec.task.priority = a->priority;
    rec.task.label = a->delivery_label;
    tasks_[id] = rec;
    ++metrics_.tasks;
    ack.accepted = true;
    ack.task = id;
    json iso = json::array();
    for (NodeId v : res.isolated) iso.push_back(v);
    emit("instruction", {{"instruction", record},
                         {"task", id},
                         {"pickup_node", rec.task.pickup},
                         {"delivery_node", rec.task.delivery},
                         {"added_edges", res.added_edges.size()},
                         {"isolated", iso}});
    applied_.push_back(stamped);
    if (!res.added_edges.empty()) on_roadmap_change(res.added_edges);
    return ack;
  }

  if (const auto* o = std::get_if<ObstaclePayload>(&ins.payload)) {
    Obstacle ob;
    ob.id = o->id.empty() ? "instruction" + std::to_string(applied_.size()) : o->id;
    ob.polygon = o->polygon;
    ob.kind = o->kind;
    ob.known_at_start = true;
    if (workspace_.find(ob.id)) return reject("obstacle id already exists: " + ob.id);
    try {
      workspace_.add_known_obstacle(ob);
    } catch (const std::invalid_argument& e) {
      return reject(e.what());
    }
    const RegionRemoval removal = roadmap_.remove_region(ob.polygon);
    ack.accepted = true;
    json nodes = json::array();
    for (NodeId v : removal.removed_nodes) nodes.push_back(v);
    emit("instruction", {{"instruction", record}, {"removed_nodes", nodes}, {"removed_edges", edges_json(removal.removed_edges)}});
    applied_.push_back(stamped);
    if (!removal.removed_edges.empty()) on_roadmap_change(removal.removed_edges);
    return ack;
  }

  const auto& c = std::get<PriorityPayload>(ins.payload);
  auto it = tasks_.find(c.task);
  if (it == tasks_.end()) return reject("unknown task " + std::to_string(c.task));
  if (!(c.priority > 0.0)) return reject("priority must be positive");
  TaskRecord& rec = it->second;
  if (rec.task.state == TaskState::delivered) return reject("task already delivered");
  rec.task.priority = c.priority;
  ack.accepted = true;
  json interrupted = json::array();
  if (rec.task.state == TaskState::assigned) {
    for (auto& r : robots_) {
      if (r.id == rec.holder) {
        interrupt(r, "priority change");
        interrupted.push_back(r.id);
      }
    }
  } else if (rec.task.state == TaskState::unassigned) {
    // Robots that could take the task give up their unstarted work so the
    // next round sees the new weight.
    for (auto& r : robots_) {
      const bool compatible = rec.task.type < static_cast<int>(r.capability.size()) &&
                              r.capability[static_cast<std::size_t>(rec.task.type)] > 0.0;
      const bool has_unpicked = std::any_of(r.stops.begin(), r.stops.end(),
                                            [](const RouteStop& s) { return s.kind == StopKind::pickup; });
      if (compatible && has_unpicked) {
        interrupt(r, "priority change");
        interrupted.push_back(r.id);
      }
    }
  }
  emit("instruction", {{"instruction", record}, {"interrupted", interrupted}});
  applied_.push_back(stamped);
  return ack;
}

void Simulation::sense() {
  std::set<std::size_t> found;
  for (const auto& r : robots_) {
    if (!roadmap_.valid(r.node)) continue;
    for (std::size_t i : workspace_.undiscovered_within(roadmap_.position(r.node), scenario_.sensing_radius)) found.insert(i);
  }
  for (std::size_t i : found) discover(i);
}

void Simulation::discover(std::size_t obstacle) {
  workspace_.discover(obstacle);
  const Obstacle& ob = workspace_.obstacles()[obstacle];
  const RegionRemoval removal = roadmap_.remove_region(ob.polygon);
  json nodes = json::array();
  for (NodeId v : removal.removed_nodes) nodes.push_back(v);
  emit("discover", {{"obstacle", ob.id},
                    {"kind", to_string(ob.kind)},
                    {"removed_nodes", nodes},
                    {"removed_edges", edges_json(removal.removed_edges)}});
  if (!removal.removed_edges.empty()) on_roadmap_change(removal.removed_edges);
}

void Simulation::on_roadmap_change(const std::vector<EdgeKey>& changed) {
  for (auto& r : robots_) {
    if (!r.stops.empty()) replan(r, &changed);
  }
}

void Simulation::run_round() {
  const std::vector<Task> pool = unassigned_pool();
  const std::vector<Robot> idle = idle_robots();
  if (idle.empty()) return;
  const bool carrying = std::any_of(idle.begin(), idle.end(), [](const Robot& r) { return !r.carried.empty(); });
  if (pool.empty() && !carrying) return;

  AllocatorContext ctx;
  ctx.roadmap = &roadmap_;
  ctx.cache = &cache_;
  ctx.n_types = scenario_.task_types.size();
  ctx.theta = scenario_.theta;
  ctx.team_size = robots_.size();
  ctx.seed = scenario_.seed + metrics_.rounds;
  const auto t0 = Clock::now();
  AllocationRound round = allocate(allocator_, idle, pool, ctx);
  metrics_.t_alloc += seconds_since(t0);
  ++metrics_.rounds;

  json clusters = json::array();
  for (const auto& c : round.clusters) clusters.push_back({{"id", c.id}, {"tasks", c.task_ids}, {"psi", c.psi}});
  json robots = json::array();
  for (const auto& r : idle) robots.push_back(r.id);
  json assignment = json::object();
  for (const auto& p : round.plans) assignment[std::to_string(p.robot)] = p.cluster;
  emit("round", {{"robots", robots},
                 {"pool", pool.size()},
                 {"k", round.k},
                 {"clusters", clusters},
                 {"assignment", assignment},
                 {"unmatched", round.assignment.unmatched}});

  for (auto& plan : round.plans) {
    auto it = std::find_if(robots_.begin(), robots_.end(), [&](const RobotState& r) { return r.id == plan.robot; });
    it->cluster = plan.cluster;
    if (!plan.route.empty()) start_route(*it, std::move(plan.route));
  }
}

void Simulation::start_route(RobotState& r, RoutePlan plan) {
  for (TaskId id : plan.selected) {
    TaskRecord& rec = tasks_.at(id);
    rec.task.state = TaskState::assigned;
    rec.holder = r.id;
    rec.holders.push_back(r.id);
  }
  r.stops.assign(plan.stops.begin(), plan.stops.end());
  json excluded = json::array();
  for (const auto& [id, why] : plan.excluded) excluded.push_back({{"task", id}, {"reason", why}});
  emit("plan", {{"robot", r.id},
                {"cluster", r.cluster},
                {"selected", plan.selected},
                {"stops", stops_json(r.stops)},
                {"cost", plan.total_cost},
                {"order", plan.order},
                {"load", plan.load_profile},
                {"exhaustive", plan.exhaustive},
                {"excluded", excluded}});
  arrive(r, step_);
  if (!r.stops.empty()) replan(r, nullptr);
}

bool Simulation::replan(RobotState& r, const std::vector<EdgeKey>* changed) {
  r.path.clear();
  if (r.stops.empty()) {
    r.planner.reset();
    return true;
  }
  std::vector<NodeId> goals;
  for (const auto& s : r.stops) goals.push_back(s.node);
  const bool valid = roadmap_.valid(r.node) &&
                     std::all_of(goals.begin(), goals.end(), [&](NodeId g) { return roadmap_.valid(g); });
  PlanResult res;
  bool avoiding = true;
  if (valid) {
    if (changed != nullptr && r.planner) {
      res = r.planner->notify_changes(*changed);
    } else {
      const auto others = goal_sites_except(r.id);
      r.planner = std::make_unique<DStarLitePlanner>(roadmap_, build_spec(goals, others), r.node);
      res = r.planner->plan();
    }
    if (!res.reachable && !r.planner->spec().avoid.empty()) {
      avoiding = false;
      r.planner = std::make_unique<DStarLitePlanner>(roadmap_, build_spec(goals, {}), r.node);
      res = r.planner->plan();
    }
  }
  if (!valid || !res.reachable) {
    emit("unreachable", {{"robot", r.id}, {"goals_reached", res.goals_reached}, {"stops", stops_json(r.stops)}});
    release_unpicked(r, "unreachable");
    return false;
  }
  r.path.assign(res.path.begin() + 1, res.path.end());
  if (changed != nullptr) {
    emit("replan", {{"robot", r.id},
                    {"cost", res.cost},
                    {"length", r.path.size()},
                    {"avoiding", avoiding},
                    {"expansions", r.planner->stats().expansions}});
  } else {
    emit("path", {{"robot", r.id},
                  {"cost", res.cost},
                  {"length", r.path.size()},
                  {"avoiding", avoiding},
                  {"product_bound", r.planner->stats().product_bound},
                  {"expansions", r.planner->stats().expansions}});
  }
  return true;
}

void Simulation::release_unpicked(RobotState& r, const char* reason) {
  json released = json::array();
  for (const auto& s : r.stops) {
    if (s.kind != StopKind::pickup) continue;
    TaskRecord& rec = tasks_.at(s.task);
    if (rec.task.state == TaskState::assigned && rec.holder == r.id) {
      rec.task.state = TaskState::unassigned;
      rec.holder = -1;
      released.push_back(s.task);
    }
  }
  r.stops.clear();
  r.path.clear();
  r.planner.reset();
  r.cluster = -1;
  emit("release", {{"robot", r.id}, {"tasks", released}, {"reason", reason}});
}

void Simulation::interrupt(RobotState& r, const char* reason) { release_unpicked(r, reason); }

void Simulation::move(RobotState& r) {
  if (r.path.empty()) return;
  // Bump check: a hidden obstacle across the next edge is found before the
  // robot commits to it.
  for (int guard = 0; guard < 8 && !r.path.empty(); ++guard) {
    const auto hidden =
        workspace_.undiscovered_blocking(roadmap_.position(r.node), roadmap_.position(r.path.front()));
    if (hidden.empty()) break;
    for (std::size_t i : hidden) discover(i);
  }
  if (r.path.empty()) return;
  const NodeId next = r.path.front();
  if (!roadmap_.edge_weight(r.node, next)) {
    // Stale path; rebuild and wait for the next step.
    replan(r, nullptr);
    return;
  }
  const NodeId from = r.node;
  r.path.pop_front();
  r.node = next;
  ++r.steps;
  ++metrics_.s_total;
  routes_[static_cast<std::size_t>(&r - robots_.data())].push_back(next);
  if (r.planner) r.planner->move_to(next);
  emit("move", {{"robot", r.id}, {"from", from}, {"to", next}});
  arrive(r, step_ + 1);
}

void Simulation::arrive(RobotState& r, std::size_t time) {
  while (!r.stops.empty() && r.stops.front().node == r.node) {
    const RouteStop stop = r.stops.front();
    r.stops.pop_front();
    TaskRecord& rec = tasks_.at(stop.task);
    if (stop.kind == StopKind::pickup) {
      if (static_cast<int>(r.carried.size()) >= r.capacity) throw std::logic_error("pickup beyond capacity");
      r.carried.push_back({stop.task, rec.task.delivery});
      rec.task.state = TaskState::picked;
      rec.pickup_step = time;
      rec.picked_by = r.id;
      emit("pickup", {{"robot", r.id}, {"task", stop.task}, {"node", r.node}, {"load", r.carried.size()}, {"time", time}});
    } else {
      auto it = std::find_if(r.carried.begin(), r.carried.end(), [&](const CarriedItem& c) { return c.task == stop.task; });
      if (it == r.carried.end()) throw std::logic_error("delivery of an item not on board");
      r.carried.erase(it);
      rec.task.state = TaskState::delivered;
      rec.delivery_step = time;
      rec.delivered_by = r.id;
      rec.holder = r.id;
      ++metrics_.delivered;
      emit("delivery", {{"robot", r.id}, {"task", stop.task}, {"node", r.node}, {"load", r.carried.size()}, {"time", time}});
    }
  }
  if (r.stops.empty()) {
    r.path.clear();
    r.planner.reset();
    r.cluster = -1;
  }
}

json Simulation::snapshot() const {
  json robots = json::array();
  for (const auto& r : robots_) {
    json carried = json::array();
    for (const auto& c : r.carried) carried.push_back(c.task);
    json path = json::array();
    for (NodeId v : r.path) path.push_back(v);
    const Point p = r.node < roadmap_.node_count() ? roadmap_.position(r.node) : Point{};
    robots.push_back({{"id", r.id},
                      {"class", to_string(r.cls)},
                      {"node", r.node},
                      {"position", to_json(p)},
                      {"capability", r.capability},
                      {"capacity", r.capacity},
                      {"carried", carried},
                      {"cluster", r.cluster},
                      {"stops", stops_json(r.stops)},
                      {"path", path},
                      {"steps", r.steps}});
  }
  json tasks = json::array();
  for (const auto& [id, rec] : tasks_) {
    tasks.push_back({{"id", id},
                     {"state", to_string(rec.task.state)},
                     {"type", rec.task.type},
                     {"priority", rec.task.priority},
                     {"pickup", to_json(rec.task.pickup_pos)},
                     {"delivery", to_json(rec.task.delivery_pos)},
                     {"delivery_label", rec.task.label},
                     {"holder", rec.holder}});
  }
  json obstacles = json::array();
  for (std::size_t i = 0; i < workspace_.obstacles().size(); ++i) {
    const auto& o = workspace_.obstacles()[i];
    json poly = json::array();
    for (Point q : o.polygon) poly.push_back(to_json(q));
    obstacles.push_back({{"id", o.id}, {"kind", to_string(o.kind)}, {"visible", workspace_.is_visible(i)}, {"polygon", poly}});
  }
  return {{"schema", kSnapshotSchema},
          {"step", step_},
          {"finished", finished_},
          {"outcome", metrics_.outcome},
          {"allocator", to_string(allocator_)},
          {"width", workspace_.width()},
          {"height", workspace_.height()},
          {"roadmap_version", roadmap_.version()},
          {"robots", robots},
          {"tasks", tasks},
          {"obstacles", obstacles},
          {"metrics",
           {{"s_total", metrics_.s_total},
            {"rounds", metrics_.rounds},
            {"delivered", metrics_.delivered},
            {"tasks", metrics_.tasks},
            {"t_alloc", metrics_.t_alloc}}}};
}

json Simulation::roadmap_json() const {
  json nodes = json::array();
  for (NodeId v = 0; v < roadmap_.node_count(); ++v) {
    if (!roadmap_.valid(v)) continue;
    const auto& n = roadmap_.node(v);
    nodes.push_back({{"id", v}, {"x", n.position.x}, {"y", n.position.y}, {"tag", to_string(n.tag)}, {"task", n.task}, {"label", n.label}});
  }
  json edges = json::array();
  for (const auto& [a, b] : roadmap_.edges()) edges.push_back({a, b, *roadmap_.edge_weight(a, b)});
  return {{"version", roadmap_.version()}, {"nodes", nodes}, {"edges", edges}};
}

RunResult run_scenario(const Scenario& scenario, SimConfig config) {
  Simulation sim(scenario, config);
  sim.run();
  return {sim.metrics(), sim.trace()};
}

}  // namespace oath
