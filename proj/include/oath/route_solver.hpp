#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "oath/roadmap.hpp"
#include "oath/task.hpp"

namespace oath {

enum class StopKind { pickup, delivery };

struct RouteStop {
  NodeId node = kNoNode;
  TaskId task = 0;
  StopKind kind = StopKind::pickup;
};

struct RoutePlan {
  std::vector<TaskId> selected;  // newly selected tasks, ascending
  std::vector<RouteStop> stops;  // excludes the start location
  double total_cost = 0.0;
  std::vector<int> load_profile;  // load after each stop
  std::vector<int> order;         // visit-order certificate per stop (start = 0)
  bool exhaustive = true;         // false when subset search was truncated
  std::vector<std::pair<TaskId, std::string>> excluded;

  bool empty() const { return stops.empty(); }
};

// Open-path sequencing over locations 1..m starting at location 0.
struct SequencingProblem {
  std::vector<std::vector<double>> cost;          // (m+1) x (m+1)
  std::vector<int> load_delta;                    // size m+1, entry 0 unused
  std::vector<std::pair<int, int>> precedence;    // (before, after)
  int capacity = 1;
  int initial_load = 0;
};

struct SequenceResult {
  bool feasible = false;
  std::vector<int> sequence;  // location indices in visit order, without 0
  double cost = kInf;
  std::vector<int> u;         // u[loc] = position in tour, u[0] = 0
  std::size_t nodes_explored = 0;
};

// Exact minimum-cost sequence under precedence and load bounds, by depth-first
// branch and bound with (visited set, last location) dominance. Sequences
// costing `upper_bound` or more are not reported. Throws std::domain_error
// on a precedence cycle.
SequenceResult route_exact(const SequencingProblem& problem, double upper_bound = kInf);

using CostFunction = std::function<double(NodeId, NodeId)>;

struct RoutingInstance {
  RobotId robot = 0;
  NodeId start = kNoNode;
  std::vector<double> capability;
  int capacity = 1;
  std::vector<CarriedItem> carried;
  std::vector<Task> candidates;
  CostFunction cost;
};

// Exhaustive subset search is used while C(n, q) stays within this budget.
inline constexpr std::size_t kSubsetBudget = 2000;

// Selects up to the free capacity of compatible, reachable candidates
// (most tasks, then highest total priority, then least cost) and routes them
// together with any carried deliveries.
RoutePlan select_and_route(const RoutingInstance& instance);

// Cost of visiting `stops` in order from `start`.
double route_cost(NodeId start, const std::vector<RouteStop>& stops, const CostFunction& cost);

}  // namespace oath
