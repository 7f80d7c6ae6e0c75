#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "oath/roadmap.hpp"
#include "oath/route_solver.hpp"

namespace oath {

// Ordered visits g_1..g_L with nodes that must not be entered.
struct SequencingSpec {
  std::vector<NodeId> goals;
  std::vector<NodeId> avoid;      // sorted, disjoint from goals
  std::vector<NodeId> conflicts;  // requested avoid nodes dropped because they are goals

  std::size_t length() const { return goals.size(); }
  bool avoided(NodeId v) const;
  // Automaton transition on entering v with progress p.
  int advance(NodeId v, int p) const;
};

// Goals are the plan's stop nodes with consecutive repeats merged; avoid is
// `others` minus own goals.
SequencingSpec build_spec(const RoutePlan& plan, std::span<const NodeId> others);
SequencingSpec build_spec(std::vector<NodeId> goals, std::span<const NodeId> others);

struct ProductState {
  NodeId node = kNoNode;
  int progress = 0;

  friend bool operator==(ProductState a, ProductState b) = default;
};

struct PlanResult {
  bool reachable = false;
  std::vector<NodeId> path;   // roadmap nodes from the start
  std::vector<int> progress;  // automaton state after each path node
  double cost = kInf;
  int goals_reached = 0;      // on failure: goals of the best reachable prefix
};

struct PlannerStats {
  std::size_t expansions = 0;
  std::size_t replans = 0;
  std::size_t states_touched = 0;
  std::size_t product_bound = 0;  // |V| * (L + 1)
};

// Shortest accepting run by forward Dijkstra on the product. On failure the
// result describes the cheapest path reaching the highest progress.
PlanResult product_dijkstra(const Roadmap& roadmap, const SequencingSpec& spec, ProductState start);

// D*-Lite over roadmap x sequencing automaton, searching backwards from the
// accepting state so the start can move without invalidating the search.
class DStarLitePlanner {
 public:
  DStarLitePlanner(const Roadmap& roadmap, SequencingSpec spec, NodeId start);

  PlanResult plan();
  // Robot arrived at `node` (a neighbour of the current start).
  void move_to(NodeId node);
  // Edges whose existence or weight changed since the last call.
  PlanResult notify_changes(std::span<const EdgeKey> changed);

  ProductState start() const { return start_; }
  const SequencingSpec& spec() const { return spec_; }
  const PlannerStats& stats() const { return stats_; }

 private:
  using Key = std::pair<double, double>;
  using StateKey = std::uint64_t;

  static StateKey pack(ProductState s) { return (static_cast<std::uint64_t>(s.progress) << 32) | s.node; }
  static ProductState unpack(StateKey k) {
    return {static_cast<NodeId>(k & 0xffffffffu), static_cast<int>(k >> 32)};
  }

  double heuristic(ProductState from, ProductState to) const;
  double g(ProductState s) const;
  double rhs(ProductState s) const;
  Key key(ProductState s) const;
  void update_vertex(ProductState s);
  void compute_shortest_path();
  double best_successor_value(ProductState s) const;
  bool is_goal(ProductState s) const;
  bool valid_state(ProductState s) const;

  template <class F>
  void for_each_successor(ProductState s, F&& f) const;
  template <class F>
  void for_each_predecessor(ProductState s, F&& f) const;

  PlanResult extract();

  const Roadmap* roadmap_;
  SequencingSpec spec_;
  ProductState start_;
  ProductState last_;
  ProductState goal_;
  double km_ = 0.0;
  std::unordered_map<StateKey, double> g_;
  std::unordered_map<StateKey, double> rhs_;
  std::set<std::tuple<double, double, StateKey>> open_;
  std::unordered_map<StateKey, Key> open_keys_;
  PlannerStats stats_;
};

}  // namespace oath
