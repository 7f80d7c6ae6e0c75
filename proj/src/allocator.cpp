#include "oath/allocator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "oath/baselines.hpp"

namespace oath {

std::string_view to_string(AllocatorKind kind) {
  switch (kind) {
    case AllocatorKind::oath: return "oath";
    case AllocatorKind::cbba: return "cbba";
    case AllocatorKind::kan: return "kan";
    case AllocatorKind::kam: return "kam";
  }
  return "?";
}

AllocatorKind allocator_from_string(std::string_view name) {
  for (auto k : {AllocatorKind::oath, AllocatorKind::cbba, AllocatorKind::kan, AllocatorKind::kam}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown allocator: " + std::string(name));
}

namespace {

CostFunction roadmap_cost(DistanceCache& cache) {
  return [&cache](NodeId a, NodeId b) { return a == b ? 0.0 : cache.distance(a, b); };
}

CostFunction euclidean_cost(const Roadmap& rm) {
  return [&rm](NodeId a, NodeId b) { return distance(rm.position(a), rm.position(b)); };
}

RoutingInstance instance_for(const Robot& r, std::vector<Task> candidates, CostFunction cost) {
  RoutingInstance inst;
  inst.robot = r.id;
  inst.start = r.node;
  inst.capability = r.capability;
  inst.capacity = r.capacity;
  inst.carried = r.carried;
  inst.candidates = std::move(candidates);
  inst.cost = std::move(cost);
  return inst;
}

AllocationRound cluster_auction_route(AllocatorKind kind, std::span<const Robot> robots, std::span<const Task> pool,
                                      const AllocatorContext& ctx) {
  AllocationRound round;
  round.k = choose_k(pool.size(), ctx.team_size);
  if (kind == AllocatorKind::oath) {
    std::vector<NodeId> sites;
    for (const auto& t : pool) sites.push_back(t.pickup);
    const DistanceMatrix m = ctx.cache->matrix(sites);
    round.clusters = cluster_tasks(pool, m, round.k, ctx.n_types, ctx.theta);
    round.scores = score(robots, round.clusters, pool, roadmap_cluster_distance(*ctx.roadmap, *ctx.cache));
  } else {
    std::vector<Task> sorted(pool.begin(), pool.end());
    std::sort(sorted.begin(), sorted.end(), [](const Task& a, const Task& b) { return a.id < b.id; });
    round.clusters = kmeans_cluster(sorted, round.k, ctx.seed, ctx.n_types, ctx.theta);
    round.scores = score(robots, round.clusters, pool, euclidean_cluster_distance(), {.use_specialization = false});
  }
  round.assignment = auction(round.scores);

  std::unordered_map<TaskId, const Task*> by_id;
  for (const auto& t : pool) by_id[t.id] = &t;
  const CostFunction cost = kind == AllocatorKind::kan ? euclidean_cost(*ctx.roadmap) : roadmap_cost(*ctx.cache);
  for (std::size_t r = 0; r < robots.size(); ++r) {
    RobotAssignment ra;
    ra.robot = robots[r].id;
    ra.cluster = round.assignment.cluster_of[r];
    std::vector<Task> candidates;
    if (ra.cluster >= 0) {
      for (TaskId id : round.clusters[static_cast<std::size_t>(ra.cluster)].task_ids) candidates.push_back(*by_id.at(id));
    }
    const RoutingInstance inst = instance_for(robots[r], std::move(candidates), cost);
    ra.route = kind == AllocatorKind::kan ? nn_route(inst) : select_and_route(inst);
    round.plans.push_back(std::move(ra));
  }
  return round;
}

AllocationRound cbba_round(std::span<const Robot> robots, std::span<const Task> pool, const AllocatorContext& ctx) {
  AllocationRound round;
  const CostFunction cost = roadmap_cost(*ctx.cache);
  const CbbaResult res = cbba_allocate(pool, robots, cost);
  std::unordered_map<TaskId, const Task*> by_id;
  for (const auto& t : pool) by_id[t.id] = &t;
  for (std::size_t r = 0; r < robots.size(); ++r) {
    RobotAssignment ra;
    ra.robot = robots[r].id;
    RoutePlan& plan = ra.route;
    // Items already on board are delivered first, nearest first.
    std::vector<CarriedItem> carried = robots[r].carried;
    NodeId at = robots[r].node;
    int load = static_cast<int>(carried.size());
    int pos = 0;
    while (!carried.empty()) {
      auto it = std::min_element(carried.begin(), carried.end(), [&](const CarriedItem& a, const CarriedItem& b) {
        const double da = cost(at, a.delivery);
        const double db = cost(at, b.delivery);
        return da != db ? da < db : a.task < b.task;
      });
      if (cost(at, it->delivery) == kInf) {
        for (const auto& c : carried) plan.excluded.emplace_back(c.task, "carried delivery unreachable");
        break;
      }
      plan.stops.push_back({it->delivery, it->task, StopKind::delivery});
      plan.load_profile.push_back(--load);
      plan.order.push_back(++pos);
      at = it->delivery;
      carried.erase(it);
    }
    for (TaskId id : res.bundles[r].path) {
      const Task& t = *by_id.at(id);
      plan.selected.push_back(id);
      plan.stops.push_back({t.pickup, id, StopKind::pickup});
      plan.load_profile.push_back(++load);
      plan.order.push_back(++pos);
      plan.stops.push_back({t.delivery, id, StopKind::delivery});
      plan.load_profile.push_back(--load);
      plan.order.push_back(++pos);
    }
    std::sort(plan.selected.begin(), plan.selected.end());
    plan.total_cost = route_cost(robots[r].node, plan.stops, cost);
    round.plans.push_back(std::move(ra));
  }
  return round;
}

}  // namespace

AllocationRound allocate(AllocatorKind kind, std::span<const Robot> robots, std::span<const Task> pool,
                         const AllocatorContext& ctx) {
  if (ctx.roadmap == nullptr || ctx.cache == nullptr) throw std::invalid_argument("allocate: missing roadmap");
  if (pool.empty()) {
    AllocationRound round;
    const CostFunction cost = kind == AllocatorKind::kan ? euclidean_cost(*ctx.roadmap) : roadmap_cost(*ctx.cache);
    for (const auto& r : robots) {
      RobotAssignment ra;
      ra.robot = r.id;
      const RoutingInstance inst = instance_for(r, {}, cost);
      ra.route = kind == AllocatorKind::kan ? nn_route(inst) : select_and_route(inst);
      round.plans.push_back(std::move(ra));
    }
    return round;
  }
  if (kind == AllocatorKind::cbba) return cbba_round(robots, pool, ctx);
  return cluster_auction_route(kind, robots, pool, ctx);
}

}  // namespace oath
