#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oath/clustering.hpp"
#include "oath/route_solver.hpp"
#include "oath/task.hpp"

namespace oath {

struct CbbaBundle {
  RobotId robot = 0;
  std::vector<TaskId> bundle;  // insertion order
  std::vector<TaskId> path;    // execution order
  std::vector<double> bids;    // winning bid per path entry
};

struct CbbaResult {
  std::vector<CbbaBundle> bundles;  // one per input robot, same order
  std::size_t iterations = 0;
  bool converged = true;
};

// Centralised CBBA over a fully connected team. A robot's path serves its
// tasks one after another (pickup then delivery) from its current node; a
// task's bid is minus the smallest path-cost increase from inserting it,
// capped at the robot's previous bundle bid so iterations converge.
// Bundles hold at most the robot's free capacity. Ties go to the lower task
// id when bidding and to the lower robot id in consensus.
CbbaResult cbba_allocate(std::span<const Task> tasks, std::span<const Robot> robots, const CostFunction& cost);

// Lloyd iterations on pickup coordinates from k-means++ seeds. Returns a
// label per task in input order; labels ordered by smallest member index.
std::vector<int> kmeans_labels(std::span<const Task> tasks, std::size_t k, std::uint64_t seed);

std::vector<Cluster> kmeans_cluster(std::span<const Task> tasks, std::size_t k, std::uint64_t seed,
                                    std::size_t n_types, double theta);

// Greedy nearest-next-stop routing: among the pickups still allowed by the
// free capacity and the deliveries of items on board, go to the nearest.
RoutePlan nn_route(const RoutingInstance& instance);

}  // namespace oath
