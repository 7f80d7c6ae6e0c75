#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "oath/auction.hpp"
#include "oath/clustering.hpp"
#include "oath/roadmap.hpp"
#include "oath/route_solver.hpp"
#include "oath/task.hpp"

namespace oath {

enum class AllocatorKind { oath, cbba, kan, kam };

std::string_view to_string(AllocatorKind kind);
AllocatorKind allocator_from_string(std::string_view name);

struct AllocatorContext {
  const Roadmap* roadmap = nullptr;
  DistanceCache* cache = nullptr;
  std::size_t n_types = 2;
  double theta = 0.1;
  std::size_t team_size = 1;  // drives the cluster count
  std::uint64_t seed = 1;     // k-means seeding
};

struct RobotAssignment {
  RobotId robot = 0;
  int cluster = -1;
  RoutePlan route;
};

struct AllocationRound {
  std::size_t k = 0;
  std::vector<Cluster> clusters;
  ScoreMatrix scores;
  ClusterAssignment assignment;
  std::vector<RobotAssignment> plans;  // one per input robot, same order
};

// One assignment cycle for the given robots over the unassigned pool.
AllocationRound allocate(AllocatorKind kind, std::span<const Robot> robots, std::span<const Task> pool,
                         const AllocatorContext& ctx);

}  // namespace oath
