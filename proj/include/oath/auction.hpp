#pragma once

#include <functional>
#include <span>
#include <vector>

#include "oath/clustering.hpp"
#include "oath/roadmap.hpp"
#include "oath/task.hpp"

namespace oath {

struct ScoreMatrix {
  std::vector<RobotId> robots;  // row ids
  std::vector<int> clusters;    // column ids
  std::vector<double> s;
  std::vector<double> gamma;
  std::vector<double> dist;

  ScoreMatrix() = default;
  ScoreMatrix(std::vector<RobotId> robot_ids, std::vector<int> cluster_ids);

  std::size_t rows() const { return robots.size(); }
  std::size_t cols() const { return clusters.size(); }
  double& score(std::size_t r, std::size_t k) { return s[r * cols() + k]; }
  double score(std::size_t r, std::size_t k) const { return s[r * cols() + k]; }
};

struct ClusterAssignment {
  std::vector<int> cluster_of;  // per score-matrix row: column index or -1
  std::vector<RobotId> unmatched;
  std::size_t passes = 0;
};

std::vector<double> normalize_l1(std::span<const double> v);

// Inner product of a cluster composition and a normalised capability vector.
double specialization(std::span<const double> psi, std::span<const double> zeta);

// Travel distance used for delta_{r,k}.
using ClusterDistance = std::function<double(const Robot&, const Cluster&)>;

struct ScoringOptions {
  bool use_specialization = true;  // false: gamma = 1
};

// s_{r,k} = (delta_{r,k} / gamma_{r,k}) / w_k with w_k the highest member
// priority. Infinite when the robot can do none of the cluster's tasks, has
// no free capacity, or cannot reach the cluster.
ScoreMatrix score(std::span<const Robot> robots, std::span<const Cluster> clusters,
                  std::span<const Task> tasks, const ClusterDistance& distance,
                  ScoringOptions options = {});

// Obstacle-aware delta: shortest-path distance from the robot's node to the
// roadmap node nearest the cluster center.
ClusterDistance roadmap_cluster_distance(const Roadmap& roadmap, DistanceCache& cache);
ClusterDistance euclidean_cluster_distance();

// Sequential auction with displacement: robots bid in row order for the
// lowest-score cluster whose current best bid they beat; a displaced robot
// bids again on the next pass. Ties go to the lowest column.
ClusterAssignment auction(const ScoreMatrix& scores);

}  // namespace oath
