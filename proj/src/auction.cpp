#include "oath/auction.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace oath {

ScoreMatrix::ScoreMatrix(std::vector<RobotId> robot_ids, std::vector<int> cluster_ids)
    : robots(std::move(robot_ids)), clusters(std::move(cluster_ids)) {
  s.assign(robots.size() * clusters.size(), kInf);
  gamma.assign(s.size(), 0.0);
  dist.assign(s.size(), kInf);
}

std::vector<double> normalize_l1(std::span<const double> v) {
  double total = 0.0;
  for (double x : v) total += std::abs(x);
  if (!(total > 0.0)) throw std::invalid_argument("normalize_l1: zero vector");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= total;
  return out;
}

double specialization(std::span<const double> psi, std::span<const double> zeta) {
  if (psi.size() != zeta.size()) throw std::invalid_argument("specialization: dimension mismatch");
  double acc = 0.0;
  for (std::size_t t = 0; t < psi.size(); ++t) acc += psi[t] * zeta[t];
  return acc;
}

ScoreMatrix score(std::span<const Robot> robots, std::span<const Cluster> clusters,
                  std::span<const Task> tasks, const ClusterDistance& distance, ScoringOptions options) {
  std::vector<RobotId> rids;
  std::vector<int> cids;
  for (const auto& r : robots) rids.push_back(r.id);
  for (const auto& c : clusters) cids.push_back(c.id);
  ScoreMatrix sm(std::move(rids), std::move(cids));

  std::unordered_map<TaskId, const Task*> by_id;
  for (const auto& t : tasks) by_id[t.id] = &t;

  for (std::size_t r = 0; r < robots.size(); ++r) {
    const Robot& robot = robots[r];
    const auto zeta = normalize_l1(robot.capability);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      const Cluster& cluster = clusters[k];
      const std::size_t cell = r * sm.cols() + k;
      double weight = 0.0;
      bool any_compatible = false;
      for (TaskId id : cluster.task_ids) {
        const Task* t = by_id.at(id);
        weight = std::max(weight, t->priority);
        any_compatible = any_compatible || robot.can_do(t->type);
      }
      const double gamma = options.use_specialization ? specialization(cluster.psi, zeta) : 1.0;
      const double delta = distance(robot, cluster);
      sm.gamma[cell] = gamma;
      sm.dist[cell] = delta;
      if (!any_compatible || robot.free_capacity() <= 0 || delta == kInf || !(gamma > 0.0)) {
        sm.s[cell] = kInf;
        continue;
      }
      sm.s[cell] = (delta / gamma) / weight;
    }
  }
  return sm;
}

ClusterDistance roadmap_cluster_distance(const Roadmap& roadmap, DistanceCache& cache) {
  return [&roadmap, &cache](const Robot& robot, const Cluster& cluster) {
    const auto target = roadmap.nearest_node(cluster.center, true);
    if (!target || !roadmap.valid(robot.node)) return kInf;
    return cache.distance(robot.node, *target);
  };
}

ClusterDistance euclidean_cluster_distance() {
  return [](const Robot& robot, const Cluster& cluster) { return distance(robot.position, cluster.center); };
}

ClusterAssignment auction(const ScoreMatrix& scores) {
  const std::size_t nr = scores.rows();
  const std::size_t nk = scores.cols();
  std::vector<double> best_bid(nk, kInf);
  std::vector<int> owner(nk, -1);
  ClusterAssignment out;
  out.cluster_of.assign(nr, -1);

  // Each displacement lowers some best_bid to a value taken from a finite
  // set, so the number of changes is bounded by nr * nk.
  const std::size_t max_passes = nr * nk + 2;
  bool changed = true;
  while (changed && out.passes < max_passes) {
    changed = false;
    ++out.passes;
    for (std::size_t r = 0; r < nr; ++r) {
      if (out.cluster_of[r] != -1) continue;
      int pick = -1;
      double pick_score = kInf;
      for (std::size_t k = 0; k < nk; ++k) {
        const double s = scores.score(r, k);
        if (s == kInf || !(s < best_bid[k])) continue;
        if (s < pick_score) {
          pick_score = s;
          pick = static_cast<int>(k);
        }
      }
      if (pick < 0) continue;
      const auto k = static_cast<std::size_t>(pick);
      if (owner[k] >= 0) out.cluster_of[static_cast<std::size_t>(owner[k])] = -1;
      owner[k] = static_cast<int>(r);
      best_bid[k] = pick_score;
      out.cluster_of[r] = pick;
      changed = true;
    }
  }
  for (std::size_t r = 0; r < nr; ++r) {
    if (out.cluster_of[r] == -1) out.unmatched.push_back(scores.robots[r]);
  }
  return out;
}

}  // namespace oath
