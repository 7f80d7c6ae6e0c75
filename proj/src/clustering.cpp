#include "oath/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oath {

std::size_t choose_k(std::size_t n_tasks, std::size_t n_robots) {
  if (n_robots == 0) throw std::invalid_argument("choose_k: need at least one robot");
  if (n_tasks == 0) return 0;
  if (n_tasks < n_robots) return n_tasks;
  const auto scaled = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(n_robots)));
  return std::min(n_tasks, std::max(n_robots + 1, scaled));
}

std::vector<double> cluster_stats(std::span<const double> type_counts, double theta) {
  std::vector<double> psi(type_counts.size());
  double total = 0.0;
  for (std::size_t t = 0; t < type_counts.size(); ++t) {
    psi[t] = type_counts[t] + theta;
    total += psi[t];
  }
  if (!(total > 0.0)) throw std::invalid_argument("cluster_stats: empty composition");
  for (double& v : psi) v /= total;
  return psi;
}

std::vector<int> average_linkage(const std::vector<std::vector<double>>& dist, std::size_t k) {
  const std::size_t n = dist.size();
  if (n == 0) return {};
  if (k == 0 || k > n) throw std::invalid_argument("average_linkage: k must be in [1, n]");

  struct Group {
    std::vector<std::size_t> members;
    bool active = true;
  };
  std::vector<Group> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[i].members = {i};

  std::vector<bool> isolated(n, false);
  std::size_t n_isolated = 0;
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    bool all_inf = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dist[i][j] != kInf) {
        all_inf = false;
        break;
      }
    }
    if (all_inf) {
      isolated[i] = true;
      ++n_isolated;
    }
  }
  const std::size_t rest = n - n_isolated;
  std::size_t target = rest == 0 ? 0 : (k > n_isolated ? k - n_isolated : 1);

  // Group i is represented by its lowest member index i, so iterating in index
  // order gives the tie-breaking order directly.
  std::vector<std::vector<double>> link = dist;
  std::size_t active = rest;
  while (active > target) {
    double best = kInf;
    std::size_t ba = n, bb = n;
    for (std::size_t a = 0; a < n; ++a) {
      if (isolated[a] || !groups[a].active) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (isolated[b] || !groups[b].active) continue;
        if (link[a][b] < best) {
          best = link[a][b];
          ba = a;
          bb = b;
        }
      }
    }
    if (ba == n) break;  // remaining groups are mutually unreachable
    const double na = static_cast<double>(groups[ba].members.size());
    const double nb = static_cast<double>(groups[bb].members.size());
    for (std::size_t c = 0; c < n; ++c) {
      if (c == ba || c == bb || isolated[c] || !groups[c].active) continue;
      const double merged = (na * link[ba][c] + nb * link[bb][c]) / (na + nb);
      link[ba][c] = link[c][ba] = merged;
    }
    groups[ba].members.insert(groups[ba].members.end(), groups[bb].members.begin(), groups[bb].members.end());
    groups[bb].active = false;
    groups[bb].members.clear();
    --active;
  }

  std::vector<int> labels(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != -1) continue;
    if (isolated[i]) {
      labels[i] = next++;
      continue;
    }
    const Group& g = groups[i];
    for (std::size_t m : g.members) labels[m] = next;
    ++next;
  }
  return labels;
}

std::vector<Cluster> make_clusters(std::span<const Task> tasks, const std::vector<int>& labels,
                                   std::size_t n_types, double theta) {
  int n_clusters = 0;
  for (int l : labels) n_clusters = std::max(n_clusters, l + 1);
  std::vector<Cluster> clusters(static_cast<std::size_t>(n_clusters));
  std::vector<std::vector<Point>> pickups(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    clusters[c].id = static_cast<int>(c);
    clusters[c].type_counts.assign(n_types, 0.0);
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    Cluster& c = clusters[static_cast<std::size_t>(labels[i])];
    c.task_ids.push_back(tasks[i].id);
    pickups[static_cast<std::size_t>(labels[i])].push_back(tasks[i].pickup_pos);
    if (tasks[i].type < 0 || static_cast<std::size_t>(tasks[i].type) >= n_types) {
      throw std::invalid_argument("make_clusters: task type out of range");
    }
    c.type_counts[static_cast<std::size_t>(tasks[i].type)] += 1.0;
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    std::sort(clusters[c].task_ids.begin(), clusters[c].task_ids.end());
    clusters[c].center = centroid(pickups[c]);
    clusters[c].psi = cluster_stats(clusters[c].type_counts, theta);
  }
  return clusters;
}

std::vector<Cluster> cluster_tasks(std::span<const Task> tasks, const DistanceMatrix& m, std::size_t k,
                                   std::size_t n_types, double theta) {
  if (tasks.empty()) return {};
  std::vector<Task> sorted(tasks.begin(), tasks.end());
  std::sort(sorted.begin(), sorted.end(), [](const Task& a, const Task& b) { return a.id < b.id; });

  const std::size_t n = sorted.size();
  std::vector<std::size_t> index(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = m.index_of(sorted[i].pickup);
    if (!idx) throw std::invalid_argument("cluster_tasks: pickup missing from distance matrix");
    index[i] = *idx;
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // symmetrise against floating noise between the two Dijkstra rows
      const double v = std::min(m(index[i], index[j]), m(index[j], index[i]));
      d[i][j] = d[j][i] = v;
    }
  }
  const auto labels = average_linkage(d, k);
  return make_clusters(sorted, labels, n_types, theta);
}

}  // namespace oath
