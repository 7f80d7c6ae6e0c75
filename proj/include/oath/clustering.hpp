#pragma once

#include <span>
#include <vector>

#include "oath/roadmap.hpp"
#include "oath/task.hpp"

namespace oath {

struct Cluster {
  int id = 0;
  std::vector<TaskId> task_ids;  // ascending
  Point center;                  // mean of member pickup positions
  std::vector<double> type_counts;
  std::vector<double> psi;
};

// Cluster count for a round: strictly more clusters than robots unless there
// are fewer tasks than robots.
std::size_t choose_k(std::size_t n_tasks, std::size_t n_robots);

// Type composition (counts + theta) / sum(counts + theta).
std::vector<double> cluster_stats(std::span<const double> type_counts, double theta);

// Average-linkage agglomerative clustering over a symmetric dissimilarity
// matrix. Items whose distance to every other item is infinite become
// singletons; merging stops early rather than joining groups at infinite
// linkage. Ties merge the pair with the lexicographically smallest
// (first index, second index). Returns a label per item, labels ordered by
// smallest member index.
std::vector<int> average_linkage(const std::vector<std::vector<double>>& dist, std::size_t k);

// Groups tasks by pickup-to-pickup entries of `m`. Every task's pickup node
// must be a location of `m`. Input order does not matter.
std::vector<Cluster> cluster_tasks(std::span<const Task> tasks, const DistanceMatrix& m, std::size_t k,
                                   std::size_t n_types, double theta);

// Builds Cluster records (center, counts, psi) from a label vector.
std::vector<Cluster> make_clusters(std::span<const Task> tasks, const std::vector<int>& labels,
                                   std::size_t n_types, double theta);

}  // namespace oath
