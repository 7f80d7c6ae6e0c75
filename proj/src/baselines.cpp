#include "oath/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace oath {

namespace {

struct Insertion {
  double delta = kInf;
  std::size_t position = 0;
};

double path_cost(NodeId start, const std::vector<const Task*>& path, const CostFunction& cost) {
  double total = 0.0;
  NodeId at = start;
  for (const Task* t : path) {
    total += cost(at, t->pickup) + cost(t->pickup, t->delivery);
    at = t->delivery;
  }
  return total;
}

Insertion best_insertion(NodeId start, const std::vector<const Task*>& path, const Task& task,
                         const CostFunction& cost) {
  Insertion best;
  const double base = path_cost(start, path, cost);
  for (std::size_t pos = 0; pos <= path.size(); ++pos) {
    std::vector<const Task*> trial = path;
    trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), &task);
    const double d = path_cost(start, trial, cost) - base;
    if (d < best.delta) best = {d, pos};
  }
  return best;
}

std::vector<int> relabel_by_first_member(const std::vector<int>& raw) {
  std::vector<int> map(raw.size() + 1, -1);
  std::vector<int> out(raw.size());
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& m = map[static_cast<std::size_t>(raw[i])];
    if (m < 0) m = next++;
    out[i] = m;
  }
  return out;
}

}  // namespace

CbbaResult cbba_allocate(std::span<const Task> tasks, std::span<const Robot> robots, const CostFunction& cost) {
  CbbaResult out;
  const std::size_t nr = robots.size();
  const std::size_t nt = tasks.size();
  std::vector<std::size_t> order(nt);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tasks[a].id < tasks[b].id; });

  std::vector<double> y(nt, -kInf);  // winning bids
  std::vector<int> z(nt, -1);        // winners (robot index)
  std::vector<std::vector<std::size_t>> bundle(nr);
  std::vector<std::vector<std::size_t>> path(nr);

  // Tasks a robot can never serve are dropped up front.
  std::vector<std::vector<bool>> feasible(nr, std::vector<bool>(nt, false));
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      feasible[i][j] = robots[i].can_do(tasks[j].type) && cost(robots[i].node, tasks[j].pickup) < kInf &&
                       cost(tasks[j].pickup, tasks[j].delivery) < kInf;
    }
  }

  auto as_tasks = [&](const std::vector<std::size_t>& idx) {
    std::vector<const Task*> v;
    for (std::size_t j : idx) v.push_back(&tasks[j]);
    return v;
  };

  const std::size_t cap = std::max<std::size_t>(1, nr * nt);
  bool changed = true;
  while (changed && out.iterations < cap) {
    changed = false;
    ++out.iterations;

    // Bundle construction.
    for (std::size_t i = 0; i < nr; ++i) {
      const auto limit = static_cast<std::size_t>(std::max(0, robots[i].free_capacity()));
      while (bundle[i].size() < limit) {
        const auto current = as_tasks(path[i]);
        double best_bid = -kInf;
        std::size_t best_j = nt;
        std::size_t best_pos = 0;
        for (std::size_t j : order) {
          if (!feasible[i][j]) continue;
          if (std::find(bundle[i].begin(), bundle[i].end(), j) != bundle[i].end()) continue;
          const Insertion ins = best_insertion(robots[i].node, current, tasks[j], cost);
          if (ins.delta == kInf) continue;
          // Capped by the robot's previous bid so bundle bids never rise.
          double bid = -ins.delta;
          if (!bundle[i].empty()) bid = std::min(bid, y[bundle[i].back()]);
          const bool outbids = bid > y[j] || (bid == y[j] && z[j] > static_cast<int>(i));
          if (!outbids) continue;
          if (bid > best_bid) {
            best_bid = bid;
            best_j = j;
            best_pos = ins.position;
          }
        }
        if (best_j == nt) break;
        bundle[i].push_back(best_j);
        path[i].insert(path[i].begin() + static_cast<std::ptrdiff_t>(best_pos), best_j);
        y[best_j] = best_bid;
        z[best_j] = static_cast<int>(i);
        changed = true;
      }
    }

    // Consensus: a robot that lost a task drops it and everything it added
    // afterwards, since those bids assumed the lost task was in its path.
    for (std::size_t i = 0; i < nr; ++i) {
      std::size_t cut = bundle[i].size();
      for (std::size_t n = 0; n < bundle[i].size(); ++n) {
        if (z[bundle[i][n]] != static_cast<int>(i)) {
          cut = n;
          break;
        }
      }
      if (cut == bundle[i].size()) continue;
      for (std::size_t n = cut; n < bundle[i].size(); ++n) {
        const std::size_t j = bundle[i][n];
        if (z[j] == static_cast<int>(i)) {
          z[j] = -1;
          y[j] = -kInf;
        }
        path[i].erase(std::find(path[i].begin(), path[i].end(), j));
      }
      bundle[i].resize(cut);
      changed = true;
    }
  }
  out.converged = !changed;

  for (std::size_t i = 0; i < nr; ++i) {
    CbbaBundle b;
    b.robot = robots[i].id;
    for (std::size_t j : bundle[i]) b.bundle.push_back(tasks[j].id);
    for (std::size_t j : path[i]) {
      if (z[j] != static_cast<int>(i)) continue;
      b.path.push_back(tasks[j].id);
      b.bids.push_back(y[j]);
    }
    out.bundles.push_back(std::move(b));
  }
  return out;
}

std::vector<int> kmeans_labels(std::span<const Task> tasks, std::size_t k, std::uint64_t seed) {
  const std::size_t n = tasks.size();
  if (n == 0 || k == 0) return std::vector<int>(n, 0);
  if (k >= n) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return labels;
  }
  std::vector<Point> pts;
  for (const auto& t : tasks) pts.push_back(t.pickup_pos);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> centers;
  centers.push_back(pts[static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n]);
  std::vector<double> d2(n);
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = kInf;
      for (const Point& c : centers) best = std::min(best, dot(pts[i] - c, pts[i] - c));
      d2[i] = best;
      total += best;
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      const double r = unit(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (r < acc) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
    }
    centers.push_back(pts[pick]);
  }

  std::vector<int> labels(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = kInf;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = dot(pts[i] - centers[c], pts[i] - centers[c]);
        if (d < best) {
          best = d;
          labels[i] = static_cast<int>(c);
        }
      }
    }
    std::vector<Point> sum(k);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[static_cast<std::size_t>(labels[i])] = sum[static_cast<std::size_t>(labels[i])] + pts[i];
      ++count[static_cast<std::size_t>(labels[i])];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      Point next;
      if (count[c] == 0) {
        // Re-seed at the point farthest from its own center.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = distance(pts[i], centers[static_cast<std::size_t>(labels[i])]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        next = pts[far];
        labels[far] = static_cast<int>(c);
        shift = kInf;
      } else {
        next = (1.0 / static_cast<double>(count[c])) * sum[c];
      }
      if (shift != kInf) shift = std::max(shift, distance(next, centers[c]));
      centers[c] = next;
    }
    if (shift < 1e-6) break;
  }
  return relabel_by_first_member(labels);
}

std::vector<Cluster> kmeans_cluster(std::span<const Task> tasks, std::size_t k, std::uint64_t seed,
                                    std::size_t n_types, double theta) {
  if (tasks.empty()) return {};
  return make_clusters(tasks, kmeans_labels(tasks, k, seed), n_types, theta);
}

RoutePlan nn_route(const RoutingInstance& inst) {
  RoutePlan plan;
  std::vector<Task> pool;
  for (const auto& t : inst.candidates) {
    const bool compatible = t.type >= 0 && t.type < static_cast<int>(inst.capability.size()) &&
                            inst.capability[static_cast<std::size_t>(t.type)] > 0.0;
    if (compatible) {
      pool.push_back(t);
    } else {
      plan.excluded.emplace_back(t.id, "incompatible type");
    }
  }
  std::sort(pool.begin(), pool.end(), [](const Task& a, const Task& b) { return a.id < b.id; });

  struct Onboard {
    TaskId task;
    NodeId delivery;
  };
  std::vector<Onboard> onboard;
  for (const auto& c : inst.carried) onboard.push_back({c.task, c.delivery});
  int budget = inst.capacity - static_cast<int>(inst.carried.size());
  std::vector<bool> taken(pool.size(), false);

  NodeId at = inst.start;
  int step = 0;
  while (true) {
    double best = kInf;
    int pick_kind = -1;  // 0 pickup, 1 delivery
    std::size_t pick = 0;
    TaskId pick_id = std::numeric_limits<TaskId>::max();
    auto consider = [&](double d, int kind, std::size_t idx, TaskId id) {
      if (d < best || (d == best && d < kInf && id < pick_id)) {
        best = d;
        pick_kind = kind;
        pick = idx;
        pick_id = id;
      }
    };
    const int load = static_cast<int>(onboard.size());
    if (budget > 0 && load < inst.capacity) {
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!taken[i]) consider(inst.cost(at, pool[i].pickup), 0, i, pool[i].id);
      }
    }
    for (std::size_t i = 0; i < onboard.size(); ++i) consider(inst.cost(at, onboard[i].delivery), 1, i, onboard[i].task);
    if (pick_kind < 0) break;

    RouteStop stop;
    if (pick_kind == 0) {
      taken[pick] = true;
      --budget;
      onboard.push_back({pool[pick].id, pool[pick].delivery});
      plan.selected.push_back(pool[pick].id);
      stop = {pool[pick].pickup, pool[pick].id, StopKind::pickup};
    } else {
      stop = {onboard[pick].delivery, onboard[pick].task, StopKind::delivery};
      onboard.erase(onboard.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    plan.total_cost += best;
    at = stop.node;
    plan.stops.push_back(stop);
    plan.load_profile.push_back(static_cast<int>(onboard.size()));
    plan.order.push_back(++step);
  }
  std::sort(plan.selected.begin(), plan.selected.end());
  return plan;
}

}  // namespace oath
