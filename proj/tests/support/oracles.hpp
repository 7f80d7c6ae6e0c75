#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct WEdge {
  std::size_t a, b;
  double w;
};

inline std::vector<std::vector<double>> floyd_warshall(std::size_t n, const std::vector<WEdge>& edges) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : edges) {
    d[e.a][e.b] = std::min(d[e.a][e.b], e.w);
    d[e.b][e.a] = std::min(d[e.b][e.a], e.w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Pickup-and-delivery instance over abstract location ids with a cost table.
struct PdTask {
  int id;
  int pickup;
  int delivery;
  double priority = 1.0;
};

struct PdBest {
  double cost = inf;
  std::vector<int> chosen;  // task ids, ascending
  double priority = 0.0;
};

// Every ordering of the carried deliveries plus pickups/deliveries of `tasks`
// respecting pickup-before-delivery and the capacity bound.
inline double best_order_cost(int start, const std::vector<int>& carried, const std::vector<PdTask>& tasks, int capacity,
                              const std::function<double(int, int)>& cost) {
  struct Ev {
    int loc;
    int task;  // -1 for carried
    bool pick;
  };
  std::vector<Ev> evs;
  for (int c : carried) evs.push_back({c, -1, false});
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    evs.push_back({tasks[i].pickup, static_cast<int>(i), true});
    evs.push_back({tasks[i].delivery, static_cast<int>(i), false});
  }
  std::vector<int> perm(evs.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = inf;
  do {
    int load = static_cast<int>(carried.size());
    std::vector<bool> picked(tasks.size(), false);
    bool ok = load <= capacity;
    double c = 0.0;
    int at = start;
    for (int k : perm) {
      const Ev& e = evs[static_cast<std::size_t>(k)];
      if (e.task >= 0) {
        if (e.pick) {
          picked[static_cast<std::size_t>(e.task)] = true;
          ++load;
        } else {
          if (!picked[static_cast<std::size_t>(e.task)]) {
            ok = false;
            break;
          }
          --load;
        }
      } else {
        --load;
      }
      if (load > capacity) {
        ok = false;
        break;
      }
      c += cost(at, e.loc);
      at = e.loc;
    }
    if (ok) best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Most tasks, then highest priority sum, then least cost.
inline PdBest best_subset(int start, const std::vector<int>& carried, const std::vector<PdTask>& tasks, int capacity,
                          const std::function<double(int, int)>& cost) {
  PdBest best;
  const int room = capacity - static_cast<int>(carried.size());
  const std::size_t n = tasks.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<PdTask> sub;
    double pri = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        sub.push_back(tasks[i]);
        pri += tasks[i].priority;
      }
    }
    if (static_cast<int>(sub.size()) > room) continue;
    const double c = best_order_cost(start, carried, sub, capacity, cost);
    if (c == inf) continue;
    const bool better = sub.size() > best.chosen.size() ||
                        (sub.size() == best.chosen.size() && (pri > best.priority + 1e-12 ||
                                                              (std::abs(pri - best.priority) <= 1e-12 && c < best.cost)));
    if (best.cost == inf || better) {
      best.cost = c;
      best.priority = pri;
      best.chosen.clear();
      for (const auto& t : sub) best.chosen.push_back(t.id);
      std::sort(best.chosen.begin(), best.chosen.end());
    }
  }
  return best;
}

// Shortest accepting walk on (node, progress) built explicitly: entering the
// next goal advances progress, avoided nodes cannot be entered.
inline double product_shortest(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj, std::size_t start,
                               const std::vector<std::size_t>& goals, const std::set<std::size_t>& avoid) {
  const std::size_t L = goals.size();
  const std::size_t n = adj.size();
  auto adv = [&](std::size_t v, std::size_t p) { return p < L && goals[p] == v ? p + 1 : p; };
  std::vector<double> d(n * (L + 1), inf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const std::size_t s0 = adv(start, 0) * n + start;
  d[s0] = 0.0;
  pq.emplace(0.0, s0);
  while (!pq.empty()) {
    auto [dist, i] = pq.top();
    pq.pop();
    if (dist > d[i]) continue;
    const std::size_t v = i % n;
    const std::size_t p = i / n;
    if (p == L) return dist;
    for (auto [w, c] : adj[v]) {
      if (avoid.count(w)) continue;
      const std::size_t j = adv(w, p) * n + w;
      if (dist + c < d[j]) {
        d[j] = dist + c;
        pq.emplace(d[j], j);
      }
    }
  }
  return inf;
}

}  // namespace oracle
