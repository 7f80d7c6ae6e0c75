#include "oath/route_solver.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace oath {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const SequencingProblem& p, double upper_bound)
      : p_(p), m_(static_cast<int>(p.cost.size()) - 1), best_(upper_bound) {
    pred_mask_.assign(static_cast<std::size_t>(m_) + 1, 0);
    for (const auto& [before, after] : p.precedence) {
      if (before < 1 || before > m_ || after < 1 || after > m_ || before == after) {
        throw std::domain_error("route_exact: precedence references an invalid location");
      }
      pred_mask_[static_cast<std::size_t>(after)] |= bit(before);
    }
    check_acyclic();
    memo_.assign((std::size_t{1} << m_) * (static_cast<std::size_t>(m_) + 1), kInf);
  }

  SequenceResult run() {
    SequenceResult out;
    if (m_ == 0) {
      out.feasible = true;
      out.cost = 0.0;
      out.u = {0};
      return out;
    }
    std::vector<int> seq;
    dfs(0, 0, p_.initial_load, 0.0, seq);
    out.nodes_explored = explored_;
    if (best_seq_.empty()) return out;
    out.feasible = true;
    out.sequence = best_seq_;
    out.cost = best_;
    out.u.assign(static_cast<std::size_t>(m_) + 1, 0);
    for (std::size_t i = 0; i < best_seq_.size(); ++i) out.u[static_cast<std::size_t>(best_seq_[i])] = static_cast<int>(i) + 1;
    return out;
  }

 private:
  static std::uint32_t bit(int loc) { return std::uint32_t{1} << (loc - 1); }

  void check_acyclic() const {
    std::uint32_t done = 0;
    for (int round = 0; round < m_; ++round) {
      bool progressed = false;
      for (int j = 1; j <= m_; ++j) {
        if ((done & bit(j)) || (pred_mask_[static_cast<std::size_t>(j)] & ~done)) continue;
        done |= bit(j);
        progressed = true;
      }
      if (!progressed) break;
    }
    const std::uint32_t full = (m_ == 32) ? ~0u : ((std::uint32_t{1} << m_) - 1);
    if (done != full) throw std::domain_error("route_exact: precedence constraints contain a cycle");
  }

  // Each unvisited location is entered once from another unvisited location
  // or from the current one.
  double lower_bound(std::uint32_t mask, int last) const {
    double lb = 0.0;
    for (int j = 1; j <= m_; ++j) {
      if (mask & bit(j)) continue;
      double in = p_.cost[static_cast<std::size_t>(last)][static_cast<std::size_t>(j)];
      for (int i = 1; i <= m_; ++i) {
        if (i == j || (mask & bit(i))) continue;
        in = std::min(in, p_.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
      lb += in;
    }
    return lb;
  }

  void dfs(int last, std::uint32_t mask, int load, double cost, std::vector<int>& seq) {
    ++explored_;
    if (static_cast<int>(seq.size()) == m_) {
      if (cost < best_) {
        best_ = cost;
        best_seq_ = seq;
      }
      return;
    }
    if (cost + lower_bound(mask, last) >= best_) return;
    for (int j = 1; j <= m_; ++j) {
      if (mask & bit(j)) continue;
      if (pred_mask_[static_cast<std::size_t>(j)] & ~mask) continue;
      const int next_load = load + p_.load_delta[static_cast<std::size_t>(j)];
      if (next_load < 0 || next_load > p_.capacity) continue;
      const double step = p_.cost[static_cast<std::size_t>(last)][static_cast<std::size_t>(j)];
      if (step == kInf) continue;
      const double next_cost = cost + step;
      const std::uint32_t next_mask = mask | bit(j);
      double& seen = memo_[static_cast<std::size_t>(next_mask) * (static_cast<std::size_t>(m_) + 1) + static_cast<std::size_t>(j)];
      if (next_cost >= seen) continue;
      seen = next_cost;
      seq.push_back(j);
      dfs(j, next_mask, next_load, next_cost, seq);
      seq.pop_back();
    }
  }

  const SequencingProblem& p_;
  int m_;
  double best_;
  std::vector<int> best_seq_;
  std::vector<std::uint32_t> pred_mask_;
  std::vector<double> memo_;
  std::size_t explored_ = 0;
};

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Advances `idx` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

SequenceResult route_exact(const SequencingProblem& problem, double upper_bound) {
  const std::size_t n = problem.cost.size();
  if (n == 0) throw std::invalid_argument("route_exact: cost matrix must include the start");
  if (n - 1 > 20) throw std::invalid_argument("route_exact: too many locations for exact search");
  if (problem.load_delta.size() != n) throw std::invalid_argument("route_exact: load_delta size mismatch");
  for (const auto& row : problem.cost) {
    if (row.size() != n) throw std::invalid_argument("route_exact: cost matrix must be square");
  }
  return BranchAndBound(problem, upper_bound).run();
}

double route_cost(NodeId start, const std::vector<RouteStop>& stops, const CostFunction& cost) {
  double total = 0.0;
  NodeId at = start;
  for (const auto& s : stops) {
    total += cost(at, s.node);
    at = s.node;
  }
  return total;
}

RoutePlan select_and_route(const RoutingInstance& inst) {
  RoutePlan plan;

  std::vector<CarriedItem> carried;
  for (const auto& item : inst.carried) {
    if (inst.cost(inst.start, item.delivery) == kInf) {
      plan.excluded.emplace_back(item.task, "carried delivery unreachable");
    } else {
      carried.push_back(item);
    }
  }

  std::vector<Task> valid;
  for (const auto& t : inst.candidates) {
    const bool compatible = t.type >= 0 && t.type < static_cast<int>(inst.capability.size()) &&
                            inst.capability[static_cast<std::size_t>(t.type)] > 0.0;
    if (!compatible) {
      plan.excluded.emplace_back(t.id, "incompatible type");
    } else if (inst.cost(inst.start, t.pickup) == kInf || inst.cost(t.pickup, t.delivery) == kInf) {
      plan.excluded.emplace_back(t.id, "unreachable");
    } else {
      valid.push_back(t);
    }
  }
  std::sort(valid.begin(), valid.end(), [](const Task& a, const Task& b) { return a.id < b.id; });

  const int free = inst.capacity - static_cast<int>(inst.carried.size());
  const std::size_t q = free <= 0 ? 0 : std::min(static_cast<std::size_t>(free), valid.size());

  if (q > 0 && binomial(valid.size(), q) > static_cast<double>(kSubsetBudget)) {
    // Keep the most promising candidates: priority first, then standalone cost.
    plan.exhaustive = false;
    std::vector<Task> ranked = valid;
    std::stable_sort(ranked.begin(), ranked.end(), [&](const Task& a, const Task& b) {
      if (a.priority != b.priority) return a.priority > b.priority;
      const double ca = inst.cost(inst.start, a.pickup) + inst.cost(a.pickup, a.delivery);
      const double cb = inst.cost(inst.start, b.pickup) + inst.cost(b.pickup, b.delivery);
      if (ca != cb) return ca < cb;
      return a.id < b.id;
    });
    std::size_t keep = q;
    while (keep < ranked.size() && binomial(keep + 1, q) <= static_cast<double>(kSubsetBudget)) ++keep;
    ranked.resize(keep);
    std::sort(ranked.begin(), ranked.end(), [](const Task& a, const Task& b) { return a.id < b.id; });
    valid = std::move(ranked);
  }

  // Location table: 0 = start, then carried deliveries, then per task
  // pickup/delivery pairs.
  std::vector<NodeId> nodes{inst.start};
  for (const auto& c : carried) nodes.push_back(c.delivery);
  const std::size_t task_base = nodes.size();
  for (const auto& t : valid) {
    nodes.push_back(t.pickup);
    nodes.push_back(t.delivery);
  }
  std::vector<std::vector<double>> full(nodes.size(), std::vector<double>(nodes.size(), 0.0));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i != j) full[i][j] = inst.cost(nodes[i], nodes[j]);
    }
  }

  double target_priority = 0.0;
  {
    std::vector<double> pr;
    for (const auto& t : valid) pr.push_back(t.priority);
    std::sort(pr.begin(), pr.end(), std::greater<>());
    for (std::size_t i = 0; i < q; ++i) target_priority += pr[i];
  }

  double best_cost = kInf;
  std::vector<std::size_t> best_combo;
  SequenceResult best_seq;
  std::vector<std::size_t> locs_of_best;

  std::vector<std::size_t> combo(q);
  std::iota(combo.begin(), combo.end(), std::size_t{0});
  do {
    double prio = 0.0;
    for (std::size_t i : combo) prio += valid[i].priority;
    if (prio < target_priority - 1e-9) continue;

    std::vector<std::size_t> locs{0};
    for (std::size_t c = 0; c < carried.size(); ++c) locs.push_back(1 + c);
    for (std::size_t i : combo) {
      locs.push_back(task_base + 2 * i);
      locs.push_back(task_base + 2 * i + 1);
    }
    SequencingProblem sp;
    sp.capacity = inst.capacity;
    sp.initial_load = static_cast<int>(carried.size());
    sp.cost.assign(locs.size(), std::vector<double>(locs.size(), 0.0));
    for (std::size_t a = 0; a < locs.size(); ++a) {
      for (std::size_t b = 0; b < locs.size(); ++b) sp.cost[a][b] = full[locs[a]][locs[b]];
    }
    sp.load_delta.assign(locs.size(), 0);
    for (std::size_t c = 0; c < carried.size(); ++c) sp.load_delta[1 + c] = -1;
    const std::size_t first_task = 1 + carried.size();
    for (std::size_t i = 0; i < combo.size(); ++i) {
      const int pick = static_cast<int>(first_task + 2 * i);
      sp.load_delta[static_cast<std::size_t>(pick)] = +1;
      sp.load_delta[static_cast<std::size_t>(pick) + 1] = -1;
      sp.precedence.emplace_back(pick, pick + 1);
    }
    SequenceResult res = route_exact(sp, best_cost);
    if (res.feasible && res.cost < best_cost) {
      best_cost = res.cost;
      best_combo = combo;
      best_seq = std::move(res);
      locs_of_best = std::move(locs);
    }
  } while (q > 0 && next_combination(combo, valid.size()));

  if (!best_seq.feasible) return plan;

  const std::size_t first_task = 1 + carried.size();
  int load = static_cast<int>(carried.size());
  for (std::size_t pos = 0; pos < best_seq.sequence.size(); ++pos) {
    const auto loc = static_cast<std::size_t>(best_seq.sequence[pos]);
    RouteStop stop;
    stop.node = nodes[locs_of_best[loc]];
    if (loc < first_task) {
      stop.task = carried[loc - 1].task;
      stop.kind = StopKind::delivery;
      --load;
    } else {
      const std::size_t i = (loc - first_task) / 2;
      stop.task = valid[best_combo[i]].id;
      stop.kind = ((loc - first_task) % 2 == 0) ? StopKind::pickup : StopKind::delivery;
      load += stop.kind == StopKind::pickup ? 1 : -1;
    }
    plan.stops.push_back(stop);
    plan.load_profile.push_back(load);
    plan.order.push_back(best_seq.u[loc]);
  }
  for (std::size_t i : best_combo) plan.selected.push_back(valid[i].id);
  std::sort(plan.selected.begin(), plan.selected.end());
  plan.total_cost = best_seq.cost;
  return plan;
}

}  // namespace oath
