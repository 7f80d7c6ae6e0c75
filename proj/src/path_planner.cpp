#include "oath/path_planner.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace oath {

bool SequencingSpec::avoided(NodeId v) const { return std::binary_search(avoid.begin(), avoid.end(), v); }

int SequencingSpec::advance(NodeId v, int p) const {
  if (p < static_cast<int>(goals.size()) && goals[static_cast<std::size_t>(p)] == v) return p + 1;
  return p;
}

SequencingSpec build_spec(std::vector<NodeId> goals, std::span<const NodeId> others) {
  SequencingSpec spec;
  for (NodeId g : goals) {
    if (spec.goals.empty() || spec.goals.back() != g) spec.goals.push_back(g);
  }
  std::vector<NodeId> own = spec.goals;
  std::sort(own.begin(), own.end());
  for (NodeId v : others) {
    if (std::binary_search(own.begin(), own.end(), v)) {
      spec.conflicts.push_back(v);
    } else {
      spec.avoid.push_back(v);
    }
  }
  for (auto* list : {&spec.avoid, &spec.conflicts}) {
    std::sort(list->begin(), list->end());
    list->erase(std::unique(list->begin(), list->end()), list->end());
  }
  return spec;
}

SequencingSpec build_spec(const RoutePlan& plan, std::span<const NodeId> others) {
  std::vector<NodeId> goals;
  for (const auto& s : plan.stops) goals.push_back(s.node);
  return build_spec(std::move(goals), others);
}

PlanResult product_dijkstra(const Roadmap& roadmap, const SequencingSpec& spec, ProductState start) {
  PlanResult out;
  const int L = static_cast<int>(spec.length());
  if (!roadmap.valid(start.node)) return out;
  const std::size_t n = roadmap.node_count();
  auto index = [&](ProductState s) { return static_cast<std::size_t>(s.progress) * n + s.node; };
  std::vector<double> dist(n * static_cast<std::size_t>(L + 1), kInf);
  std::vector<std::size_t> pred(dist.size(), SIZE_MAX);

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[index(start)] = 0.0;
  pq.emplace(0.0, index(start));
  std::size_t best = index(start);
  while (!pq.empty()) {
    const auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    const ProductState s{static_cast<NodeId>(i % n), static_cast<int>(i / n)};
    if (s.progress > static_cast<int>(best / n)) best = i;
    if (s.progress == L) break;
    for (const auto& e : roadmap.neighbors(s.node)) {
      if (spec.avoided(e.to)) continue;
      const std::size_t j = index({e.to, spec.advance(e.to, s.progress)});
      if (d + e.weight < dist[j]) {
        dist[j] = d + e.weight;
        pred[j] = i;
        pq.emplace(dist[j], j);
      }
    }
  }

  std::vector<std::size_t> chain;
  for (std::size_t i = best; i != SIZE_MAX; i = pred[i]) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());
  for (std::size_t i : chain) {
    out.path.push_back(static_cast<NodeId>(i % n));
    out.progress.push_back(static_cast<int>(i / n));
  }
  out.goals_reached = static_cast<int>(best / n);
  out.reachable = out.goals_reached == L;
  out.cost = dist[best];
  return out;
}

DStarLitePlanner::DStarLitePlanner(const Roadmap& roadmap, SequencingSpec spec, NodeId start)
    : roadmap_(&roadmap), spec_(std::move(spec)) {
  if (!roadmap.valid(start)) throw std::domain_error("DStarLitePlanner: start is not a roadmap node");
  for (NodeId g : spec_.goals) {
    if (!roadmap.valid(g)) throw std::domain_error("DStarLitePlanner: goal is not a roadmap node");
  }
  start_ = {start, spec_.advance(start, 0)};
  last_ = start_;
  const int L = static_cast<int>(spec_.length());
  goal_ = L == 0 ? start_ : ProductState{spec_.goals.back(), L};
  stats_.product_bound = roadmap.alive_count() * (spec_.length() + 1);
  rhs_[pack(goal_)] = 0.0;
  open_keys_[pack(goal_)] = key(goal_);
  open_.emplace(key(goal_).first, key(goal_).second, pack(goal_));
}

double DStarLitePlanner::heuristic(ProductState from, ProductState to) const {
  const Roadmap& rm = *roadmap_;
  if (to.progress <= from.progress) return distance(rm.position(from.node), rm.position(to.node));
  const auto goal = [&](int i) { return rm.position(spec_.goals[static_cast<std::size_t>(i - 1)]); };
  double h = distance(rm.position(from.node), goal(from.progress + 1));
  for (int i = from.progress + 1; i < to.progress; ++i) h += distance(goal(i), goal(i + 1));
  return h + distance(goal(to.progress), rm.position(to.node));
}

double DStarLitePlanner::g(ProductState s) const {
  auto it = g_.find(pack(s));
  return it == g_.end() ? kInf : it->second;
}

double DStarLitePlanner::rhs(ProductState s) const {
  auto it = rhs_.find(pack(s));
  return it == rhs_.end() ? kInf : it->second;
}

DStarLitePlanner::Key DStarLitePlanner::key(ProductState s) const {
  const double m = std::min(g(s), rhs(s));
  return {m + heuristic(start_, s) + km_, m};
}

bool DStarLitePlanner::is_goal(ProductState s) const { return s == goal_; }

bool DStarLitePlanner::valid_state(ProductState s) const {
  if (!roadmap_->valid(s.node)) return false;
  if (s.progress == static_cast<int>(spec_.length())) return is_goal(s);
  return true;
}

template <class F>
void DStarLitePlanner::for_each_successor(ProductState s, F&& f) const {
  if (is_goal(s) || s.progress >= static_cast<int>(spec_.length())) return;
  for (const auto& e : roadmap_->neighbors(s.node)) {
    if (spec_.avoided(e.to)) continue;
    f(ProductState{e.to, spec_.advance(e.to, s.progress)}, e.weight);
  }
}

template <class F>
void DStarLitePlanner::for_each_predecessor(ProductState s, F&& f) const {
  const NodeId w = s.node;
  if (spec_.avoided(w)) return;
  const int q = s.progress;
  const int L = static_cast<int>(spec_.length());
  for (const auto& e : roadmap_->neighbors(w)) {
    if (q < L && spec_.goals[static_cast<std::size_t>(q)] != w) f(ProductState{e.to, q}, e.weight);
    if (q >= 1 && spec_.goals[static_cast<std::size_t>(q - 1)] == w) f(ProductState{e.to, q - 1}, e.weight);
  }
}

double DStarLitePlanner::best_successor_value(ProductState s) const {
  double best = kInf;
  for_each_successor(s, [&](ProductState t, double c) { best = std::min(best, c + g(t)); });
  return best;
}

void DStarLitePlanner::update_vertex(ProductState s) {
  const StateKey k = pack(s);
  if (!is_goal(s)) {
    const double v = valid_state(s) ? best_successor_value(s) : kInf;
    if (v == kInf) {
      rhs_.erase(k);
    } else {
      rhs_[k] = v;
    }
  }
  if (auto it = open_keys_.find(k); it != open_keys_.end()) {
    open_.erase({it->second.first, it->second.second, k});
    open_keys_.erase(it);
  }
  if (g(s) != rhs(s)) {
    const Key nk = key(s);
    open_keys_[k] = nk;
    open_.emplace(nk.first, nk.second, k);
  }
}

void DStarLitePlanner::compute_shortest_path() {
  while (!open_.empty()) {
    const auto [k1, k2, sk] = *open_.begin();
    const Key top{k1, k2};
    if (!(top < key(start_)) && rhs(start_) == g(start_)) break;
    const ProductState u = unpack(sk);
    ++stats_.expansions;
    const Key fresh = key(u);
    if (top < fresh) {
      open_.erase(open_.begin());
      open_keys_[sk] = fresh;
      open_.emplace(fresh.first, fresh.second, sk);
      continue;
    }
    open_.erase(open_.begin());
    open_keys_.erase(sk);
    if (g(u) > rhs(u)) {
      g_[sk] = rhs(u);
      for_each_predecessor(u, [&](ProductState p, double) { update_vertex(p); });
    } else {
      g_.erase(sk);
      for_each_predecessor(u, [&](ProductState p, double) { update_vertex(p); });
      update_vertex(u);
    }
  }
  stats_.states_touched = std::max(stats_.states_touched, g_.size() + open_keys_.size());
}

PlanResult DStarLitePlanner::extract() {
  if (g(start_) == kInf) return product_dijkstra(*roadmap_, spec_, start_);
  PlanResult out;
  out.reachable = true;
  out.cost = 0.0;
  ProductState s = start_;
  out.path.push_back(s.node);
  out.progress.push_back(s.progress);
  const std::size_t limit = roadmap_->node_count() * (spec_.length() + 1) + 1;
  while (!is_goal(s)) {
    ProductState best{kNoNode, 0};
    double best_v = kInf;
    double best_c = 0.0;
    for_each_successor(s, [&](ProductState t, double c) {
      const double v = c + g(t);
      if (v < best_v || (v == best_v && v < kInf && t.node < best.node)) {
        best = t;
        best_v = v;
        best_c = c;
      }
    });
    if (best_v == kInf || out.path.size() > limit) {
      return product_dijkstra(*roadmap_, spec_, start_);
    }
    s = best;
    out.cost += best_c;
    out.path.push_back(s.node);
    out.progress.push_back(s.progress);
  }
  out.goals_reached = static_cast<int>(spec_.length());
  return out;
}

PlanResult DStarLitePlanner::plan() {
  compute_shortest_path();
  return extract();
}

void DStarLitePlanner::move_to(NodeId node) {
  start_ = {node, spec_.advance(node, start_.progress)};
}

PlanResult DStarLitePlanner::notify_changes(std::span<const EdgeKey> changed) {
  if (!changed.empty()) {
    ++stats_.replans;
    km_ += heuristic(last_, start_);
    last_ = start_;
    const int L = static_cast<int>(spec_.length());
    for (const auto& [a, b] : changed) {
      for (int p = 0; p <= L; ++p) {
        update_vertex({a, p});
        update_vertex({b, p});
      }
    }
  }
  return plan();
}

}  // namespace oath
