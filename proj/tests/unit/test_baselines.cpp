#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "../support/oracles.hpp"
#include "oath/baselines.hpp"

using namespace oath;

namespace {

Task pd(TaskId id, NodeId o, NodeId d, int type = 0) {
  Task t;
  t.id = id;
  t.pickup = o;
  t.delivery = d;
  t.type = type;
  return t;
}

Robot bot(RobotId id, NodeId node, int capacity = 3, std::vector<double> cap = {1, 1}) {
  Robot r;
  r.id = id;
  r.node = node;
  r.capacity = capacity;
  r.capability = std::move(cap);
  return r;
}

CostFunction euclid(std::vector<Point> pts) {
  return [pts](NodeId a, NodeId b) { return distance(pts[a], pts[b]); };
}

// Path cost of serving tasks one after another, written out independently.
double serial_cost(NodeId start, const std::vector<const Task*>& seq, const CostFunction& c) {
  double total = 0;
  NodeId at = start;
  for (const Task* t : seq) {
    total += c(at, t->pickup) + c(t->pickup, t->delivery);
    at = t->delivery;
  }
  return total;
}

double best_marginal(NodeId start, std::vector<const Task*> seq, const Task& t, const CostFunction& c) {
  const double base = serial_cost(start, seq, c);
  double best = kInf;
  for (std::size_t k = 0; k <= seq.size(); ++k) {
    auto s = seq;
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(k), &t);
    best = std::min(best, serial_cost(start, s, c) - base);
  }
  return best;
}

Task at(TaskId id, Point p) {
  Task t;
  t.id = id;
  t.pickup_pos = p;
  return t;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("cbba: single robot follows greedy insertion") {
  std::vector<Point> pts{{0, 0}, {5, 0}, {6, 0}, {1, 0}, {2, 0}};
  std::vector<Task> tasks{pd(0, 1, 2), pd(1, 3, 4)};
  std::vector<Robot> robots{bot(0, 0)};
  const auto res = cbba_allocate(tasks, robots, euclid(pts));
  REQUIRE(res.bundles.size() == 1);
  // task 1 is cheaper to add first (2 vs 6), then task 0 after it
  CHECK(res.bundles[0].bundle == std::vector<TaskId>{1, 0});
  CHECK(res.bundles[0].path == std::vector<TaskId>{1, 0});
  CHECK(res.bundles[0].bids[0] == doctest::Approx(-2.0));
  CHECK(res.bundles[0].bids[1] == doctest::Approx(-4.0));
  CHECK(res.converged);
}

TEST_CASE("cbba: closer robot wins a single task") {
  std::vector<Point> pts{{0, 0}, {9, 0}, {8, 0}, {7, 0}};
  std::vector<Task> tasks{pd(0, 2, 3)};
  std::vector<Robot> robots{bot(0, 0), bot(1, 1)};
  const auto res = cbba_allocate(tasks, robots, euclid(pts));
  CHECK(res.bundles[0].bundle.empty());
  CHECK(res.bundles[1].bundle == std::vector<TaskId>{0});
}

TEST_CASE("cbba: capability and capacity bound bundles") {
  std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};
  std::vector<Task> tasks{pd(0, 1, 2, 1), pd(1, 3, 4), pd(2, 2, 3)};
  std::vector<Robot> robots{bot(0, 0, 1, {1, 0})};
  const auto res = cbba_allocate(tasks, robots, euclid(pts));
  CHECK(res.bundles[0].bundle.size() == 1);
  CHECK(std::count(res.bundles[0].bundle.begin(), res.bundles[0].bundle.end(), 0) == 0);
}

TEST_CASE("cbba: random teams reach a conflict-free fixed point") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 3 + 16; ++i) pts.push_back({u(rng), u(rng)});
    const auto cost = euclid(pts);
    std::vector<Robot> robots{bot(0, 0, 3), bot(1, 1, 2), bot(2, 2, 3)};
    std::vector<Task> tasks;
    for (int j = 0; j < 8; ++j) tasks.push_back(pd(j, 3 + 2 * j, 4 + 2 * j));
    const auto res = cbba_allocate(tasks, robots, cost);
    CHECK(res.converged);

    std::map<TaskId, std::pair<std::size_t, double>> winner;
    for (std::size_t i = 0; i < res.bundles.size(); ++i) {
      const auto& b = res.bundles[i];
      CHECK(b.bundle.size() <= static_cast<std::size_t>(robots[i].capacity));
      for (std::size_t n = 0; n < b.path.size(); ++n) {
        CHECK(winner.count(b.path[n]) == 0);
        winner[b.path[n]] = {i, b.bids[n]};
      }
    }
    // Nobody with room left could outbid a current winner.
    for (std::size_t i = 0; i < robots.size(); ++i) {
      const auto& b = res.bundles[i];
      if (b.bundle.size() >= static_cast<std::size_t>(robots[i].capacity)) continue;
      std::vector<const Task*> seq;
      for (TaskId id : b.path) seq.push_back(&tasks[static_cast<std::size_t>(id)]);
      for (const auto& t : tasks) {
        if (std::count(b.bundle.begin(), b.bundle.end(), t.id)) continue;
        double bid = -best_marginal(robots[i].node, seq, t, cost);
        if (!b.bundle.empty()) {
          const TaskId last = b.bundle.back();
          for (std::size_t n = 0; n < b.path.size(); ++n)
            if (b.path[n] == last) bid = std::min(bid, b.bids[n]);
        }
        REQUIRE(winner.count(t.id));
        const auto [wi, wy] = winner[t.id];
        CHECK((bid < wy + 1e-9 || (std::abs(bid - wy) <= 1e-9 && wi < i)));
      }
    }
    const auto again = cbba_allocate(tasks, robots, cost);
    for (std::size_t i = 0; i < robots.size(); ++i) CHECK(again.bundles[i].path == res.bundles[i].path);
  }
}

TEST_CASE("k-means: singletons and blobs") {
  std::vector<Task> tasks{at(0, {1, 1}), at(1, {9, 9}), at(2, {1.2, 1}), at(3, {9, 8.8}), at(4, {0.9, 1.1})};
  CHECK(kmeans_labels(tasks, 5, 1) == std::vector<int>{0, 1, 2, 3, 4});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) CHECK(kmeans_labels(tasks, 2, seed) == std::vector<int>{0, 1, 0, 1, 0});
  const auto c = kmeans_cluster(tasks, 2, 1, 2, 0.1);
  REQUIRE(c.size() == 2);
  CHECK(c[0].task_ids == std::vector<TaskId>{0, 2, 4});
  CHECK(kmeans_labels(tasks, 1, 1) == std::vector<int>{0, 0, 0, 0, 0});
}

TEST_CASE("k-means: duplicates do not leave empty clusters") {
  std::vector<Task> tasks{at(0, {1, 1}), at(1, {1, 1}), at(2, {1, 1}), at(3, {5, 5})};
  const auto labels = kmeans_labels(tasks, 3, 2);
  std::set<int> used(labels.begin(), labels.end());
  CHECK(used.size() == 3);
}

TEST_CASE("nearest-neighbour routing") {
  SUBCASE("single task matches the exact route") {
    std::vector<Point> pts{{0, 0}, {2, 0}, {2, 3}};
    RoutingInstance inst;
    inst.start = 0;
    inst.capability = {1};
    inst.capacity = 1;
    inst.candidates = {pd(0, 1, 2)};
    inst.cost = euclid(pts);
    const auto nn = nn_route(inst);
    const auto ex = select_and_route(inst);
    CHECK(nn.total_cost == doctest::Approx(ex.total_cost));
    CHECK(nn.stops.size() == 2);
  }
  SUBCASE("all equal costs") {
    RoutingInstance inst;
    inst.start = 0;
    inst.capability = {1};
    inst.capacity = 3;
    inst.candidates = {pd(0, 1, 2), pd(1, 3, 4), pd(2, 5, 6)};
    inst.cost = [](NodeId a, NodeId b) { return a == b ? 0.0 : 1.0; };
    const auto nn = nn_route(inst);
    CHECK(nn.total_cost == 6.0);
    CHECK(nn.stops[0].task == 0);
  }
  SUBCASE("greedy can lose to the exact route, never beat it") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 10);
    bool found_worse = false;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Point> pts;
      for (int i = 0; i < 7; ++i) pts.push_back({u(rng), u(rng)});
      RoutingInstance inst;
      inst.start = 0;
      inst.capability = {1};
      inst.capacity = 3;
      inst.candidates = {pd(0, 1, 2), pd(1, 3, 4), pd(2, 5, 6)};
      inst.cost = euclid(pts);
      const auto nn = nn_route(inst);
      const auto ex = select_and_route(inst);
      REQUIRE(nn.selected.size() == 3);
      CHECK(nn.total_cost >= ex.total_cost - 1e-9);
      found_worse = found_worse || nn.total_cost > ex.total_cost + 1e-9;
    }
    CHECK(found_worse);
  }
  SUBCASE("capacity and capability") {
    std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}};
    RoutingInstance inst;
    inst.start = 0;
    inst.capability = {1, 0};
    inst.capacity = 2;
    inst.carried = {{50, 5}};
    inst.candidates = {pd(0, 1, 2), pd(1, 3, 4), pd(2, 1, 4, 1)};
    inst.cost = euclid(pts);
    const auto nn = nn_route(inst);
    CHECK(nn.selected.size() == 1);
    CHECK(nn.excluded.size() == 1);
    int load = 1;
    for (std::size_t i = 0; i < nn.stops.size(); ++i) {
      load += nn.stops[i].kind == StopKind::pickup ? 1 : -1;
      CHECK(load <= 2);
      CHECK(nn.load_profile[i] == load);
    }
    CHECK(load == 0);
  }
}

}
