#include <doctest.h>

#include <random>
#include <set>

#include "oath/auction.hpp"

using namespace oath;

namespace {

ScoreMatrix matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<RobotId> r;
  std::vector<int> k;
  for (std::size_t i = 0; i < rows.size(); ++i) r.push_back(static_cast<RobotId>(i));
  for (std::size_t j = 0; j < rows[0].size(); ++j) k.push_back(static_cast<int>(j));
  ScoreMatrix m(r, k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.score(i, j) = rows[i][j];
  return m;
}

Robot robot(RobotId id, std::vector<double> cap, int capacity = 3) {
  Robot r;
  r.id = id;
  r.capability = std::move(cap);
  r.capacity = capacity;
  return r;
}

Task task(TaskId id, int type, double priority = 1.0) {
  Task t;
  t.id = id;
  t.type = type;
  t.priority = priority;
  return t;
}

Cluster cluster(int id, std::vector<TaskId> ids, std::vector<double> counts, double theta) {
  Cluster c;
  c.id = id;
  c.task_ids = std::move(ids);
  c.type_counts = counts;
  double total = 0;
  for (double& v : counts) total += v + theta;
  for (double v : c.type_counts) c.psi.push_back((v + theta) / total);
  return c;
}

ClusterDistance constant(double d) {
  return [d](const Robot&, const Cluster&) { return d; };
}

}  // namespace

TEST_SUITE("auction") {

TEST_CASE("specialization") {
  std::vector<double> psi{2.1 / 2.2, 0.1 / 2.2};
  std::vector<double> zeta{1, 0};
  CHECK(specialization(psi, zeta) == doctest::Approx(0.9545).epsilon(1e-3));
  std::vector<double> half{0.5, 0.5};
  CHECK(specialization(half, half) == doctest::Approx(0.5));
  std::vector<double> smoothed{0.1 / 2.2, 2.1 / 2.2};
  CHECK(specialization(smoothed, zeta) > 0.0);
  std::vector<double> three{1, 1, 1};
  CHECK_THROWS_AS(specialization(half, three), std::invalid_argument);
  std::vector<double> raw{2, 6};
  CHECK(normalize_l1(raw) == std::vector<double>{0.25, 0.75});
}

TEST_CASE("score is distance over gamma over weight") {
  std::vector<Robot> robots{robot(0, {1, 1})};
  std::vector<Task> tasks{task(0, 0), task(1, 1)};
  std::vector<Cluster> clusters{cluster(0, {0, 1}, {1, 1}, 0.0)};
  auto sm = score(robots, clusters, tasks, constant(4.0));
  CHECK(sm.gamma[0] == doctest::Approx(0.5));
  CHECK(sm.score(0, 0) == doctest::Approx(8.0));

  tasks[1].priority = 2.0;
  sm = score(robots, clusters, tasks, constant(4.0));
  CHECK(sm.score(0, 0) == doctest::Approx(4.0));

  sm = score(robots, clusters, tasks, constant(kInf));
  CHECK(sm.score(0, 0) == kInf);

  sm = score(robots, clusters, tasks, constant(4.0), {false});
  CHECK(sm.score(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("incompatible or full robots score infinity") {
  std::vector<Robot> robots{robot(0, {1, 0}), robot(1, {1, 1}, 0)};
  std::vector<Task> tasks{task(0, 1), task(1, 1)};
  std::vector<Cluster> clusters{cluster(0, {0, 1}, {0, 2}, 0.1)};
  const auto sm = score(robots, clusters, tasks, constant(1.0));
  CHECK(sm.score(0, 0) == kInf);
  CHECK(sm.score(1, 0) == kInf);
  CHECK(sm.gamma[0] > 0.0);
}

TEST_CASE("hand traces") {
  SUBCASE("single robot") {
    const auto a = auction(matrix({{3}}));
    CHECK(a.cluster_of == std::vector<int>{0});
    CHECK(a.unmatched.empty());
  }
  SUBCASE("no conflict") {
    const auto a = auction(matrix({{1, 5}, {2, 9}}));
    CHECK(a.cluster_of == std::vector<int>{0, 1});
  }
  SUBCASE("displacement") {
    const auto a = auction(matrix({{1, 5}, {0.5, 9}}));
    CHECK(a.cluster_of == std::vector<int>{1, 0});
    CHECK(a.passes >= 2);
  }
  SUBCASE("unreachable never wins") {
    const auto a = auction(matrix({{kInf, kInf}, {1, 2}}));
    CHECK(a.cluster_of == std::vector<int>{-1, 0});
    CHECK(a.unmatched == std::vector<RobotId>{0});
  }
  SUBCASE("more robots than clusters") {
    const auto a = auction(matrix({{1}, {2}, {0.5}}));
    CHECK(a.cluster_of == std::vector<int>{-1, -1, 0});
  }
  SUBCASE("ties go to the lower column and the earlier bidder") {
    const auto a = auction(matrix({{2, 2}, {2, 2}}));
    CHECK(a.cluster_of == std::vector<int>{0, 1});
  }
}

TEST_CASE("random matrices: conflict free, stable, scale invariant") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nr = 1 + rng() % 5;
    const std::size_t nk = 1 + rng() % 6;
    std::vector<std::vector<double>> rows(nr, std::vector<double>(nk));
    for (auto& row : rows)
      for (double& v : row) v = rng() % 7 == 0 ? kInf : u(rng);
    const auto a = auction(matrix(rows));
    std::set<int> used;
    for (int c : a.cluster_of) {
      if (c >= 0) CHECK(used.insert(c).second);
    }
    for (std::size_t r = 0; r < nr; ++r) {
      if (a.cluster_of[r] >= 0) continue;
      for (std::size_t k = 0; k < nk; ++k) {
        if (rows[r][k] == kInf) continue;
        // an unassigned robot cannot beat the current holder anywhere
        bool held = false;
        for (std::size_t o = 0; o < nr; ++o) {
          if (a.cluster_of[o] == static_cast<int>(k)) {
            held = true;
            CHECK(rows[o][k] <= rows[r][k]);
          }
        }
        CHECK(held);
      }
    }
    for (double c : {0.001, 3.0, 1e4}) {
      auto scaled = rows;
      for (auto& row : scaled)
        for (double& v : row) v *= c;
      CHECK(auction(matrix(scaled)).cluster_of == a.cluster_of);
    }
  }
}

}
