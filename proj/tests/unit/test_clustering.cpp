#include <doctest.h>

#include "oath/clustering.hpp"

using namespace oath;

namespace {

Task task_at(TaskId id, Point p, int type = 0, NodeId node = kNoNode) {
  Task t;
  t.id = id;
  t.pickup_pos = p;
  t.pickup = node;
  t.type = type;
  return t;
}

}  // namespace

TEST_SUITE("clustering") {

TEST_CASE("cluster count") {
  CHECK(choose_k(3, 10) == 3);
  CHECK(choose_k(100, 10) == 15);
  CHECK(choose_k(5, 4) == 5);
  CHECK(choose_k(25, 4) == 6);
  CHECK(choose_k(0, 4) == 0);
  CHECK_THROWS_AS(choose_k(5, 0), std::invalid_argument);
}

TEST_CASE("type composition with smoothing") {
  std::vector<double> even{2, 2};
  auto psi = cluster_stats(even, 0.0);
  CHECK(psi[0] == doctest::Approx(0.5));
  CHECK(psi[1] == doctest::Approx(0.5));
  std::vector<double> skew{3, 0};
  psi = cluster_stats(skew, 0.1);
  CHECK(psi[0] == doctest::Approx(0.96875));
  CHECK(psi[1] == doctest::Approx(0.03125));
  std::vector<double> none{0, 0};
  CHECK_THROWS_AS(cluster_stats(none, 0.0), std::invalid_argument);
}

TEST_CASE("k equal to n gives singletons") {
  std::vector<std::vector<double>> d{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
  CHECK(average_linkage(d, 3) == std::vector<int>{0, 1, 2});
  CHECK(average_linkage(d, 1) == std::vector<int>{0, 0, 0});
  CHECK_THROWS_AS(average_linkage(d, 4), std::invalid_argument);
}

TEST_CASE("wall-separated tasks stay apart") {
  // A,B left of a wall and C,D right; B and C are close in a straight line
  // but the walkable distance between the sides is long.
  std::vector<std::vector<double>> d{
      {0, 1, 11, 12},
      {1, 0, 10, 11},
      {11, 10, 0, 1},
      {12, 11, 1, 0},
  };
  CHECK(average_linkage(d, 2) == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("average linkage uses the group mean") {
  // After {0,1} merge, 2 is 4 from 0 and 10 from 1 (mean 7) while 3 is
  // 6 from both (mean 6): 3 joins first under average linkage.
  std::vector<std::vector<double>> d{
      {0, 1, 4, 6},
      {1, 0, 10, 6},
      {4, 10, 0, 20},
      {6, 6, 20, 0},
  };
  CHECK(average_linkage(d, 2) == std::vector<int>{0, 0, 1, 0});
}

TEST_CASE("ties merge the lowest index pair") {
  std::vector<std::vector<double>> d{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  CHECK(average_linkage(d, 2) == std::vector<int>{0, 0, 1});
}

TEST_CASE("unreachable items become singletons") {
  std::vector<std::vector<double>> d{{0, 1, kInf}, {1, 0, kInf}, {kInf, kInf, 0}};
  CHECK(average_linkage(d, 1) == std::vector<int>{0, 0, 1});
  std::vector<std::vector<double>> split{{0, 1, kInf, kInf}, {1, 0, kInf, kInf}, {kInf, kInf, 0, 2}, {kInf, kInf, 2, 0}};
  CHECK(average_linkage(split, 1) == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("cluster records") {
  std::vector<Task> tasks{task_at(4, {0, 0}, 0), task_at(2, {2, 0}, 1), task_at(9, {10, 10}, 1)};
  const auto c = make_clusters(tasks, {0, 0, 1}, 2, 0.1);
  REQUIRE(c.size() == 2);
  CHECK(c[0].task_ids == std::vector<TaskId>{2, 4});
  CHECK(c[0].center == Point{1, 0});
  CHECK(c[0].type_counts == std::vector<double>{1, 1});
  CHECK(c[1].psi[1] == doctest::Approx(1.1 / 1.2));
  CHECK_THROWS_AS(make_clusters(std::vector<Task>{task_at(1, {0, 0}, 5)}, {0}, 2, 0.1), std::invalid_argument);
}

TEST_CASE("clustering from a distance matrix ignores input order") {
  std::vector<NodeId> locs{10, 11, 12, 13};
  DistanceMatrix m(locs);
  const double v[4][4] = {{0, 1, 11, 12}, {1, 0, 10, 11}, {11, 10, 0, 1}, {12, 11, 1, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = v[i][j];
  std::vector<Task> tasks{task_at(3, {3, 0}, 0, 13), task_at(0, {0, 0}, 0, 10), task_at(2, {2, 0}, 0, 12),
                          task_at(1, {1, 0}, 0, 11)};
  const auto c = cluster_tasks(tasks, m, 2, 2, 0.1);
  REQUIRE(c.size() == 2);
  CHECK(c[0].task_ids == std::vector<TaskId>{0, 1});
  CHECK(c[1].task_ids == std::vector<TaskId>{2, 3});
  std::vector<Task> missing{task_at(7, {0, 0}, 0, 99), task_at(8, {0, 0}, 0, 10)};
  CHECK_THROWS_AS(cluster_tasks(missing, m, 1, 2, 0.1), std::invalid_argument);
}

}
