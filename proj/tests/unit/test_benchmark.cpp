#include <doctest.h>

#include <sstream>

#include "oath/benchmark.hpp"

using namespace oath;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

BenchSuite small() {
  BenchSuite s;
  s.tasks = {6};
  s.robots = {2};
  s.capacities = {2};
  s.seeds = {1};
  s.n_candidates = 500;
  return s;
}

}  // namespace

TEST_SUITE("benchmark") {

TEST_CASE("sensitivity index") {
  CHECK(sensitivity({{10, 1.0}, {110, 2.0}}) == doctest::Approx(0.01));
  CHECK(sensitivity({{10, 3.0}, {20, 3.0}, {30, 3.0}}) == 0.0);
  CHECK(sensitivity({{10, 5.0}, {20, 1.0}, {40, 3.0}}) == doctest::Approx(4.0 / 30.0));
  CHECK_THROWS_AS(sensitivity({{10, 1.0}}), std::domain_error);
}

TEST_CASE("suite schema") {
  const json j = json::parse(R"({"schema":"oath.bench/1","allocators":["oath","kam"],"tasks":[10,20],
    "robots":[4],"capacities":[3],"seeds":[1,2,3],"n_candidates":800})");
  const BenchSuite s = bench_suite_from_json(j);
  CHECK(s.allocators == std::vector<AllocatorKind>{AllocatorKind::oath, AllocatorKind::kam});
  CHECK(s.tasks == std::vector<std::size_t>{10, 20});
  CHECK(s.seeds.size() == 3);
  CHECK(s.n_candidates == 800);
  CHECK(bench_suite_from_json(to_json(s)).tasks == s.tasks);

  try {
    bench_suite_from_json(json::parse(R"({"allocators":["nope"],"tasks":[],"robots":[0]})"));
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.issues().size() >= 4);
  }
}

TEST_CASE("one cell, one run: a data row and a mean row") {
  std::size_t callbacks = 0;
  const auto rows = run_benchmark(small(), [&](const BenchRow&) { ++callbacks; });
  REQUIRE(rows.size() == 2);
  CHECK(callbacks == 1);
  CHECK(rows[0].kind == "run");
  CHECK(rows[1].kind == "mean");
  CHECK(rows[0].p == "6");
  CHECK(rows[0].seed == "1");
  CHECK(rows[0].success == 1.0);
  CHECK(rows[1].s_total == rows[0].s_total);
}

TEST_CASE("csv layout") {
  CHECK(bench_csv_header() == "row,allocator,P,R,Q,seed,T_alloc,S_total,T_total,success");
  BenchSuite s = small();
  s.tasks = {4, 8};
  s.seeds = {1, 2};
  const auto rows = run_benchmark(s);
  // 4 runs, per cell mean + stdev (2 cells), one sensitivity row for P
  CHECK(std::count_if(rows.begin(), rows.end(), [](auto& r) { return r.kind == "run"; }) == 4);
  CHECK(std::count_if(rows.begin(), rows.end(), [](auto& r) { return r.kind == "mean"; }) == 2);
  CHECK(std::count_if(rows.begin(), rows.end(), [](auto& r) { return r.kind == "stdev"; }) == 2);
  const auto sens = std::find_if(rows.begin(), rows.end(), [](auto& r) { return r.kind == "sensitivity"; });
  REQUIRE(sens != rows.end());
  CHECK(sens->p == "*");
  std::stringstream csv(to_csv(rows));
  for (std::string line; std::getline(csv, line);) CHECK(split(line).size() == 10);
}

TEST_CASE("reruns match except wall-clock columns") {
  BenchSuite s = small();
  s.allocators = {AllocatorKind::oath, AllocatorKind::cbba};
  const auto a = run_benchmark(s);
  const auto b = run_benchmark(s);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto fa = split(to_csv(a[i]));
    auto fb = split(to_csv(b[i]));
    fa[6] = fb[6] = fa[8] = fb[8] = "";
    CHECK(fa == fb);
  }
}

TEST_CASE("a failing run is flagged and the suite carries on") {
  BenchSuite s = small();
  s.steps_cap = 3;
  s.seeds = {1, 2};
  const auto rows = run_benchmark(s);
  CHECK(rows.size() == 4);
  CHECK(rows[0].success == 0.0);
  CHECK(rows[1].success == 0.0);
}

}
