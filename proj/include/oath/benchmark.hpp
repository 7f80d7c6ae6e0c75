#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "oath/allocator.hpp"
#include "oath/scenario.hpp"

namespace oath {

inline constexpr std::string_view kBenchSchema = "oath.bench/1";

struct BenchSuite {
  std::vector<AllocatorKind> allocators{AllocatorKind::oath};
  std::vector<std::size_t> tasks{25};
  std::vector<std::size_t> robots{4};
  std::vector<int> capacities{3};
  std::vector<std::uint64_t> seeds{1};
  std::size_t n_candidates = 1000;
  std::size_t steps_cap = 5000;
  bool hidden_obstacles = true;
};

BenchSuite bench_suite_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchSuite& s);

struct BenchRow {
  std::string kind;  // run, mean, stdev, sensitivity
  AllocatorKind allocator = AllocatorKind::oath;
  std::string p, r, q, seed;  // text so aggregate rows can mark the swept axis
  double t_alloc = 0.0;
  double s_total = 0.0;
  double t_total = 0.0;
  double success = 0.0;
};

// (T_max - T_min) / dx over complexity level -> time. Throws
// std::domain_error for fewer than two levels or a zero span.
double sensitivity(const std::map<double, double>& times);

// One row per run, a mean row per cell (plus stdev with two or more runs),
// and sensitivity rows per allocator
// for every axis with more than one level. A failed run is flagged in its row
// and the suite carries on.
std::vector<BenchRow> run_benchmark(const BenchSuite& suite,
                                    const std::function<void(const BenchRow&)>& on_run = {});

std::string bench_csv_header();
std::string to_csv(const BenchRow& row);
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace oath
