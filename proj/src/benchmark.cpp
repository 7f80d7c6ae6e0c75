#include "oath/benchmark.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "oath/simulation.hpp"

namespace oath {

using nlohmann::json;

BenchSuite bench_suite_from_json(const json& j) {
  std::vector<std::string> issues;
  BenchSuite s;
  if (!j.is_object()) throw SchemaError({"bench: expected an object"});
  if (!j.contains("schema") || j["schema"] != kBenchSchema) issues.push_back("schema: expected \"" + std::string(kBenchSchema) + "\"");
  auto read = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception&) {
      issues.push_back(std::string(key) + ": wrong type");
    }
  };
  std::vector<std::string> names;
  read("allocators", names);
  if (!names.empty()) {
    s.allocators.clear();
    for (const auto& n : names) {
      try {
        s.allocators.push_back(allocator_from_string(n));
      } catch (const std::invalid_argument& e) {
        issues.push_back(std::string("allocators: ") + e.what());
      }
    }
  }
  read("tasks", s.tasks);
  read("robots", s.robots);
  read("capacities", s.capacities);
  read("seeds", s.seeds);
  read("n_candidates", s.n_candidates);
  read("steps_cap", s.steps_cap);
  read("hidden_obstacles", s.hidden_obstacles);
  if (s.allocators.empty()) issues.push_back("allocators: must not be empty");
  if (s.tasks.empty()) issues.push_back("tasks: must not be empty");
  if (s.robots.empty()) issues.push_back("robots: must not be empty");
  if (s.capacities.empty()) issues.push_back("capacities: must not be empty");
  if (s.seeds.empty()) issues.push_back("seeds: must not be empty");
  for (auto r : s.robots) {
    if (r == 0) issues.push_back("robots: counts must be positive");
  }
  for (auto q : s.capacities) {
    if (q < 1) issues.push_back("capacities: values must be at least 1");
  }
  if (!issues.empty()) throw SchemaError(issues);
  return s;
}

json to_json(const BenchSuite& s) {
  std::vector<std::string> names;
  for (auto a : s.allocators) names.emplace_back(to_string(a));
  return {{"schema", kBenchSchema},     {"allocators", names},         {"tasks", s.tasks},
          {"robots", s.robots},         {"capacities", s.capacities},  {"seeds", s.seeds},
          {"n_candidates", s.n_candidates}, {"steps_cap", s.steps_cap}, {"hidden_obstacles", s.hidden_obstacles}};
}

double sensitivity(const std::map<double, double>& times) {
  if (times.size() < 2) throw std::domain_error("sensitivity: needs at least two complexity levels");
  const double dx = times.rbegin()->first - times.begin()->first;
  if (dx == 0.0) throw std::domain_error("sensitivity: zero complexity span");
  double lo = times.begin()->second;
  double hi = lo;
  for (const auto& [x, t] : times) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return (hi - lo) / dx;
}

namespace {

struct CellKey {
  AllocatorKind a;
  std::size_t p, r;
  int q;
  auto operator<=>(const CellKey&) const = default;
};

struct Acc {
  std::vector<double> t_alloc, s_total, t_total, success;
};

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stdev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchSuite& suite, const std::function<void(const BenchRow&)>& on_run) {
  std::vector<BenchRow> rows;
  std::map<CellKey, Acc> cells;
  for (AllocatorKind a : suite.allocators) {
    for (std::size_t p : suite.tasks) {
      for (std::size_t r : suite.robots) {
        for (int q : suite.capacities) {
          for (std::uint64_t seed : suite.seeds) {
            BenchRow row;
            row.kind = "run";
            row.allocator = a;
            row.p = std::to_string(p);
            row.r = std::to_string(r);
            row.q = std::to_string(q);
            row.seed = std::to_string(seed);
            try {
              MazeOptions opt;
              opt.tasks = p;
              opt.robots = r;
              opt.capacity = q;
              opt.seed = seed;
              opt.n_candidates = suite.n_candidates;
              opt.hidden_obstacles = suite.hidden_obstacles;
              Scenario sc = make_maze_scenario(opt);
              sc.steps_cap = suite.steps_cap;
              SimConfig cfg;
              cfg.allocator = a;
              cfg.record_trace = false;
              const RunResult res = run_scenario(sc, cfg);
              row.t_alloc = res.metrics.t_alloc;
              row.s_total = static_cast<double>(res.metrics.s_total);
              row.t_total = res.metrics.t_total;
              row.success = res.metrics.success ? 1.0 : 0.0;
            } catch (const std::exception&) {
              row.success = 0.0;
            }
            Acc& acc = cells[{a, p, r, q}];
            acc.t_alloc.push_back(row.t_alloc);
            acc.s_total.push_back(row.s_total);
            acc.t_total.push_back(row.t_total);
            acc.success.push_back(row.success);
            if (on_run) on_run(row);
            rows.push_back(row);
          }
        }
      }
    }
  }

  for (const auto& [key, acc] : cells) {
    for (const char* kind : {"mean", "stdev"}) {
      const bool m = std::string(kind) == "mean";
      if (!m && acc.s_total.size() < 2) continue;
      BenchRow row;
      row.kind = kind;
      row.allocator = key.a;
      row.p = std::to_string(key.p);
      row.r = std::to_string(key.r);
      row.q = std::to_string(key.q);
      row.t_alloc = m ? mean(acc.t_alloc) : stdev(acc.t_alloc);
      row.s_total = m ? mean(acc.s_total) : stdev(acc.s_total);
      row.t_total = m ? mean(acc.t_total) : stdev(acc.t_total);
      row.success = m ? mean(acc.success) : stdev(acc.success);
      rows.push_back(row);
    }
  }

  // Sensitivity along each swept axis, other axes at their first level.
  for (AllocatorKind a : suite.allocators) {
    auto add = [&](const char* axis, const std::vector<std::pair<double, CellKey>>& levels) {
      if (levels.size() < 2) return;
      std::map<double, double> ta, st, tt;
      for (const auto& [x, key] : levels) {
        const Acc& acc = cells.at(key);
        ta[x] = mean(acc.t_alloc);
        st[x] = mean(acc.s_total);
        tt[x] = mean(acc.t_total);
      }
      if (ta.size() < 2) return;
      BenchRow row;
      row.kind = "sensitivity";
      row.allocator = a;
      row.p = std::string(axis) == "P" ? "*" : std::to_string(suite.tasks.front());
      row.r = std::string(axis) == "R" ? "*" : std::to_string(suite.robots.front());
      row.q = std::string(axis) == "Q" ? "*" : std::to_string(suite.capacities.front());
      row.t_alloc = sensitivity(ta);
      row.s_total = sensitivity(st);
      row.t_total = sensitivity(tt);
      row.success = 1.0;
      rows.push_back(row);
    };
    std::vector<std::pair<double, CellKey>> lp, lr, lq;
    for (auto p : suite.tasks) lp.push_back({static_cast<double>(p), {a, p, suite.robots.front(), suite.capacities.front()}});
    for (auto r : suite.robots) lr.push_back({static_cast<double>(r), {a, suite.tasks.front(), r, suite.capacities.front()}});
    for (auto q : suite.capacities) lq.push_back({static_cast<double>(q), {a, suite.tasks.front(), suite.robots.front(), q}});
    add("P", lp);
    add("R", lr);
    add("Q", lq);
  }
  return rows;
}

std::string bench_csv_header() { return "row,allocator,P,R,Q,seed,T_alloc,S_total,T_total,success"; }

std::string to_csv(const BenchRow& row) {
  std::ostringstream os;
  os << std::setprecision(10) << row.kind << ',' << to_string(row.allocator) << ',' << row.p << ',' << row.r << ','
     << row.q << ',' << row.seed << ',' << row.t_alloc << ',' << row.s_total << ',' << row.t_total << ',' << row.success;
  return os.str();
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = bench_csv_header() + "\n";
  for (const auto& r : rows) out += to_csv(r) + "\n";
  return out;
}

}  // namespace oath
