#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "oath/audit.hpp"
#include "oath/benchmark.hpp"
#include "oath/halton.hpp"
#include "oath/io.hpp"
#include "oath/scenario.hpp"
#include "oath/service.hpp"
#include "oath/simulation.hpp"

namespace fs = std::filesystem;
using namespace oath;

namespace {

struct Common {
  std::string allocator;
  std::int64_t seed = -1;
  std::int64_t steps_cap = -1;
  std::string out = "out";
};

SimConfig config_from(const Common& c) {
  SimConfig cfg;
  if (!c.allocator.empty()) cfg.allocator = allocator_from_string(c.allocator);
  if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
  if (c.steps_cap >= 0) cfg.steps_cap = static_cast<std::size_t>(c.steps_cap);
  return cfg;
}

std::string path_in(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

int cmd_run(const std::string& file, const Common& c) {
  const Scenario sc = load_scenario(file);
  Simulation sim(sc, config_from(c));
  const Metrics& m = sim.run();
  const AuditReport rep = audit(sim);

  write_file(path_in(c.out, "trace.jsonl"), to_jsonl(sim.trace()));
  BenchRow row;
  row.kind = "run";
  row.allocator = sim.allocator();
  row.p = std::to_string(sc.tasks.size());
  row.r = std::to_string(sc.robots.size());
  row.q = sc.robots.empty() ? "0" : std::to_string(sc.robots.front().capacity);
  row.seed = std::to_string(c.seed >= 0 ? static_cast<std::uint64_t>(c.seed) : sc.seed);
  row.t_alloc = m.t_alloc;
  row.s_total = static_cast<double>(m.s_total);
  row.t_total = m.t_total;
  row.success = m.success ? 1.0 : 0.0;
  write_file(path_in(c.out, "metrics.csv"), bench_csv_header() + "\n" + to_csv(row) + "\n");

  std::cout << "allocator " << to_string(sim.allocator()) << "  outcome " << m.outcome << "  delivered " << m.delivered
            << "/" << m.tasks << "  S_total " << m.s_total << "  steps " << m.steps << "  rounds " << m.rounds << "\n";
  if (!rep.ok()) {
    for (const auto& v : rep.violations) std::cerr << "audit: " << v << "\n";
    return 2;
  }
  return m.success ? 0 : 1;
}

int cmd_bench(const std::string& file, const Common& c) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  BenchSuite suite = bench_suite_from_json(nlohmann::json::parse(in));
  if (!c.allocator.empty()) suite.allocators = {allocator_from_string(c.allocator)};
  if (c.seed >= 0) suite.seeds = {static_cast<std::uint64_t>(c.seed)};
  if (c.steps_cap >= 0) suite.steps_cap = static_cast<std::size_t>(c.steps_cap);
  const auto rows = run_benchmark(suite, [](const BenchRow& r) { std::cerr << to_csv(r) << "\n"; });
  write_file(path_in(c.out, "bench.csv"), bench_csv_header() + "\n" + to_csv(rows));
  std::cout << "wrote " << rows.size() << " rows to " << path_in(c.out, "bench.csv") << "\n";
  return 0;
}

int cmd_map(const std::string& file, const Common& c) {
  Scenario sc = load_scenario(file);
  if (c.seed >= 0) sc.sampling.seed = static_cast<std::uint64_t>(c.seed);
  const Workspace ws = sc.workspace();
  const auto samples = sample_map(ws, sc.sampling);
  const Roadmap rm = Roadmap::build(samples, ws);
  write_file(path_in(c.out, "samples.csv"), samples_csv(samples));
  write_file(path_in(c.out, "nodes.csv"), nodes_csv(rm));
  write_file(path_in(c.out, "edges.csv"), edges_csv(rm));
  std::cout << "candidates " << samples.size() << "  nodes " << rm.alive_count() << "  edges " << rm.edge_count()
            << "  largest component " << rm.largest_component_fraction() << "\n";
  return 0;
}

int cmd_translate(const std::string& text) {
  const Translation t = translate(text);
  if (!t.instruction) {
    std::cerr << t.error << "\n";
    return 1;
  }
  std::cout << to_json(*t.instruction).dump(2) << "\n";
  return 0;
}

Service* g_service = nullptr;

int cmd_serve(const std::string& file, const Common& c, int port, int pace_ms, bool paused) {
  const Scenario sc = load_scenario(file);
  LiveSession session(sc, config_from(c), pace_ms, paused);
  Service service(session);
  const int bound = service.bind("0.0.0.0", port);
  if (bound < 0) throw std::runtime_error("cannot bind port " + std::to_string(port));
  session.start();
  g_service = &service;
  std::signal(SIGINT, [](int) {
    if (g_service) g_service->stop();
  });
  std::cout << "serving on http://0.0.0.0:" << bound << "/api/v1/snapshot" << std::endl;
  service.listen();
  g_service = nullptr;
  session.stop();
  write_file(path_in(c.out, "trace.jsonl"), session.trace_jsonl());
  return 0;
}

int cmd_maze(const MazeOptions& opt, const std::string& out) {
  save_scenario(make_maze_scenario(opt), out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--allocator", c.allocator, "oath, cbba, kan or kam");
  app->add_option("--seed", c.seed, "overrides the scenario seed");
  app->add_option("--steps-cap", c.steps_cap, "step limit");
  app->add_option("--out", c.out, "output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot pickup and delivery planner"};
  app.require_subcommand(1);
  Common common;
  std::string file;

  auto* run = app.add_subcommand("run", "simulate one scenario");
  run->add_option("scenario", file, "scenario JSON")->required()->check(CLI::ExistingFile);
  add_common(run, common);

  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("suite", file, "suite JSON")->required()->check(CLI::ExistingFile);
  add_common(bench, common);

  int port = 8080;
  int pace_ms = 100;
  bool paused = false;
  auto* serve = app.add_subcommand("serve", "live session over HTTP");
  serve->add_option("scenario", file, "scenario JSON")->required()->check(CLI::ExistingFile);
  add_common(serve, common);
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--pace-ms", pace_ms, "delay between steps")->capture_default_str();
  serve->add_flag("--paused", paused, "start paused");

  auto* map = app.add_subcommand("map", "emit the roadmap only");
  map->add_option("scenario", file, "scenario JSON")->required()->check(CLI::ExistingFile);
  add_common(map, common);

  std::string text;
  auto* tr = app.add_subcommand("translate", "free text to an instruction");
  tr->add_option("text", text)->required();

  MazeOptions maze;
  std::string maze_out = "maze.json";
  auto* mz = app.add_subcommand("maze", "write a generated maze scenario");
  mz->add_option("--tasks", maze.tasks)->capture_default_str();
  mz->add_option("--robots", maze.robots)->capture_default_str();
  mz->add_option("--capacity", maze.capacity)->capture_default_str();
  mz->add_option("--seed", maze.seed)->capture_default_str();
  mz->add_option("--candidates", maze.n_candidates)->capture_default_str();
  mz->add_flag("!--no-hidden", maze.hidden_obstacles, "make every obstacle known");
  mz->add_option("--out", maze_out)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(file, common);
    if (*bench) return cmd_bench(file, common);
    if (*serve) return cmd_serve(file, common, port, pace_ms, paused);
    if (*map) return cmd_map(file, common);
    if (*tr) return cmd_translate(text);
    if (*mz) return cmd_maze(maze, maze_out);
  } catch (const SchemaError& e) {
    for (const auto& issue : e.issues()) std::cerr << "error: " << issue << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
