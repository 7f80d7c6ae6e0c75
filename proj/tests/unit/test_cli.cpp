#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, const fs::path& log) {
  const char* cli = std::getenv("OATH_CLI");
  const int rc = std::system(("\"" + std::string(cli) + "\" " + args + " > \"" + log.string() + "\" 2>&1").c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("maze, run, map, translate") {
  if (!std::getenv("OATH_CLI")) {
    MESSAGE("OATH_CLI not set, skipping");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "oath_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path log = dir / "log.txt";
  const fs::path scen = dir / "maze.json";

  REQUIRE(run("maze --tasks 8 --robots 2 --seed 3 --candidates 600 --out " + scen.string(), log) == 0);
  const auto j = nlohmann::json::parse(slurp(scen));
  CHECK(j["schema"] == "oath.scenario/1");
  CHECK(j["tasks"].size() == 8);

  CHECK(run("run " + scen.string() + " --out " + (dir / "run").string(), log) == 0);
  CHECK(slurp(log).find("outcome") != std::string::npos);
  CHECK(slurp(dir / "run" / "trace.jsonl").find("\"finish\"") != std::string::npos);
  const std::string metrics = slurp(dir / "run" / "metrics.csv");
  CHECK(metrics.rfind("row,allocator,P,R,Q,seed,T_alloc,S_total,T_total,success\n", 0) == 0);

  CHECK(run("run " + scen.string() + " --allocator kan --out " + (dir / "kan").string(), log) == 0);
  CHECK(slurp(dir / "kan" / "metrics.csv").find(",kan,") != std::string::npos);

  CHECK(run("map " + scen.string() + " --out " + (dir / "map").string(), log) == 0);
  CHECK(slurp(dir / "map" / "nodes.csv").rfind("id,x,y,tag,task,label\n", 0) == 0);
  CHECK(slurp(dir / "map" / "edges.csv").rfind("a,b,weight\n", 0) == 0);
  CHECK(slurp(dir / "map" / "samples.csv").rfind("i,x,y,delta,accepted\n", 0) == 0);

  CHECK(run("translate \"Please prioritize task 4\"", log) == 0);
  CHECK(slurp(log).find("change_task_priority") != std::string::npos);
  CHECK(run("translate \"hello there\"", log) == 1);

  std::ofstream(dir / "bad.json") << R"({"schema":"oath.scenario/1","robots":[{"id":0},{"id":0}]})";
  CHECK(run("run " + (dir / "bad.json").string() + " --out " + (dir / "bad").string(), log) == 1);
  CHECK(slurp(log).find("error:") != std::string::npos);
  fs::remove_all(dir);
}

}
