#include "oath/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace oath {

namespace {

std::string num(double v) {
  if (v == kInf) return "inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::string samples_csv(const std::vector<SamplePoint>& samples) {
  std::string out = "i,x,y,delta,accepted\n";
  for (const auto& s : samples) {
    out += std::to_string(s.index) + ',' + num(s.position.x) + ',' + num(s.position.y) + ',' + num(s.clearance) + ',' +
           (s.accepted ? "1" : "0") + '\n';
  }
  return out;
}

std::string nodes_csv(const Roadmap& roadmap) {
  std::string out = "id,x,y,tag,task,label\n";
  for (NodeId v = 0; v < roadmap.node_count(); ++v) {
    if (!roadmap.valid(v)) continue;
    const auto& n = roadmap.node(v);
    out += std::to_string(v) + ',' + num(n.position.x) + ',' + num(n.position.y) + ',' + std::string(to_string(n.tag)) +
           ',' + std::to_string(n.task) + ',' + n.label + '\n';
  }
  return out;
}

std::string edges_csv(const Roadmap& roadmap) {
  std::string out = "a,b,weight\n";
  for (const auto& [a, b] : roadmap.edges()) {
    out += std::to_string(a) + ',' + std::to_string(b) + ',' + num(*roadmap.edge_weight(a, b)) + '\n';
  }
  return out;
}

std::string matrix_csv(const DistanceMatrix& m) {
  std::string out = "site";
  for (NodeId v : m.locations()) out += ',' + std::to_string(v);
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += std::to_string(m.locations()[i]);
    for (std::size_t j = 0; j < m.size(); ++j) out += ',' + num(m(i, j));
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace oath
