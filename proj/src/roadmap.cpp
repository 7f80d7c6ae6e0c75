#include "oath/roadmap.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <boost/polygon/voronoi.hpp>

namespace oath {

std::string_view to_string(NodeTag tag) {
  switch (tag) {
    case NodeTag::free: return "free";
    case NodeTag::pickup: return "pickup";
    case NodeTag::delivery: return "delivery";
    case NodeTag::robot_start: return "robot_start";
  }
  return "free";
}

std::vector<NodeId> ShortestPaths::path_to(NodeId target) const {
  std::vector<NodeId> path;
  if (target >= dist.size() || dist[target] == kInf) return path;
  for (NodeId v = target; v != kNoNode; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

DistanceMatrix::DistanceMatrix(std::vector<NodeId> locations)
    : locations_(std::move(locations)), values_(locations_.size() * locations_.size(), kInf) {}

std::optional<std::size_t> DistanceMatrix::index_of(NodeId node) const {
  const auto it = std::find(locations_.begin(), locations_.end(), node);
  if (it == locations_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - locations_.begin());
}

namespace {

bool all_collinear(std::span<const Point> pts) {
  if (pts.size() < 3) return true;
  const Point a = pts[0];
  std::size_t j = 1;
  while (j < pts.size() && pts[j] == a) ++j;
  if (j == pts.size()) return true;
  const Point b = pts[j];
  for (std::size_t k = j + 1; k < pts.size(); ++k) {
    if (orientation(a, b, pts[k]) != 0) return false;
  }
  return true;
}

// Delaunay edges as the dual of the Voronoi diagram of integer-snapped
// points; Boost's builder is exact for integer input.
std::vector<EdgeKey> delaunay_edges(std::span<const Point> pts, double scale) {
  using boost::polygon::point_data;
  std::vector<point_data<std::int32_t>> snapped;
  snapped.reserve(pts.size());
  for (const Point& p : pts) {
    snapped.emplace_back(static_cast<std::int32_t>(std::lround(p.x * scale)),
                         static_cast<std::int32_t>(std::lround(p.y * scale)));
  }
  boost::polygon::voronoi_diagram<double> vd;
  boost::polygon::construct_voronoi(snapped.begin(), snapped.end(), &vd);
  std::vector<EdgeKey> out;
  for (const auto& edge : vd.edges()) {
    if (!edge.is_primary()) continue;
    const auto a = static_cast<NodeId>(edge.cell()->source_index());
    const auto b = static_cast<NodeId>(edge.twin()->cell()->source_index());
    if (a < b) out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EdgeKey> knn_edges(std::span<const Point> pts, std::size_t k) {
  std::vector<EdgeKey> out;
  std::vector<NodeId> order(pts.size());
  for (NodeId i = 0; i < pts.size(); ++i) {
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      const double da = distance(pts[i], pts[a]);
      const double db = distance(pts[i], pts[b]);
      return da != db ? da < db : a < b;
    });
    std::size_t taken = 0;
    for (NodeId j : order) {
      if (j == i) continue;
      out.emplace_back(std::min(i, j), std::max(i, j));
      if (++taken == k) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Roadmap Roadmap::build(std::span<const Point> points, const Workspace& workspace) {
  Roadmap rm;
  const double extent = std::max({workspace.width(), workspace.height(), 1.0});
  const double scale = 1e8 / extent;

  // Points that snap to the same integer location are merged.
  std::map<std::pair<long, long>, NodeId> seen;
  std::vector<Point> unique;
  for (const Point& p : points) {
    const auto key = std::make_pair(std::lround(p.x * scale), std::lround(p.y * scale));
    if (seen.emplace(key, static_cast<NodeId>(unique.size())).second) unique.push_back(p);
  }
  for (const Point& p : unique) rm.add_node(p);
  if (unique.size() < 2) return rm;

  std::vector<EdgeKey> candidates;
  if (all_collinear(unique)) {
    rm.used_fallback_ = true;
    candidates = knn_edges(unique, kFallbackNeighbors);
  } else {
    candidates = delaunay_edges(unique, scale);
  }
  rm.connect_pruned(candidates, workspace);
  return rm;
}

Roadmap Roadmap::build(const std::vector<SamplePoint>& samples, const Workspace& workspace) {
  const auto pts = accepted_positions(samples);
  return build(pts, workspace);
}

void Roadmap::connect_pruned(const std::vector<EdgeKey>& candidates, const Workspace& workspace) {
  for (const auto& [a, b] : candidates) {
    if (!workspace.segment_blocked(nodes_[a].position, nodes_[b].position, true)) add_edge(a, b);
  }
}

NodeId Roadmap::add_node(Point position, NodeTag tag) {
  RoadmapNode n;
  n.position = position;
  n.tag = tag;
  nodes_.push_back(std::move(n));
  adjacency_.emplace_back();
  ++version_;
  return static_cast<NodeId>(nodes_.size() - 1);
}

void Roadmap::add_edge(NodeId a, NodeId b) {
  if (!valid(a) || !valid(b) || a == b) throw std::domain_error("add_edge: invalid endpoints");
  if (edge_weight(a, b)) return;
  const double w = distance(nodes_[a].position, nodes_[b].position);
  if (!(w > 0.0)) throw std::domain_error("add_edge: zero-length edge");
  adjacency_[a].push_back({b, w});
  adjacency_[b].push_back({a, w});
  ++version_;
}

bool Roadmap::remove_edge(NodeId a, NodeId b) {
  if (a >= nodes_.size() || b >= nodes_.size()) return false;
  auto drop = [](std::vector<RoadmapEdge>& list, NodeId to) {
    const auto it = std::find_if(list.begin(), list.end(), [&](const RoadmapEdge& e) { return e.to == to; });
    if (it == list.end()) return false;
    list.erase(it);
    return true;
  };
  const bool removed = drop(adjacency_[a], b);
  drop(adjacency_[b], a);
  if (removed) ++version_;
  return removed;
}

std::optional<double> Roadmap::edge_weight(NodeId a, NodeId b) const {
  if (a >= nodes_.size()) return std::nullopt;
  for (const auto& e : adjacency_[a]) {
    if (e.to == b) return e.weight;
  }
  return std::nullopt;
}

std::vector<EdgeKey> Roadmap::edges() const {
  std::vector<EdgeKey> out;
  for (NodeId a = 0; a < adjacency_.size(); ++a) {
    for (const auto& e : adjacency_[a]) {
      if (a < e.to) out.emplace_back(a, e.to);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Roadmap::alive_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const RoadmapNode& n) { return n.alive; }));
}

std::size_t Roadmap::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

bool Roadmap::crosses_existing(Point a, Point b, NodeId skip_a, NodeId skip_b) const {
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (const auto& e : adjacency_[u]) {
      const NodeId v = e.to;
      if (u > v) continue;
      if (u == skip_a || u == skip_b || v == skip_a || v == skip_b) continue;
      if (segments_cross_properly(a, b, nodes_[u].position, nodes_[v].position)) return true;
    }
  }
  return false;
}

AttachResult Roadmap::attach_sites(std::span<const Site> sites, const Workspace& workspace) {
  for (const Site& s : sites) {
    if (!workspace.in_bounds(s.position)) {
      throw std::invalid_argument("attach_sites: site out of bounds");
    }
    if (workspace.inside_obstacle(s.position, true)) {
      throw std::invalid_argument("attach_sites: site inside an obstacle");
    }
  }
  constexpr double kMergeTolerance = 1e-9;
  constexpr std::size_t kCandidatePool = 32;

  AttachResult result;
  for (const Site& s : sites) {
    std::vector<NodeId> order;
    for (NodeId v = 0; v < nodes_.size(); ++v) {
      if (nodes_[v].alive) order.push_back(v);
    }
    auto closer = [&](NodeId a, NodeId b) {
      const double da = distance(s.position, nodes_[a].position);
      const double db = distance(s.position, nodes_[b].position);
      return da != db ? da < db : a < b;
    };
    const std::size_t pool = std::min(order.size(), kCandidatePool);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(pool), order.end(), closer);
    order.resize(pool);

    if (!order.empty() && distance(s.position, nodes_[order.front()].position) <= kMergeTolerance) {
      RoadmapNode& n = nodes_[order.front()];
      n.tag = s.tag;
      n.task = s.task;
      if (!s.label.empty()) n.label = s.label;
      ++version_;
      result.ids.push_back(order.front());
      continue;
    }

    const NodeId id = add_node(s.position, s.tag);
    nodes_[id].task = s.task;
    nodes_[id].label = s.label;
    std::size_t connected = 0;
    for (NodeId v : order) {
      if (connected == kAttachNeighbors) break;
      const Point q = nodes_[v].position;
      if (workspace.segment_blocked(s.position, q, true)) continue;
      if (crosses_existing(s.position, q, id, v)) continue;
      add_edge(id, v);
      result.added_edges.emplace_back(std::min(id, v), std::max(id, v));
      ++connected;
    }
    if (connected == 0) result.isolated.push_back(id);
    result.ids.push_back(id);
  }
  return result;
}

RegionRemoval Roadmap::remove_region(std::span<const Point> polygon) {
  RegionRemoval out;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].alive && point_in_polygon(nodes_[v].position, polygon)) {
      out.removed_nodes.push_back(v);
    }
  }
  for (NodeId v : out.removed_nodes) {
    for (const auto& e : adjacency_[v]) out.removed_edges.emplace_back(std::min(v, e.to), std::max(v, e.to));
  }
  for (const auto& [a, b] : edges()) {
    if (segment_intersects_polygon(nodes_[a].position, nodes_[b].position, polygon)) {
      out.removed_edges.emplace_back(a, b);
    }
  }
  std::sort(out.removed_edges.begin(), out.removed_edges.end());
  out.removed_edges.erase(std::unique(out.removed_edges.begin(), out.removed_edges.end()),
                          out.removed_edges.end());
  for (const auto& [a, b] : out.removed_edges) remove_edge(a, b);
  for (NodeId v : out.removed_nodes) nodes_[v].alive = false;
  if (!out.removed_nodes.empty()) ++version_;
  return out;
}

ShortestPaths Roadmap::dijkstra_from(NodeId source) const {
  if (!valid(source)) throw std::domain_error("dijkstra_from: unknown node id");
  ShortestPaths sp;
  sp.source = source;
  sp.dist.assign(nodes_.size(), kInf);
  sp.pred.assign(nodes_.size(), kNoNode);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  sp.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > sp.dist[u]) continue;
    for (const auto& e : adjacency_[u]) {
      const double nd = d + e.weight;
      if (nd < sp.dist[e.to]) {
        sp.dist[e.to] = nd;
        sp.pred[e.to] = u;
        heap.emplace(nd, e.to);
      }
    }
  }
  return sp;
}

DistanceMatrix Roadmap::distance_matrix(std::span<const NodeId> sites) const {
  DistanceMatrix m(std::vector<NodeId>(sites.begin(), sites.end()));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const ShortestPaths sp = dijkstra_from(sites[i]);
    for (std::size_t j = 0; j < sites.size(); ++j) m.at(i, j) = sp.dist[sites[j]];
  }
  return m;
}

std::optional<NodeId> Roadmap::nearest_node(Point p, bool require_edges) const {
  std::optional<NodeId> best;
  double best_d = kInf;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (!nodes_[v].alive) continue;
    if (require_edges && adjacency_[v].empty()) continue;
    const double d = distance(p, nodes_[v].position);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

std::vector<NodeId> Roadmap::component_labels() const {
  std::vector<NodeId> label(nodes_.size(), kNoNode);
  NodeId next = 0;
  for (NodeId s = 0; s < nodes_.size(); ++s) {
    if (!nodes_[s].alive || label[s] != kNoNode) continue;
    std::vector<NodeId> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (const auto& e : adjacency_[u]) {
        if (label[e.to] == kNoNode) {
          label[e.to] = next;
          stack.push_back(e.to);
        }
      }
    }
    ++next;
  }
  return label;
}

double Roadmap::largest_component_fraction() const {
  const auto labels = component_labels();
  std::map<NodeId, std::size_t> sizes;
  std::size_t alive = 0;
  for (NodeId l : labels) {
    if (l == kNoNode) continue;
    ++sizes[l];
    ++alive;
  }
  if (alive == 0) return 0.0;
  std::size_t best = 0;
  for (const auto& [l, n] : sizes) best = std::max(best, n);
  return static_cast<double>(best) / static_cast<double>(alive);
}

const ShortestPaths& DistanceCache::from(NodeId source) {
  if (roadmap_->version() != version_) {
    cache_.clear();
    version_ = roadmap_->version();
  }
  auto it = cache_.find(source);
  if (it == cache_.end()) it = cache_.emplace(source, roadmap_->dijkstra_from(source)).first;
  return it->second;
}

double DistanceCache::distance(NodeId a, NodeId b) {
  if (!roadmap_->valid(a) || !roadmap_->valid(b)) return kInf;
  return from(a).dist[b];
}

DistanceMatrix DistanceCache::matrix(std::span<const NodeId> sites) {
  DistanceMatrix m(std::vector<NodeId>(sites.begin(), sites.end()));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = 0; j < sites.size(); ++j) m.at(i, j) = distance(sites[i], sites[j]);
  }
  return m;
}

}  // namespace oath
