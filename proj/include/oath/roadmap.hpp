#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oath/geometry.hpp"
#include "oath/halton.hpp"
#include "oath/workspace.hpp"

namespace oath {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class NodeTag { free, pickup, delivery, robot_start };

std::string_view to_string(NodeTag tag);

struct RoadmapNode {
  Point position;
  NodeTag tag = NodeTag::free;
  int task = -1;
  std::string label;
  bool alive = true;
};

struct RoadmapEdge {
  NodeId to = kNoNode;
  double weight = 0.0;
};

using EdgeKey = std::pair<NodeId, NodeId>;  // first < second

struct Site {
  Point position;
  NodeTag tag = NodeTag::free;
  int task = -1;
  std::string label;
};

struct AttachResult {
  std::vector<NodeId> ids;       // one per site, in input order
  std::vector<NodeId> isolated;  // sites that got no edge
  std::vector<EdgeKey> added_edges;
};

struct RegionRemoval {
  std::vector<NodeId> removed_nodes;
  std::vector<EdgeKey> removed_edges;
};

struct ShortestPaths {
  NodeId source = kNoNode;
  std::vector<double> dist;
  std::vector<NodeId> pred;

  // Node sequence source..target, empty when unreachable.
  std::vector<NodeId> path_to(NodeId target) const;
};

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<NodeId> locations);

  std::size_t size() const { return locations_.size(); }
  std::span<const NodeId> locations() const { return locations_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  double& at(std::size_t i, std::size_t j) { return values_[i * size() + j]; }
  std::optional<std::size_t> index_of(NodeId node) const;

 private:
  std::vector<NodeId> locations_;
  std::vector<double> values_;
};

// Undirected navigation graph with Euclidean edge weights. Node ids are
// stable: removed nodes stay in the table with alive = false.
class Roadmap {
 public:
  static constexpr std::size_t kFallbackNeighbors = 6;
  static constexpr std::size_t kAttachNeighbors = 6;

  Roadmap() = default;

  // Delaunay triangulation of the points with every edge blocked by a visible
  // obstacle removed. Collinear input falls back to k-nearest neighbours.
  static Roadmap build(std::span<const Point> points, const Workspace& workspace);
  static Roadmap build(const std::vector<SamplePoint>& samples, const Workspace& workspace);

  NodeId add_node(Point position, NodeTag tag = NodeTag::free);
  // Adds an edge weighted by Euclidean length; no obstacle check.
  void add_edge(NodeId a, NodeId b);
  bool remove_edge(NodeId a, NodeId b);

  // Incremental insertion: each site is merged into a coincident node or
  // connected to its nearest visible neighbours with edges that do not cross
  // existing ones. Throws std::invalid_argument (and changes nothing) if any
  // site is out of bounds or inside a visible obstacle.
  AttachResult attach_sites(std::span<const Site> sites, const Workspace& workspace);

  RegionRemoval remove_region(std::span<const Point> polygon);

  ShortestPaths dijkstra_from(NodeId source) const;
  DistanceMatrix distance_matrix(std::span<const NodeId> sites) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t alive_count() const;
  std::size_t edge_count() const;
  bool valid(NodeId id) const { return id < nodes_.size() && nodes_[id].alive; }
  const RoadmapNode& node(NodeId id) const { return nodes_[id]; }
  Point position(NodeId id) const { return nodes_[id].position; }
  std::span<const RoadmapEdge> neighbors(NodeId id) const { return adjacency_[id]; }
  std::optional<double> edge_weight(NodeId a, NodeId b) const;
  std::vector<EdgeKey> edges() const;

  std::optional<NodeId> nearest_node(Point p, bool require_edges = false) const;
  // Component label per node (kNoNode for dead nodes).
  std::vector<NodeId> component_labels() const;
  double largest_component_fraction() const;

  std::uint64_t version() const { return version_; }
  bool used_fallback() const { return used_fallback_; }

 private:
  void connect_pruned(const std::vector<EdgeKey>& candidates, const Workspace& workspace);
  bool crosses_existing(Point a, Point b, NodeId skip_a, NodeId skip_b) const;

  std::vector<RoadmapNode> nodes_;
  std::vector<std::vector<RoadmapEdge>> adjacency_;
  std::uint64_t version_ = 0;
  bool used_fallback_ = false;
};

// Memoised single-source shortest paths, invalidated whenever the roadmap
// version changes.
class DistanceCache {
 public:
  explicit DistanceCache(const Roadmap& roadmap) : roadmap_(&roadmap) {}

  const ShortestPaths& from(NodeId source);
  // +inf when either node is gone.
  double distance(NodeId a, NodeId b);
  DistanceMatrix matrix(std::span<const NodeId> sites);

 private:
  const Roadmap* roadmap_;
  std::uint64_t version_ = 0;
  std::unordered_map<NodeId, ShortestPaths> cache_;
};

}  // namespace oath
