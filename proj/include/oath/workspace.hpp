#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oath/geometry.hpp"

namespace oath {

enum class ObstacleKind { wall, gate, bush };

std::string_view to_string(ObstacleKind kind);
ObstacleKind obstacle_kind_from_string(std::string_view name);

struct Obstacle {
  std::string id;
  std::vector<Point> polygon;
  ObstacleKind kind = ObstacleKind::wall;
  bool known_at_start = true;
};

// Bounded rectangular world [0, width] x [0, height] with polygonal obstacles.
// Obstacles not known at start stay hidden from planner queries
// (visible_only = true) until discover() is called for them.
class Workspace {
 public:
  Workspace() = default;
  Workspace(double width, double height, std::vector<Obstacle> obstacles = {});

  double width() const { return width_; }
  double height() const { return height_; }
  bool in_bounds(Point p) const;

  std::span<const Obstacle> obstacles() const { return obstacles_; }
  bool is_visible(std::size_t index) const { return visible_[index]; }
  std::optional<std::size_t> find(std::string_view id) const;

  // Distance to the nearest considered obstacle boundary or to the world
  // boundary, whichever is smaller. Zero inside an obstacle.
  double clearance(Point p, bool visible_only) const;

  bool segment_blocked(Point a, Point b, bool visible_only) const;
  bool inside_obstacle(Point p, bool visible_only) const;

  // Hidden obstacles within `radius` of p.
  std::vector<std::size_t> undiscovered_within(Point p, double radius) const;
  // Hidden obstacles intersecting segment ab.
  std::vector<std::size_t> undiscovered_blocking(Point a, Point b) const;

  void discover(std::size_t index) { visible_[index] = true; }
  std::size_t add_known_obstacle(Obstacle obstacle);

 private:
  void validate_obstacle(const Obstacle& obstacle) const;

  double width_ = 0.0;
  double height_ = 0.0;
  std::vector<Obstacle> obstacles_;
  std::vector<bool> visible_;
};

}  // namespace oath
