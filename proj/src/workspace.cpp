#include "oath/workspace.hpp"

#include <cmath>
#include <stdexcept>

namespace oath {

std::string_view to_string(ObstacleKind kind) {
  switch (kind) {
    case ObstacleKind::wall: return "wall";
    case ObstacleKind::gate: return "gate";
    case ObstacleKind::bush: return "bush";
  }
  return "wall";
}

ObstacleKind obstacle_kind_from_string(std::string_view name) {
  if (name == "wall") return ObstacleKind::wall;
  if (name == "gate") return ObstacleKind::gate;
  if (name == "bush") return ObstacleKind::bush;
  throw std::invalid_argument("unknown obstacle kind '" + std::string(name) + "'");
}

Workspace::Workspace(double width, double height, std::vector<Obstacle> obstacles)
    : width_(width), height_(height) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument("workspace dimensions must be positive");
  }
  for (auto& obstacle : obstacles) add_known_obstacle(std::move(obstacle));
}

bool Workspace::in_bounds(Point p) const {
  return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_;
}

std::optional<std::size_t> Workspace::find(std::string_view id) const {
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    if (obstacles_[i].id == id) return i;
  }
  return std::nullopt;
}

void Workspace::validate_obstacle(const Obstacle& obstacle) const {
  if (obstacle.polygon.size() < 3) {
    throw std::invalid_argument("obstacle '" + obstacle.id + "' needs at least 3 vertices");
  }
  for (const Point& v : obstacle.polygon) {
    if (!in_bounds(v)) {
      throw std::invalid_argument("obstacle '" + obstacle.id + "' has a vertex out of bounds");
    }
  }
  if (!is_simple_polygon(obstacle.polygon)) {
    throw std::invalid_argument("obstacle '" + obstacle.id + "' is not a simple polygon");
  }
}

std::size_t Workspace::add_known_obstacle(Obstacle obstacle) {
  validate_obstacle(obstacle);
  const bool visible = obstacle.known_at_start;
  obstacles_.push_back(std::move(obstacle));
  visible_.push_back(visible);
  return obstacles_.size() - 1;
}

double Workspace::clearance(Point p, bool visible_only) const {
  if (!in_bounds(p)) throw std::domain_error("clearance query outside workspace bounds");
  double best = std::min({p.x, width_ - p.x, p.y, height_ - p.y});
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    if (visible_only && !visible_[i]) continue;
    best = std::min(best, point_polygon_distance(p, obstacles_[i].polygon));
    if (best == 0.0) break;
  }
  return best;
}

bool Workspace::segment_blocked(Point a, Point b, bool visible_only) const {
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    if (visible_only && !visible_[i]) continue;
    if (segment_intersects_polygon(a, b, obstacles_[i].polygon)) return true;
  }
  return false;
}

bool Workspace::inside_obstacle(Point p, bool visible_only) const {
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    if (visible_only && !visible_[i]) continue;
    if (point_in_polygon(p, obstacles_[i].polygon)) return true;
  }
  return false;
}

std::vector<std::size_t> Workspace::undiscovered_within(Point p, double radius) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    if (visible_[i]) continue;
    if (point_polygon_distance(p, obstacles_[i].polygon) <= radius) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Workspace::undiscovered_blocking(Point a, Point b) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    if (visible_[i]) continue;
    if (segment_intersects_polygon(a, b, obstacles_[i].polygon)) out.push_back(i);
  }
  return out;
}

}  // namespace oath
