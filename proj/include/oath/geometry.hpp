#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace oath {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

// Sign of the turn a -> b -> c with a relative tolerance.
inline int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({1.0, norm(b - a) * norm(c - a)});
  if (std::abs(v) <= 1e-12 * scale) return 0;
  return v > 0 ? 1 : -1;
}

inline double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

// Collinear c lies within the bounding box of [a, b].
inline bool on_segment(Point a, Point b, Point c) {
  constexpr double eps = 1e-12;
  return std::min(a.x, b.x) - eps <= c.x && c.x <= std::max(a.x, b.x) + eps &&
         std::min(a.y, b.y) - eps <= c.y && c.y <= std::max(a.y, b.y) + eps;
}

// Closed-segment intersection; touching counts.
inline bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

// Interiors cross at a single point; shared endpoints and collinear overlap
// are not crossings.
inline bool segments_cross_properly(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

// Boundary points count as inside.
inline bool point_in_polygon(Point p, std::span<const Point> poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    if (point_segment_distance(p, a, b) <= 1e-12) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

inline double point_polygon_distance(Point p, std::span<const Point> poly) {
  if (point_in_polygon(p, poly)) return 0.0;
  double best = INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

inline bool segment_intersects_polygon(Point a, Point b, std::span<const Point> poly) {
  if (point_in_polygon(a, poly) || point_in_polygon(b, poly)) return true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (segments_intersect(a, b, poly[i], poly[(i + 1) % poly.size()])) return true;
  }
  return false;
}

inline Point centroid(std::span<const Point> pts) {
  Point c;
  for (const Point& p : pts) c = c + p;
  if (!pts.empty()) c = (1.0 / static_cast<double>(pts.size())) * c;
  return c;
}

// True when no two non-adjacent edges of the closed ring intersect.
inline bool is_simple_polygon(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

}  // namespace oath
