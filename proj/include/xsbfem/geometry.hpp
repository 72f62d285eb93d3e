#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

namespace xsbfem {

using Point = Eigen::Vector2d;

inline double cross(const Point& a, const Point& b) noexcept { return a.x() * b.y() - a.y() * b.x(); }

/// Twice the signed area of (a, b, c); positive for a counter-clockwise turn.
inline double orientation(const Point& a, const Point& b, const Point& c) noexcept {
  return cross(b - a, c - a);
}

/// Wrap an angle into (-pi, pi].
double wrap_angle(double angle) noexcept;

struct SegmentHit {
  double t;  // parameter along the first segment, in [0, 1]
  double u;  // parameter along the second segment, in [0, 1]
  Point point;
};

/// Proper or touching intersection of segments [p0, p1] and [q0, q1].
/// Collinear overlaps are not reported. `tol` is an absolute length.
std::optional<SegmentHit> intersect_segments(const Point& p0, const Point& p1, const Point& q0,
                                             const Point& q1, double tol);

/// Distance from x to segment [a, b] and the parameter of the closest point.
std::pair<double, double> distance_to_segment(const Point& x, const Point& a, const Point& b);

/// Open polyline used for both cracks and material interfaces.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Point> vertices);

  std::span<const Point> vertices() const noexcept { return vertices_; }
  std::size_t segment_count() const noexcept { return vertices_.empty() ? 0 : vertices_.size() - 1; }
  double length() const noexcept;

  /// Signed distance: positive on the left of the travel direction.
  /// Points closest to an interior vertex use the bisector pseudo-normal.
  double signed_distance(const Point& x) const;

  /// Every crossing of [a, b] with the polyline, sorted along [a, b].
  std::vector<SegmentHit> crossings(const Point& a, const Point& b, double tol) const;

  /// True when any two non-adjacent segments touch, or adjacent ones fold back.
  bool self_intersects(double tol) const;

 protected:
  std::vector<Point> vertices_;
};

/// Crack surface as a polyline whose last vertex is the active tip.
class CrackGeometry : public Polyline {
 public:
  /// Throws Error(Geometry) for fewer than two vertices, repeated consecutive
  /// vertices, or self-intersection.
  explicit CrackGeometry(std::vector<Point> vertices);

  std::size_t tip_index() const noexcept { return vertices_.size() - 1; }
  const Point& tip() const noexcept { return vertices_.back(); }
  /// Unit direction of the last segment (crack extension direction).
  Point tip_direction() const;
  double tip_angle() const;

  /// Appends a new tip; validates the extended crack.
  void extend_to(const Point& new_tip);
};

}  // namespace xsbfem
