#include "xsbfem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "xsbfem/error.hpp"

namespace xsbfem {

double wrap_angle(double angle) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

std::optional<SegmentHit> intersect_segments(const Point& p0, const Point& p1, const Point& q0,
                                             const Point& q1, double tol) {
  const Point r = p1 - p0;
  const Point s = q1 - q0;
  const double denom = cross(r, s);
  const double rl = r.norm();
  const double sl = s.norm();
  if (rl == 0.0 || sl == 0.0) return std::nullopt;
  if (std::abs(denom) <= 1e-14 * rl * sl) return std::nullopt;  // parallel or collinear
  const Point qp = q0 - p0;
  double t = cross(qp, s) / denom;
  double u = cross(qp, r) / denom;
  const double tt = tol / rl;
  const double tu = tol / sl;
  if (t < -tt || t > 1.0 + tt || u < -tu || u > 1.0 + tu) return std::nullopt;
  t = std::clamp(t, 0.0, 1.0);
  u = std::clamp(u, 0.0, 1.0);
  return SegmentHit{t, u, p0 + t * r};
}

std::pair<double, double> distance_to_segment(const Point& x, const Point& a, const Point& b) {
  const Point d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (x - a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return {(x - (a + t * d)).norm(), t};
}

Polyline::Polyline(std::vector<Point> vertices) : vertices_(std::move(vertices)) {}

double Polyline::length() const noexcept {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) total += (vertices_[i] - vertices_[i - 1]).norm();
  return total;
}

double Polyline::signed_distance(const Point& x) const {
  if (vertices_.size() < 2) throw Error(ErrorKind::Geometry, "polyline needs two vertices");
  double best = std::numeric_limits<double>::infinity();
  double sign = 1.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[i + 1];
    const auto [dist, t] = distance_to_segment(x, a, b);
    if (dist < best - 1e-15) {
      best = dist;
      Point normal(-(b - a).y(), (b - a).x());
      if (t >= 1.0 && i + 2 < vertices_.size()) {
        const Point c = vertices_[i + 2];
        normal = normal.normalized() + Point(-(c - b).y(), (c - b).x()).normalized();
      } else if (t <= 0.0 && i > 0) {
        const Point z = vertices_[i - 1];
        normal = normal.normalized() + Point(-(a - z).y(), (a - z).x()).normalized();
      }
      const Point closest = a + t * (b - a);
      sign = (x - closest).dot(normal) >= 0.0 ? 1.0 : -1.0;
    }
  }
  return sign * best;
}

std::vector<SegmentHit> Polyline::crossings(const Point& a, const Point& b, double tol) const {
  std::vector<SegmentHit> hits;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (auto hit = intersect_segments(a, b, vertices_[i], vertices_[i + 1], tol)) hits.push_back(*hit);
  }
  std::sort(hits.begin(), hits.end(), [](const SegmentHit& l, const SegmentHit& r) { return l.t < r.t; });
  // Crossings through a shared vertex are reported by both segments.
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [tol](const SegmentHit& l, const SegmentHit& r) {
                           return (l.point - r.point).norm() <= tol;
                         }),
             hits.end());
  return hits;
}

bool Polyline::self_intersects(double tol) const {
  const std::size_t ns = segment_count();
  for (std::size_t i = 0; i + 1 < ns; ++i) {
    // Adjacent segments fold back when the turn is a reversal.
    const Point d0 = vertices_[i + 1] - vertices_[i];
    const Point d1 = vertices_[i + 2] - vertices_[i + 1];
    if (std::abs(cross(d0, d1)) <= 1e-12 * d0.norm() * d1.norm() && d0.dot(d1) < 0.0) return true;
    for (std::size_t j = i + 2; j < ns; ++j) {
      if (intersect_segments(vertices_[i], vertices_[i + 1], vertices_[j], vertices_[j + 1], tol)) {
        return true;
      }
    }
  }
  return false;
}

CrackGeometry::CrackGeometry(std::vector<Point> vertices) : Polyline(std::move(vertices)) {
  if (vertices_.size() < 2) throw Error(ErrorKind::Geometry, "crack needs at least two vertices");
  double diameter = 0.0;
  for (const Point& v : vertices_) diameter = std::max(diameter, (v - vertices_.front()).norm());
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if ((vertices_[i] - vertices_[i - 1]).norm() <= 1e-12 * diameter) {
      throw Error(ErrorKind::Geometry, "crack has repeated consecutive vertices");
    }
  }
  if (self_intersects(1e-12 * diameter)) throw Error(ErrorKind::Geometry, "crack polyline self-intersects");
}

Point CrackGeometry::tip_direction() const {
  return (vertices_.back() - vertices_[vertices_.size() - 2]).normalized();
}

double CrackGeometry::tip_angle() const {
  const Point d = tip_direction();
  return std::atan2(d.y(), d.x());
}

void CrackGeometry::extend_to(const Point& new_tip) {
  std::vector<Point> extended = vertices_;
  extended.push_back(new_tip);
  *this = CrackGeometry(std::move(extended));
}

}  // namespace xsbfem
