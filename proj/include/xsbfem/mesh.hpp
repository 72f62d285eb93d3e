#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "xsbfem/geometry.hpp"

namespace xsbfem {

using Quad = std::array<int, 4>;  // counter-clockwise corner nodes

/// Bilinear quadrilateral mesh.
struct QuadMesh {
  std::vector<Point> nodes;
  std::vector<Quad> quads;

  /// nx by ny elements on [x0, x0 + width] x [y0, y0 + height]. Node (i, j)
  /// has index j (nx + 1) + i; element (i, j) has index j nx + i.
  static QuadMesh structured(double x0, double y0, double width, double height, int nx, int ny);

  /// Throws Error(Geometry) for bad indices or non-positive Jacobians.
  void validate() const;

  std::array<Point, 4> corners(std::size_t e) const;
  Point centroid(std::size_t e) const;
  /// Longest diagonal of element e.
  double element_size(std::size_t e) const;
  /// Diagonal of the bounding box.
  double diameter() const;

  /// Elements attached to each node.
  std::vector<std::vector<int>> node_elements() const;
};

struct BilinearValues {
  Eigen::Vector4d n;
  Eigen::Matrix<double, 2, 4> dn_dx;  // physical derivatives
  double det_j = 0.0;
};

/// Bilinear shape functions and physical gradients at parent point (s, t).
BilinearValues bilinear(const std::array<Point, 4>& x, double s, double t);

/// Parent coordinates of physical point p (Newton iteration).
Eigen::Vector2d inverse_bilinear(const std::array<Point, 4>& x, const Point& p);

/// True when p lies in the closed quadrilateral (tolerance `tol` in length units).
bool quad_contains(const std::array<Point, 4>& x, const Point& p, double tol);

}  // namespace xsbfem
