#include "xsbfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xsbfem/error.hpp"

namespace xsbfem {

QuadMesh QuadMesh::structured(double x0, double y0, double width, double height, int nx, int ny) {
  if (nx < 1 || ny < 1 || !(width > 0.0) || !(height > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "structured mesh needs positive size and element counts");
  }
  QuadMesh m;
  m.nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      m.nodes.emplace_back(x0 + width * i / nx, y0 + height * j / ny);
    }
  }
  m.quads.reserve(static_cast<std::size_t>(nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = j * (nx + 1) + i;
      m.quads.push_back({a, a + 1, a + nx + 2, a + nx + 1});
    }
  }
  return m;
}

void QuadMesh::validate() const {
  const int nn = static_cast<int>(nodes.size());
  for (std::size_t e = 0; e < quads.size(); ++e) {
    for (int v : quads[e]) {
      if (v < 0 || v >= nn) throw Error(ErrorKind::Geometry, "element refers to a missing node");
    }
    const auto x = corners(e);
    for (double s : {-1.0, 1.0}) {
      for (double t : {-1.0, 1.0}) {
        if (!(bilinear(x, s, t).det_j > 0.0)) {
          std::ostringstream msg;
          msg << "element " << e << " is degenerate or clockwise";
          throw Error(ErrorKind::Geometry, msg.str());
        }
      }
    }
  }
}

std::array<Point, 4> QuadMesh::corners(std::size_t e) const {
  const Quad& q = quads.at(e);
  return {nodes[q[0]], nodes[q[1]], nodes[q[2]], nodes[q[3]]};
}

Point QuadMesh::centroid(std::size_t e) const {
  const auto x = corners(e);
  return 0.25 * (x[0] + x[1] + x[2] + x[3]);
}

double QuadMesh::element_size(std::size_t e) const {
  const auto x = corners(e);
  return std::max((x[2] - x[0]).norm(), (x[3] - x[1]).norm());
}

double QuadMesh::diameter() const {
  if (nodes.empty()) return 0.0;
  Point lo = nodes.front();
  Point hi = nodes.front();
  for (const Point& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

std::vector<std::vector<int>> QuadMesh::node_elements() const {
  std::vector<std::vector<int>> out(nodes.size());
  for (std::size_t e = 0; e < quads.size(); ++e) {
    for (int v : quads[e]) out[v].push_back(static_cast<int>(e));
  }
  return out;
}

BilinearValues bilinear(const std::array<Point, 4>& x, double s, double t) {
  static constexpr double ss[4] = {-1.0, 1.0, 1.0, -1.0};
  static constexpr double ts[4] = {-1.0, -1.0, 1.0, 1.0};
  BilinearValues v;
  Eigen::Matrix<double, 2, 4> dn;
  for (int a = 0; a < 4; ++a) {
    v.n[a] = 0.25 * (1.0 + ss[a] * s) * (1.0 + ts[a] * t);
    dn(0, a) = 0.25 * ss[a] * (1.0 + ts[a] * t);
    dn(1, a) = 0.25 * ts[a] * (1.0 + ss[a] * s);
  }
  Eigen::Matrix2d j = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 4; ++a) {
    j(0, 0) += dn(0, a) * x[a].x();
    j(0, 1) += dn(0, a) * x[a].y();
    j(1, 0) += dn(1, a) * x[a].x();
    j(1, 1) += dn(1, a) * x[a].y();
  }
  v.det_j = j.determinant();
  v.dn_dx = j.inverse() * dn;
  return v;
}

Eigen::Vector2d inverse_bilinear(const std::array<Point, 4>& x, const Point& p) {
  Eigen::Vector2d st = Eigen::Vector2d::Zero();
  const double scale = std::max((x[2] - x[0]).norm(), (x[3] - x[1]).norm());
  for (int it = 0; it < 50; ++it) {
    const BilinearValues v = bilinear(x, st[0], st[1]);
    Point cur = Point::Zero();
    for (int a = 0; a < 4; ++a) cur += v.n[a] * x[a];
    const Point r = p - cur;
    if (r.norm() <= 1e-14 * scale) break;
    Eigen::Matrix2d jt;
    const double s = st[0];
    const double t = st[1];
    const Point xs = 0.25 * ((x[1] - x[0]) * (1 - t) + (x[2] - x[3]) * (1 + t));
    const Point xt = 0.25 * ((x[3] - x[0]) * (1 - s) + (x[2] - x[1]) * (1 + s));
    jt << xs.x(), xt.x(), xs.y(), xt.y();
    st += jt.inverse() * r;
  }
  return st;
}

bool quad_contains(const std::array<Point, 4>& x, const Point& p, double tol) {
  for (int a = 0; a < 4; ++a) {
    const Point& u = x[a];
    const Point& w = x[(a + 1) % 4];
    const double len = (w - u).norm();
    if (orientation(u, w, p) < -tol * len) return false;
  }
  return true;
}

}  // namespace xsbfem
