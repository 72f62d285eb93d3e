#include "xsbfem/boundary_elements.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xsbfem/error.hpp"

namespace xsbfem {

namespace {

// Legendre P_n and P_{n-1} at x by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

void check_order(int order) {
  if (order < 1) {
    std::ostringstream msg;
    msg << "element order must be >= 1, got " << order;
    throw Error(ErrorKind::InvalidOrder, msg.str());
  }
}

}  // namespace

std::vector<double> gauss_lobatto_points(int order) {
  check_order(order);
  const int n = order;
  std::vector<double> x(n + 1);
  for (int i = 0; i <= n; ++i) {
    // Chebyshev-Lobatto initial guess; Newton on (1 - x^2) P_n'(x).
    double xi = -std::cos(std::numbers::pi * i / n);
    if (i > 0 && i < n) {
      for (int it = 0; it < 100; ++it) {
        const auto [pn, pm] = legendre_pair(n, xi);
        const double dxi = (xi * pn - pm) / ((n + 1) * pn);
        xi -= dxi;
        if (std::abs(dxi) < 1e-15) break;
      }
    }
    x[i] = xi;
  }
  return x;
}

QuadratureRule gauss_legendre(int npoints) {
  if (npoints < 1) throw Error(ErrorKind::InvalidArgument, "quadrature needs at least one point");
  QuadratureRule rule;
  rule.points.resize(npoints);
  rule.weights.resize(npoints);
  const int n = npoints;
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [pn, pm] = legendre_pair(n, x);
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [pn, pm] = legendre_pair(n, x);
    dp = n * (x * pn - pm) / (x * x - 1.0);
    rule.points[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

LobattoBasis::LobattoBasis(int order) : order_(order), nodes_(gauss_lobatto_points(order)) {
  denominators_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    double d = 1.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      if (j != i) d *= nodes_[i] - nodes_[j];
    }
    denominators_[i] = d;
  }
}

ShapeValues LobattoBasis::evaluate(double eta) const {
  const int m = order_ + 1;
  ShapeValues s{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
  for (int i = 0; i < m; ++i) {
    double value = 1.0;
    double deriv = 0.0;
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      double term = 1.0;
      for (int j = 0; j < m; ++j) {
        if (j != i && j != k) term *= eta - nodes_[j];
      }
      deriv += term;
      value *= eta - nodes_[k];
    }
    s.values[i] = value / denominators_[i];
    s.derivatives[i] = deriv / denominators_[i];
  }
  return s;
}

ShapeValues shape_functions(int order, double eta) {
  check_order(order);
  if (!(eta >= -1.0 && eta <= 1.0)) throw Error(ErrorKind::InvalidArgument, "eta outside [-1, 1]");
  return LobattoBasis(order).evaluate(eta);
}

void SpectralElement1D::validate() const {
  check_order(order);
  if (static_cast<int>(nodes.size()) != order + 1) {
    throw Error(ErrorKind::InvalidArgument, "element node count must equal order + 1");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if ((nodes[i] - nodes[j]).norm() == 0.0) {
        throw Error(ErrorKind::DegenerateElement, "element has coincident nodes");
      }
    }
  }
}

int default_quadrature_points(int order) { return (3 * order + 3 + 1) / 2 + 1; }

Eigen::MatrixXd interpolation_matrix(const Eigen::VectorXd& values) {
  const Eigen::Index m = values.size();
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(2, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    n(0, 2 * i) = values[i];
    n(1, 2 * i + 1) = values[i];
  }
  return n;
}

GeometricOperators geometric_operators(const SpectralElement1D& el, const LobattoBasis& basis, double eta) {
  const ShapeValues s = basis.evaluate(eta);
  GeometricOperators g;
  g.x = Point::Zero();
  g.dx = Point::Zero();
  for (std::size_t i = 0; i < el.nodes.size(); ++i) {
    g.x += s.values[i] * el.nodes[i];
    g.dx += s.derivatives[i] * el.nodes[i];
  }
  g.det_j = cross(g.x, g.dx);
  if (!(g.det_j > 0.0)) {
    std::ostringstream msg;
    msg << "non-positive boundary Jacobian " << g.det_j << " at eta = " << eta
        << " (element not visible from the scaling centre or clockwise)";
    throw Error(ErrorKind::DegenerateElement, msg.str());
  }
  const double inv = 1.0 / g.det_j;
  const double x = g.x.x(), y = g.x.y(), xe = g.dx.x(), ye = g.dx.y();
  g.b1 << ye, 0.0, 0.0, -xe, -xe, ye;
  g.b1 *= inv;
  g.b2 << -y, 0.0, 0.0, x, x, -y;
  g.b2 *= inv;
  g.r = g.x.norm();
  g.theta = std::atan2(y, x);
  return g;
}

GeometricOperators geometric_operators(const SpectralElement1D& el, double eta) {
  el.validate();
  if (!(eta >= -1.0 && eta <= 1.0)) throw Error(ErrorKind::InvalidArgument, "eta outside [-1, 1]");
  return geometric_operators(el, LobattoBasis(el.order), eta);
}

CoefficientTriple coefficient_matrices(const SpectralElement1D& el, const Eigen::Matrix3d& d, int quad_points) {
  el.validate();
  const LobattoBasis basis(el.order);
  const QuadratureRule rule = gauss_legendre(quad_points > 0 ? quad_points : default_quadrature_points(el.order));
  const int ndof = 2 * (el.order + 1);
  CoefficientTriple c{Eigen::MatrixXd::Zero(ndof, ndof), Eigen::MatrixXd::Zero(ndof, ndof),
                      Eigen::MatrixXd::Zero(ndof, ndof)};
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double eta = rule.points[q];
    const GeometricOperators g = geometric_operators(el, basis, eta);
    const ShapeValues s = basis.evaluate(eta);
    const Eigen::MatrixXd big_b1 = g.b1 * interpolation_matrix(s.values);
    const Eigen::MatrixXd big_b2 = g.b2 * interpolation_matrix(s.derivatives);
    const double w = rule.weights[q] * g.det_j;
    const Eigen::MatrixXd db1 = d * big_b1;
    c.e0.noalias() += w * big_b1.transpose() * db1;
    c.e1.noalias() += w * big_b2.transpose() * db1;
    c.e2.noalias() += w * big_b2.transpose() * (d * big_b2);
  }
  return c;
}

}  // namespace xsbfem
