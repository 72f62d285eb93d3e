#pragma once

#include <Eigen/Dense>
#include <vector>

#include "xsbfem/geometry.hpp"

namespace xsbfem {

/// Gauss-Lobatto abscissae on [-1, 1] for a degree-`order` Lagrange basis, ascending.
std::vector<double> gauss_lobatto_points(int order);

struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int npoints);

struct ShapeValues {
  Eigen::VectorXd values;
  Eigen::VectorXd derivatives;  // d/d eta
};

/// Lagrange basis through the Gauss-Lobatto points of a given order.
class LobattoBasis {
 public:
  explicit LobattoBasis(int order);

  int order() const noexcept { return order_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  ShapeValues evaluate(double eta) const;

 private:
  int order_;
  std::vector<double> nodes_;
  std::vector<double> denominators_;
};

/// Values and eta-derivatives of the order+1 Lobatto-Lagrange shape functions.
/// Throws Error(InvalidOrder) for order < 1 and Error(InvalidArgument) outside [-1, 1].
ShapeValues shape_functions(int order, double eta);

/// Spectral line element on the scaled boundary. Coordinates are taken relative
/// to the scaling centre by the caller.
struct SpectralElement1D {
  int order = 1;
  std::vector<Point> nodes;  // order + 1 points at the Lobatto abscissae
  int material_id = 0;

  /// Throws Error(InvalidOrder) or Error(DegenerateElement) when malformed.
  void validate() const;
};

/// Number of Gauss points used per element: ceil((3p + 3) / 2) + 1.
int default_quadrature_points(int order);

struct GeometricOperators {
  Eigen::Matrix<double, 3, 2> b1;
  Eigen::Matrix<double, 3, 2> b2;
  double det_j = 0.0;
  double r = 0.0;      // radial coordinate of the boundary point
  double theta = 0.0;  // polar angle in (-pi, pi]
  Point x;             // boundary point
  Point dx;            // d x / d eta
};

/// Strain operators of the scaled boundary mapping at eta, with the scaling
/// centre at the origin. Throws Error(DegenerateElement) when |J| <= 0.
GeometricOperators geometric_operators(const SpectralElement1D& el, double eta);
GeometricOperators geometric_operators(const SpectralElement1D& el, const LobattoBasis& basis, double eta);

struct CoefficientTriple {
  Eigen::MatrixXd e0;
  Eigen::MatrixXd e1;
  Eigen::MatrixXd e2;
};

/// Element coefficient matrices E0 = int B1' D B1 |J|, E1 = int B2' D B1 |J|,
/// E2 = int B2' D B2 |J| of size 2(p+1). `quad_points` <= 0 selects the default rule.
CoefficientTriple coefficient_matrices(const SpectralElement1D& el, const Eigen::Matrix3d& d,
                                       int quad_points = 0);

/// Row 0: [N1 0 N2 0 ...], row 1: [0 N1 0 N2 ...].
Eigen::MatrixXd interpolation_matrix(const Eigen::VectorXd& values);

}  // namespace xsbfem
