#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "xsbfem/boundary_elements.hpp"
#include "xsbfem/error.hpp"
#include "xsbfem/materials.hpp"

using namespace xsbfem;

TEST(GaussLobatto, KnownAbscissae) {
  EXPECT_EQ(gauss_lobatto_points(1), (std::vector<double>{-1.0, 1.0}));
  const auto p2 = gauss_lobatto_points(2);
  ASSERT_EQ(p2.size(), 3u);
  EXPECT_NEAR(p2[1], 0.0, 1e-15);
  const auto p3 = gauss_lobatto_points(3);
  EXPECT_NEAR(p3[1], -1.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(p3[2], 1.0 / std::sqrt(5.0), 1e-15);
  const auto p4 = gauss_lobatto_points(4);
  EXPECT_NEAR(p4[1], -std::sqrt(3.0 / 7.0), 1e-15);
  EXPECT_NEAR(p4[3], std::sqrt(3.0 / 7.0), 1e-15);
  EXPECT_EQ(p4.front(), -1.0);
  EXPECT_EQ(p4.back(), 1.0);
}

TEST(GaussLobatto, RejectsOrderZero) {
  try {
    gauss_lobatto_points(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidOrder);
  }
}

TEST(GaussLegendre, ThreePointRule) {
  const QuadratureRule r = gauss_legendre(3);
  EXPECT_NEAR(r.points[0], -std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(r.weights[0], 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(r.weights[1], 8.0 / 9.0, 1e-15);
}

TEST(GaussLegendre, ExactForDegree2nMinus1) {
  for (int n = 1; n <= 12; ++n) {
    const QuadratureRule r = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], k);
      EXPECT_NEAR(s, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-13) << n << " " << k;
    }
  }
}

TEST(ShapeFunctions, KroneckerAtNodes) {
  for (int p = 1; p <= 9; ++p) {
    const auto nodes = gauss_lobatto_points(p);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const ShapeValues s = shape_functions(p, nodes[i]);
      for (std::size_t j = 0; j < nodes.size(); ++j) EXPECT_NEAR(s.values[j], i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(ShapeFunctions, PartitionOfUnity) {
  for (int p = 1; p <= 9; ++p) {
    for (double eta : {-0.93, -0.4, 0.1, 0.77}) {
      const ShapeValues s = shape_functions(p, eta);
      EXPECT_NEAR(s.values.sum(), 1.0, 1e-12);
      EXPECT_NEAR(s.derivatives.sum(), 0.0, 1e-11);
    }
  }
}

TEST(ShapeFunctions, ReproduceLinearField) {
  const int p = 5;
  const auto nodes = gauss_lobatto_points(p);
  const double eta = 0.37;
  const ShapeValues s = shape_functions(p, eta);
  double v = 0.0, dv = 0.0;
  for (int i = 0; i <= p; ++i) {
    v += s.values[i] * (3.0 * nodes[i] - 1.0);
    dv += s.derivatives[i] * (3.0 * nodes[i] - 1.0);
  }
  EXPECT_NEAR(v, 3.0 * eta - 1.0, 1e-13);
  EXPECT_NEAR(dv, 3.0, 1e-12);
}

TEST(ShapeFunctions, RejectsOutsideInterval) {
  EXPECT_THROW(shape_functions(2, 1.5), Error);
  EXPECT_THROW(shape_functions(2, std::nan("")), Error);
}

TEST(QuadratureCount, Formula) {
  EXPECT_EQ(default_quadrature_points(1), 4);
  EXPECT_EQ(default_quadrature_points(3), 7);
  EXPECT_EQ(default_quadrature_points(4), 9);
}

TEST(GeometricOperators, StraightLinearElement) {
  SpectralElement1D el;
  el.order = 1;
  el.nodes = {Point(1, 0), Point(0, 1)};
  const GeometricOperators g = geometric_operators(el, 0.0);
  EXPECT_NEAR((g.x - Point(0.5, 0.5)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((g.dx - Point(-0.5, 0.5)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(g.det_j, 0.5, 1e-15);
  EXPECT_NEAR(g.r, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(g.theta, std::numbers::pi / 4.0, 1e-15);
}

TEST(GeometricOperators, ClockwiseElementIsDegenerate) {
  SpectralElement1D el;
  el.order = 1;
  el.nodes = {Point(0, 1), Point(1, 0)};
  EXPECT_THROW(geometric_operators(el, 0.0), Error);
}

TEST(InterpolationMatrix, Layout) {
  const Eigen::MatrixXd n = interpolation_matrix(Eigen::Vector3d(0.2, 0.3, 0.5));
  ASSERT_EQ(n.rows(), 2);
  ASSERT_EQ(n.cols(), 6);
  EXPECT_EQ(n(0, 0), 0.2);
  EXPECT_EQ(n(1, 1), 0.2);
  EXPECT_EQ(n(0, 1), 0.0);
  EXPECT_EQ(n(1, 4), 0.0);
  EXPECT_EQ(n(1, 5), 0.5);
}

TEST(CoefficientMatrices, SymmetryAndRigidTranslation) {
  SpectralElement1D el;
  el.order = 3;
  for (double g : gauss_lobatto_points(3)) {
    const double t = 0.3 + 0.5 * (g + 1.0) * 0.8;
    el.nodes.emplace_back(2.0 * std::cos(t), 1.5 * std::sin(t));
  }
  const CoefficientTriple c = coefficient_matrices(el, constitutive_matrix(Material(1, 0.3, PlaneState::PlaneStrain)));
  EXPECT_LT((c.e0 - c.e0.transpose()).norm(), 1e-13 * c.e0.norm());
  EXPECT_LT((c.e2 - c.e2.transpose()).norm(), 1e-13 * c.e2.norm());
  // A rigid translation has no circumferential strain: B2 u = 0, so E2 u = E1^T u = 0.
  Eigen::VectorXd tx = Eigen::VectorXd::Zero(8);
  for (int i = 0; i < 4; ++i) tx[2 * i] = 1.0;
  EXPECT_LT((c.e2 * tx).norm(), 1e-12 * c.e2.norm());
  EXPECT_LT((c.e1.transpose() * tx).norm(), 1e-12 * c.e1.norm());
}
