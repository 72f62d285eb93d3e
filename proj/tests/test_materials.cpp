#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "xsbfem/error.hpp"
#include "xsbfem/materials.hpp"

using namespace xsbfem;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(ConstitutiveMatrix, ZeroPoissonDecouplesInBothStates) {
  for (PlaneState s : {PlaneState::PlaneStress, PlaneState::PlaneStrain}) {
    const Eigen::Matrix3d d = constitutive_matrix(Material(1.0, 0.0, s));
    Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
    expected.diagonal() << 1.0, 1.0, 0.5;
    EXPECT_LT((d - expected).norm(), 1e-15);
  }
}

TEST(ConstitutiveMatrix, PlaneStrainEntries) {
  const Eigen::Matrix3d d = constitutive_matrix(Material(1.0, 0.3, PlaneState::PlaneStrain));
  EXPECT_NEAR(d(0, 0), 0.7 / (1.3 * 0.4), 1e-14);
  EXPECT_NEAR(d(1, 1), 0.7 / (1.3 * 0.4), 1e-14);
  EXPECT_NEAR(d(0, 1), 0.3 / (1.3 * 0.4), 1e-14);
  EXPECT_NEAR(d(2, 2), 1.0 / 2.6, 1e-14);
  EXPECT_EQ(d(0, 2), 0.0);
}

TEST(ConstitutiveMatrix, PlaneStressEntries) {
  const Eigen::Matrix3d d = constitutive_matrix(Material(2.0, 0.3, PlaneState::PlaneStress));
  EXPECT_NEAR(d(0, 0), 2.0 / 0.91, 1e-14);
  EXPECT_NEAR(d(0, 1), 0.6 / 0.91, 1e-14);
  EXPECT_NEAR(d(2, 2), 2.0 / 2.6, 1e-14);
}

TEST(ConstitutiveMatrix, SymmetricPositiveDefiniteAndIsotropic) {
  for (double nu : {-0.9, 0.0, 0.25, 0.49}) {
    for (PlaneState s : {PlaneState::PlaneStress, PlaneState::PlaneStrain}) {
      const Eigen::Matrix3d d = constitutive_matrix(Material(3.0, nu, s));
      EXPECT_LT((d - d.transpose()).norm(), 1e-14);
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(d).eigenvalues().minCoeff(), 0.0);
      const Eigen::Vector3d sig = d * Eigen::Vector3d(1.0, 1.0, 0.0);
      EXPECT_NEAR(sig[0], sig[1], 1e-14);
      EXPECT_EQ(sig[2], 0.0);
    }
  }
}

TEST(Material, RejectsInvalidConstants) {
  EXPECT_THROW(Material(0.0, 0.3, PlaneState::PlaneStrain), Error);
  EXPECT_THROW(Material(-1.0, 0.3, PlaneState::PlaneStrain), Error);
  EXPECT_THROW(Material(1.0, 0.5, PlaneState::PlaneStrain), Error);
  EXPECT_THROW(Material(1.0, -1.0, PlaneState::PlaneStress), Error);
}

TEST(Material, EffectiveModulus) {
  EXPECT_DOUBLE_EQ(Material(2.0, 0.25, PlaneState::PlaneStress).effective_modulus(), 2.0);
  EXPECT_NEAR(Material(2.0, 0.25, PlaneState::PlaneStrain).effective_modulus(), 2.0 / (1.0 - 0.0625), 1e-15);
}

TEST(Kolosov, Branches) {
  EXPECT_NEAR(kolosov(Material(1.0, 0.3, PlaneState::PlaneStrain)), 1.8, 1e-15);
  EXPECT_NEAR(kolosov(Material(1.0, 0.3, PlaneState::PlaneStress)), 27.0 / 13.0, 1e-15);
  EXPECT_NEAR(kolosov(Material(1.0, 1.0 / 3.0, PlaneState::PlaneStrain)), 5.0 / 3.0, 1e-15);
}

TEST(Bimaterial, RejectsMixedPlaneStates) {
  EXPECT_THROW(BimaterialPair(Material(1, 0.3, PlaneState::PlaneStrain), Material(1, 0.3, PlaneState::PlaneStress)),
               Error);
}

TEST(Dundurs, IdenticalMaterialsGiveZero) {
  const Material m(1.0, 0.3, PlaneState::PlaneStrain);
  EXPECT_EQ(dundurs_beta(BimaterialPair(m, m)), 0.0);
  EXPECT_EQ(oscillatory_index(BimaterialPair(m, m)), 0.0);
}

TEST(Dundurs, StiffnessRatioTen) {
  // mu1 / mu2 = 10, kappa = 1.8: (10 * 0.8 - 0.8) / (10 * 2.8 + 2.8).
  const Material m1(10.0, 0.3, PlaneState::PlaneStrain), m2(1.0, 0.3, PlaneState::PlaneStrain);
  EXPECT_NEAR(dundurs_beta(BimaterialPair(m1, m2)), 7.2 / 30.8, 1e-14);
  EXPECT_NEAR(dundurs_beta(BimaterialPair(m2, m1)), -7.2 / 30.8, 1e-14);
  // The same-sign form: (8 + 0.8) / 30.8 = 2/7.
  EXPECT_NEAR(dundurs_beta_same_sign(BimaterialPair(m1, m2)), 2.0 / 7.0, 1e-14);
}

TEST(Dundurs, BoundedByOne) {
  const Material soft(1e-6, 0.49, PlaneState::PlaneStrain), hard(1e6, -0.5, PlaneState::PlaneStrain);
  EXPECT_LT(std::abs(dundurs_beta(BimaterialPair(soft, hard))), 1.0);
}

TEST(OscillatoryIndex, ClosedForm) {
  EXPECT_EQ(oscillatory_index(0.0), 0.0);
  const double b = 7.2 / 30.8;
  EXPECT_NEAR(oscillatory_index(b), std::log((1.0 - b) / (1.0 + b)) / (2.0 * kPi), 1e-15);
  EXPECT_NEAR(oscillatory_index(-b), -oscillatory_index(b), 1e-15);
  EXPECT_THROW(oscillatory_index(1.0), Error);
}
