#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "xsbfem/benchmarks.hpp"
#include "xsbfem/error.hpp"
#include "xsbfem/fracture.hpp"

using namespace xsbfem;

namespace {
constexpr double kPi = std::numbers::pi;
const Material kM(1.0, 0.3, PlaneState::PlaneStrain);
}  // namespace

TEST(Williams, StressAheadOfTip) {
  const double r = 0.01;
  const double f = 1.0 / std::sqrt(2.0 * kPi * r);
  const Eigen::Vector3d s1 = williams_stress(1.0, 0.0, r, 0.0);
  EXPECT_NEAR(s1[0], f, 1e-12 * f);
  EXPECT_NEAR(s1[1], f, 1e-12 * f);
  EXPECT_NEAR(s1[2], 0.0, 1e-12 * f);
  const Eigen::Vector3d s2 = williams_stress(0.0, 1.0, r, 0.0);
  EXPECT_NEAR(s2[0], 0.0, 1e-12 * f);
  EXPECT_NEAR(s2[1], 0.0, 1e-12 * f);
  EXPECT_NEAR(s2[2], f, 1e-12 * f);
}

TEST(Williams, TractionFreeFaces) {
  for (double th : {-kPi, kPi}) {
    const Eigen::Vector3d s = williams_stress(1.3, -0.7, 0.2, th);
    EXPECT_NEAR(s[1], 0.0, 1e-12);
    EXPECT_NEAR(s[2], 0.0, 1e-12);
  }
}

TEST(Williams, CrackOpeningDisplacement) {
  const double r = 0.04;
  const double mu = 1.0 / 2.6;
  const double expect = 1.0 / (2.0 * mu) * std::sqrt(r / (2.0 * kPi)) * (1.8 + 1.0);
  EXPECT_NEAR(williams_displacement(1.0, 0.0, kM, r, kPi).y(), expect, 1e-12);
  EXPECT_NEAR(williams_displacement(1.0, 0.0, kM, r, -kPi).y(), -expect, 1e-12);
  EXPECT_NEAR(williams_displacement(0.0, 1.0, kM, r, kPi).x(), expect, 1e-12);
  EXPECT_NEAR(williams_displacement(0.0, 1.0, kM, r, -kPi).x(), -expect, 1e-12);
}

TEST(RotateStress, QuarterTurn) {
  const Eigen::Vector3d s = rotate_stress(Eigen::Vector3d(1.0, 2.0, 3.0), 0.5 * kPi);
  EXPECT_NEAR(s[0], 2.0, 1e-14);
  EXPECT_NEAR(s[1], 1.0, 1e-14);
  EXPECT_NEAR(s[2], -3.0, 1e-14);
  const Eigen::Vector3d t = rotate_stress(Eigen::Vector3d(1.0, 2.0, 3.0), 0.3);
  EXPECT_NEAR(t[0] + t[1], 3.0, 1e-14);
}

TEST(Sif, HomogeneousDefinition) {
  const FrontStress fs{2.0, -0.5, 0.25};
  const StressIntensity k = sif_homogeneous(fs);
  EXPECT_NEAR(k.k1, 2.0 * std::sqrt(0.5 * kPi), 1e-14);
  EXPECT_NEAR(k.k2, -0.5 * std::sqrt(0.5 * kPi), 1e-14);
}

TEST(Sif, InterfaceDefinitionReducesAndPreservesMagnitude) {
  const FrontStress fs{2.0, -0.5, 0.25};
  const StressIntensity h = sif_homogeneous(fs);
  const StressIntensity a = sif_interface(fs, 0.0, 3.0);
  const StressIntensity b = sif_interface(fs, 0.07, 0.25);
  EXPECT_NEAR(a.k1, h.k1, 1e-14);
  EXPECT_NEAR(b.k2, h.k2, 1e-14);
  const StressIntensity c = sif_interface(fs, 0.07, 40.0);
  EXPECT_NEAR(std::hypot(c.k1, c.k2), std::hypot(h.k1, h.k2), 1e-13);
  EXPECT_NE(c.k1, h.k1);
  EXPECT_THROW(sif_interface(fs, 0.07, 0.0), Error);
  EXPECT_THROW(sif_interface(fs, 0.07, -1.0), Error);
}

TEST(Sif, HomogeneousRejectedForOscillatoryModes) {
  const ModalSolution ms = solve_modes(circle_crack_domain(8, 3, Material(10, 0.3, PlaneState::PlaneStrain), kM));
  try {
    sif_homogeneous(FrontStress{1.0, 0.0, 1.0}, ms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongDefinition);
  }
}

TEST(Extraction, RecoversWilliamsFactorsAndTStress) {
  const SBFEMDomain d = circle_crack_domain(8, 6, kM, kM);
  const ModalSolution ms = solve_modes(d);
  const double k1 = 1.0, k2 = 0.35, t = 0.6;
  Eigen::VectorXd ub = williams_boundary_displacement(d, k1, k2, kM);
  // Uniform sigma_xx = T in plane strain: e_xx = (1 - nu^2) T / E, e_yy = -nu (1 + nu) T / E.
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    ub[2 * i] += 0.91 * t * d.nodes()[i].x();
    ub[2 * i + 1] += -0.39 * t * d.nodes()[i].y();
  }
  const IntegrationConstants c = integration_constants(ms, ub);
  EXPECT_EQ(front_oscillatory_index(d, 0.0), 0.0);
  const FractureState st = fracture_state(d, ms, c, 0.0, 0.0, 1.0);
  EXPECT_NEAR(st.k1, k1, 1e-4);
  EXPECT_NEAR(st.k2, k2, 1e-4);
  EXPECT_NEAR(st.t_stress_side1, t, 1e-4);
  EXPECT_NEAR(st.t_stress_side2, t, 1e-4);
  EXPECT_NEAR(st.l0, 1.0, 1e-12);
}

TEST(Extraction, FrontLocation) {
  const SBFEMDomain d = circle_crack_domain(8, 2, kM, kM);
  const FrontLocation f = locate_front(d, 0.0);
  EXPECT_NEAR(f.l0, 1.0, 1e-12);
  const Point x = d.element(f.element).nodes.front();
  EXPECT_GE(f.eta, -1.0);
  EXPECT_LE(f.eta, 1.0);
  EXPECT_GT(x.norm(), 0.0);
  const FrontLocation above = locate_front(d, 0.0, FrontSide::Above);
  const FrontLocation below = locate_front(d, 0.0, FrontSide::Below);
  EXPECT_NE(above.element, below.element);
}

TEST(Angular, ModesOrderedAndNormalized) {
  const SBFEMDomain d = circle_crack_domain(8, 3, kM, kM);
  const ModalSolution ms = solve_modes(d);
  const auto modes = singular_modes(ms);
  ASSERT_EQ(modes.size(), 2u);
  const auto samples = angular_distribution(d, ms, modes, 0.0, true);
  ASSERT_FALSE(samples.empty());
  EXPECT_NEAR(samples.front().theta, -kPi, 1e-12);
  EXPECT_NEAR(samples.back().theta, kPi, 1e-12);
  for (std::size_t i = 1; i < samples.size(); ++i) EXPECT_LE(samples[i - 1].theta, samples[i].theta);
}

TEST(Angular, UncrackedDiscHasNoSingularModes) {
  const SBFEMDomain d = wedge_domain(-kPi, {{kPi, 0, 8}}, 3, {kM}, false);
  const ModalSolution ms = solve_modes(d);
  EXPECT_TRUE(singular_modes(ms).empty());
  const IntegrationConstants c = integration_constants(ms, Eigen::VectorXd::Zero(d.dof_count()));
  try {
    singular_stress_at_front(d, ms, c, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingSingularity);
  }
}

TEST(Extraction, BimaterialFrontIndex) {
  const Material hard(10.0, 0.3, PlaneState::PlaneStrain);
  const SBFEMDomain d = circle_crack_domain(8, 3, hard, kM);
  EXPECT_NEAR(std::abs(front_oscillatory_index(d, 0.0)), std::abs(oscillatory_index(BimaterialPair(hard, kM))), 1e-15);
}
