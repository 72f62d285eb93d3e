#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "xsbfem/benchmarks.hpp"
#include "xsbfem/error.hpp"
#include "xsbfem/growth.hpp"

using namespace xsbfem;

namespace {

constexpr double kPi = std::numbers::pi;

PlateSpec small_plate(double e_ratio) {
  PlateSpec ps;
  ps.nx = 20;
  ps.ny = 40;
  ps.e_ratio = e_ratio;
  return ps;
}

}  // namespace

TEST(HoopAngle, PureModeIGoesStraight) { EXPECT_EQ(hoop_stress_angle(2.0, 0.0), 0.0); }

TEST(HoopAngle, EqualModes) {
  EXPECT_NEAR(hoop_stress_angle(1.0, 1.0), -2.0 * std::atan(0.5), 1e-15);
  EXPECT_NEAR(hoop_stress_angle(1.0, 1.0) * 180.0 / kPi, -53.130102, 1e-6);
}

TEST(HoopAngle, OppositeSignToShearAndStationary) {
  for (double r : {-20.0, -1.0, -0.1, 0.01, 0.5, 7.0}) {
    const double th = hoop_stress_angle(1.0, r);
    EXPECT_LT(th * r, 0.0);
    EXPECT_LT(std::abs(th), std::acos(1.0 / 3.0) + 1e-12);
    EXPECT_NEAR(hoop_stress_residual(1.0, r, th), 0.0, 1e-12 * std::max(1.0, std::abs(r)));
  }
}

TEST(HoopAngle, PureModeIIRejected) {
  try {
    hoop_stress_angle(0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PureModeII);
  }
}

TEST(GrowthConfig, Validation) {
  GrowthConfig c;
  EXPECT_NO_THROW(c.validate());
  c.increment = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = GrowthConfig{};
  c.max_steps = 0;
  EXPECT_THROW(c.validate(), Error);
  c.max_steps = 1001;
  EXPECT_THROW(c.validate(), Error);
  c.max_steps = 1000;
  EXPECT_NO_THROW(c.validate());
}

TEST(Propagate, InterfaceGrowthAddsIncrement) {
  const GlobalModel m = edge_crack_model(small_plate(2.0), 0.3);
  SBFEMRegionSpec rs;
  rs.layers = 2;
  GrowthConfig cfg;
  cfg.increment = 0.1;
  cfg.max_steps = 3;
  const GrowthHistory h = propagate(m, rs, cfg);
  ASSERT_EQ(h.steps.size(), 3u);
  EXPECT_EQ(h.status, GrowthStatus::Completed);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(h.steps[k].crack_length, 0.3 + 0.1 * k, 1e-12);
    EXPECT_NEAR(h.steps[k].tip.y(), 0.0, 1e-12);
    EXPECT_NE(h.steps[k].state.eps, 0.0);
  }
  EXPECT_GT(std::hypot(h.steps[2].state.k1, h.steps[2].state.k2), std::hypot(h.steps[0].state.k1, h.steps[0].state.k2));
  EXPECT_NEAR(h.final_crack.back().x(), 0.5, 1e-12);
}

TEST(Propagate, SymmetricHoopGrowthStaysStraight) {
  const GlobalModel m = edge_crack_model(small_plate(1.0), 0.3);
  SBFEMRegionSpec rs;
  rs.layers = 2;
  GrowthConfig cfg;
  cfg.mode = GrowthMode::MaxHoopStress;
  cfg.increment = 0.1;
  cfg.max_steps = 3;
  const GrowthHistory h = propagate(m, rs, cfg);
  ASSERT_EQ(h.steps.size(), 3u);
  for (const GrowthStep& s : h.steps) {
    EXPECT_LT(std::abs(s.theta_c), 1e-6);
    EXPECT_LT(std::abs(s.tip.y()), 1e-9);
  }
}

TEST(Propagate, StopsAtMargin) {
  const GlobalModel m = edge_crack_model(small_plate(2.0), 0.6);
  SBFEMRegionSpec rs;
  rs.layers = 2;
  GrowthConfig cfg;
  cfg.increment = 0.1;
  cfg.max_steps = 10;
  cfg.margin = 0.25;
  const GrowthHistory h = propagate(m, rs, cfg);
  EXPECT_EQ(h.status, GrowthStatus::TipExited);
  ASSERT_EQ(h.steps.size(), 2u);
  EXPECT_NEAR(h.final_crack.back().x(), 0.7, 1e-12);
}

TEST(Propagate, InterfaceModeNeedsInterface) {
  GlobalModel m = edge_crack_model(small_plate(2.0), 0.3);
  m.interface.reset();
  EXPECT_THROW(propagate(m, SBFEMRegionSpec{}, GrowthConfig{}), Error);
}
