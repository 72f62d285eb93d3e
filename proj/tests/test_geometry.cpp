#include <gtest/gtest.h>

#include <numbers>

#include "xsbfem/error.hpp"
#include "xsbfem/geometry.hpp"
#include "xsbfem/mesh.hpp"

using namespace xsbfem;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(WrapAngle, HalfOpenRange) {
  EXPECT_NEAR(wrap_angle(3.0 * kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_angle(-kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_angle(0.5), 0.5, 0.0);
  EXPECT_NEAR(wrap_angle(-0.5 - 4.0 * kPi), -0.5, 1e-12);
}

TEST(Segments, ProperCrossing) {
  const auto hit = intersect_segments({0, 0}, {2, 0}, {1, -1}, {1, 1}, 1e-12);
  ASSERT_TRUE(hit);
  EXPECT_NEAR(hit->t, 0.5, 1e-15);
  EXPECT_NEAR(hit->u, 0.5, 1e-15);
  EXPECT_NEAR((hit->point - Point(1, 0)).norm(), 0.0, 1e-15);
}

TEST(Segments, ParallelAndDisjoint) {
  EXPECT_FALSE(intersect_segments({0, 0}, {1, 0}, {0, 1}, {1, 1}, 1e-12));
  EXPECT_FALSE(intersect_segments({0, 0}, {1, 0}, {2, -1}, {2, 1}, 1e-12));
}

TEST(Segments, TouchingEndpoint) {
  const auto hit = intersect_segments({0, 0}, {1, 0}, {1, 0}, {1, 1}, 1e-12);
  ASSERT_TRUE(hit);
  EXPECT_NEAR(hit->t, 1.0, 1e-12);
  EXPECT_NEAR(hit->u, 0.0, 1e-12);
}

TEST(Segments, DistanceToSegment) {
  auto [d, t] = distance_to_segment({1, 1}, {0, 0}, {2, 0});
  EXPECT_NEAR(d, 1.0, 1e-15);
  EXPECT_NEAR(t, 0.5, 1e-15);
  std::tie(d, t) = distance_to_segment({3, 4}, {0, 0}, {0, -1});
  EXPECT_NEAR(d, 5.0, 1e-15);
  EXPECT_NEAR(t, 0.0, 1e-15);
}

TEST(Polyline, SignedDistanceLeftIsPositive) {
  const Polyline p({{0, 0}, {2, 0}});
  EXPECT_NEAR(p.signed_distance({1, 0.5}), 0.5, 1e-15);
  EXPECT_NEAR(p.signed_distance({1, -0.25}), -0.25, 1e-15);
  EXPECT_NEAR(p.length(), 2.0, 1e-15);
}

TEST(Polyline, CrossingsSortedAlongQuery) {
  const Polyline p({{0, 0}, {1, 1}, {2, 0}});
  const auto hits = p.crossings({0, 0.5}, {2, 0.5}, 1e-12);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_NEAR(hits[0].point.x(), 0.5, 1e-14);
  EXPECT_NEAR(hits[1].point.x(), 1.5, 1e-14);
}

TEST(Crack, RejectsDegenerateInput) {
  EXPECT_THROW(CrackGeometry({{0, 0}}), Error);
  EXPECT_THROW(CrackGeometry({{0, 0}, {0, 0}}), Error);
  EXPECT_THROW(CrackGeometry({{0, 0}, {2, 0}, {2, 1}, {1, -1}}), Error);
  EXPECT_THROW(CrackGeometry({{0, 0}, {2, 0}, {1, 0}}), Error);
}

TEST(Crack, TipAndExtension) {
  CrackGeometry c({{0, 0}, {1, 0}});
  EXPECT_EQ(c.tip_index(), 1u);
  EXPECT_NEAR(c.tip_angle(), 0.0, 0.0);
  c.extend_to({1, 1});
  EXPECT_EQ(c.vertices().size(), 3u);
  EXPECT_NEAR(c.tip_angle(), 0.5 * kPi, 1e-15);
  EXPECT_THROW(c.extend_to({1, -1}), Error);
}

TEST(Mesh, StructuredNumbering) {
  const QuadMesh m = QuadMesh::structured(0.0, -1.0, 2.0, 2.0, 4, 2);
  EXPECT_EQ(m.nodes.size(), 15u);
  EXPECT_EQ(m.quads.size(), 8u);
  EXPECT_NEAR((m.nodes[1 * 5 + 2] - Point(1.0, 0.0)).norm(), 0.0, 1e-15);
  const auto q = m.quads[1 * 4 + 3];
  EXPECT_EQ(q[0], 1 * 5 + 3);
  EXPECT_EQ(q[2], 2 * 5 + 4);
  EXPECT_NEAR(m.element_size(0), std::sqrt(1.25), 1e-15);
  EXPECT_NEAR(m.diameter(), std::sqrt(8.0), 1e-15);
  EXPECT_NO_THROW(m.validate());
}

TEST(Mesh, BilinearInverse) {
  const std::array<Point, 4> x{Point(0, 0), Point(2, 0), Point(2.5, 1), Point(0, 1)};
  const Point p(1.2, 0.4);
  const Eigen::Vector2d st = inverse_bilinear(x, p);
  const BilinearValues b = bilinear(x, st[0], st[1]);
  Point back = Point::Zero();
  for (int k = 0; k < 4; ++k) back += b.n[k] * x[k];
  EXPECT_NEAR((back - p).norm(), 0.0, 1e-12);
  EXPECT_TRUE(quad_contains(x, p, 1e-12));
  EXPECT_FALSE(quad_contains(x, Point(3, 0.5), 1e-12));
}
