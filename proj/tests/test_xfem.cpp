#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "xsbfem/benchmarks.hpp"
#include "xsbfem/error.hpp"
#include "xsbfem/xfem.hpp"

using namespace xsbfem;

namespace {

PlateSpec small_plate(double e_ratio) {
  PlateSpec ps;
  ps.nx = 20;
  ps.ny = 40;
  ps.e_ratio = e_ratio;
  return ps;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Heaviside, Signs) {
  EXPECT_EQ(heaviside(1e-300), 1);
  EXPECT_EQ(heaviside(-2.0), -1);
  EXPECT_EQ(kind_of([] { heaviside(0.0); }), ErrorKind::Geometry);
}

TEST(Classification, EdgeAlignedCrackEnrichesWithoutSplitting) {
  const GlobalModel m = edge_crack_model(small_plate(2.0), 0.5);
  const Classification c = classify_elements(m, SBFEMRegionSpec{});
  EXPECT_EQ(c.count(ElementClass::Split), 0);
  ASSERT_FALSE(c.enriched_nodes.empty());
  for (int n : c.enriched_nodes) {
    EXPECT_NEAR(m.mesh.nodes[n].y(), 0.0, 1e-12);
    EXPECT_LT(m.mesh.nodes[n].x(), 0.5);
  }
}

TEST(Classification, CutCrackRegionAndEnrichment) {
  GlobalModel m = edge_crack_model(small_plate(2.0), 0.5);
  m.crack = CrackGeometry({{0.0, 0.01}, {0.5, 0.01}});
  SBFEMRegionSpec rs;
  rs.layers = 2;
  const Classification c = classify_elements(m, rs);
  EXPECT_EQ(c.layers, 2);
  EXPECT_FALSE(c.tip_elements.empty());
  EXPECT_TRUE(std::is_sorted(c.region_elements.begin(), c.region_elements.end()));
  EXPECT_EQ(c.count(ElementClass::ScaledBoundary), static_cast<int>(c.region_elements.size()));
  EXPECT_GT(c.count(ElementClass::Split), 0);
  EXPECT_GT(c.count(ElementClass::SplitBlending), 0);
  EXPECT_FALSE(c.enriched_nodes.empty());
  for (int n : c.enriched_nodes) EXPECT_TRUE(c.enriched[n]);
  int total = 0;
  for (ElementClass k : {ElementClass::Standard, ElementClass::Split, ElementClass::SplitBlending, ElementClass::ScaledBoundary})
    total += c.count(k);
  EXPECT_EQ(total, static_cast<int>(m.mesh.quads.size()));
  for (std::size_t e = 0; e < c.cells.size(); ++e) {
    if (c.classes[e] != ElementClass::Split) continue;
    ASSERT_FALSE(c.cells[e].empty());
    double area = 0.0;
    for (const SplitCell& cell : c.cells[e]) {
      const auto& v = cell.vertices;
      area += 0.5 * cross(v[1] - v[0], v[2] - v[0]);
      EXPECT_NE(cell.side, 0);
    }
    const double h = 1.0 / 20.0;
    EXPECT_NEAR(area, h * h, 1e-12);
  }
}

TEST(Classification, InvalidRequests) {
  GlobalModel m = edge_crack_model(small_plate(2.0), 0.5);
  SBFEMRegionSpec rs;
  rs.layers = 0;
  EXPECT_EQ(kind_of([&] { classify_elements(m, rs); }), ErrorKind::InvalidArgument);
  rs.layers = 1;
  m.crack = CrackGeometry({{-3.0, 0.01}, {-2.0, 0.01}});
  EXPECT_EQ(kind_of([&] { classify_elements(m, rs); }), ErrorKind::Geometry);
}

TEST(Materials, AssignBySide) {
  const QuadMesh mesh = QuadMesh::structured(0, -1, 1, 2, 2, 4);
  const auto ids = assign_materials(mesh, Polyline({{1.5, 0}, {-0.5, 0}}), 0, 1);
  ASSERT_EQ(ids.size(), 8u);
  EXPECT_EQ(ids[0], 0);
  EXPECT_EQ(ids[7], 1);
  EXPECT_EQ(kind_of([&] { assign_materials(mesh, Polyline({{-0.5, 0.2}, {1.5, 0.2}}), 0, 1); }),
            ErrorKind::NotSupported);
}

TEST(Model, ValidateRejectsInconsistentInput) {
  const GlobalModel base = edge_crack_model(small_plate(2.0), 0.5);
  GlobalModel m = base;
  m.element_material.pop_back();
  EXPECT_EQ(kind_of([&] { m.validate(); }), ErrorKind::InvalidArgument);
  m = base;
  m.element_material[0] = 9;
  EXPECT_EQ(kind_of([&] { m.validate(); }), ErrorKind::InvalidArgument);
  m = base;
  m.constraints.push_back({0, 2, 0.0});
  EXPECT_EQ(kind_of([&] { m.validate(); }), ErrorKind::InvalidArgument);
  m = base;
  m.materials[1] = Material(1.0, 0.3, PlaneState::PlaneStress);
  EXPECT_EQ(kind_of([&] { m.validate(); }), ErrorKind::InvalidArgument);
  EXPECT_NO_THROW(base.validate());
}

TEST(Solve, UnconstrainedModelIsRejected) {
  GlobalModel m = edge_crack_model(small_plate(2.0), 0.5);
  m.constraints.clear();
  EXPECT_EQ(kind_of([&] { assemble_and_solve(m, SBFEMRegionSpec{}); }), ErrorKind::UnderConstrained);
}

TEST(Solve, PatchTestIsExact) {
  PlateSpec ps = small_plate(1.0);
  ps.nx = 12;
  ps.ny = 12;
  ps.height = 1.0;
  const Eigen::Vector3d strain(1e-2, -5e-3, 2e-3);
  const GlobalModel m = patch_model(ps, strain);
  SBFEMRegionSpec rs;
  rs.layers = 2;
  rs.center = Point(0.43, 0.07);
  const Solution sol = assemble_and_solve(m, rs);
  const PatchError e = patch_error(m, sol, strain);
  EXPECT_LT(e.displacement, 1e-10);
  EXPECT_LT(e.fe_stress, 1e-10);
  EXPECT_LT(e.sbfem_stress, 1e-10);
  EXPECT_LT(sol.symmetry_error, 1e-10);
  EXPECT_LT(sol.residual, 1e-10);
}

TEST(Solve, UncrackedModelNeedsCentre) {
  PlateSpec ps = small_plate(1.0);
  ps.nx = 6;
  ps.ny = 6;
  const GlobalModel m = patch_model(ps, Eigen::Vector3d(1e-3, 0, 0));
  EXPECT_EQ(kind_of([&] { assemble_and_solve(m, SBFEMRegionSpec{}); }), ErrorKind::InvalidArgument);
}

TEST(Solve, SymmetricModeIHasNoShear) {
  const GlobalModel m = edge_crack_model(small_plate(1.0), 0.5);
  SBFEMRegionSpec rs;
  rs.layers = 3;
  const TipAnalysis a = analyze_tip(m, rs, 1.0);
  EXPECT_GT(a.state.k1, 0.0);
  EXPECT_LT(std::abs(a.state.k2), 1e-6 * a.state.k1);
  EXPECT_EQ(a.state.eps, 0.0);
  EXPECT_NEAR(a.crack_angle, 0.0, 1e-12);
  EXPECT_LT(a.solution.residual, 1e-8);
  // Crack faces separate: the upper face moves up.
  const int tip_row_node = 20 * 21 + 2;  // node (0.1, 0) on the crack
  ASSERT_TRUE(a.solution.classification.enriched[tip_row_node]);
  EXPECT_GT(a.solution.nodal_displacement(m, tip_row_node, 1).y(),
            a.solution.nodal_displacement(m, tip_row_node, -1).y());
}

TEST(Solve, ElementStressRejectsRegionElements) {
  const GlobalModel m = edge_crack_model(small_plate(1.0), 0.5);
  const Solution sol = assemble_and_solve(m, SBFEMRegionSpec{});
  const int e = sol.classification.region_elements.front();
  EXPECT_EQ(kind_of([&] { element_stress(m, sol, e, 0.0, 0.0); }), ErrorKind::InvalidArgument);
}
