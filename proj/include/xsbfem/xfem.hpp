#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xsbfem/geometry.hpp"
#include "xsbfem/materials.hpp"
#include "xsbfem/mesh.hpp"
#include "xsbfem/sbfem.hpp"

namespace xsbfem {

enum class ElementClass { Standard, Split, SplitBlending, ScaledBoundary };

std::string_view to_string(ElementClass c) noexcept;

struct DirichletCondition {
  int node = 0;
  int component = 0;  // 0 = x, 1 = y
  double value = 0.0;
};

struct NodalForce {
  int node = 0;
  Eigen::Vector2d force = Eigen::Vector2d::Zero();
};

/// Uniform traction on the mesh edge between two nodes.
struct EdgeTraction {
  int node_a = 0;
  int node_b = 0;
  Eigen::Vector2d traction = Eigen::Vector2d::Zero();
};

/// Quadrilateral mesh with a mesh-independent crack, per-element materials and loads.
struct GlobalModel {
  QuadMesh mesh;
  std::vector<Material> materials;
  std::vector<int> element_material;  // one id per quad
  std::optional<CrackGeometry> crack;
  std::optional<Polyline> interface;  // informational; materials are per element
  std::vector<DirichletCondition> constraints;
  std::vector<NodalForce> nodal_forces;
  std::vector<EdgeTraction> tractions;

  /// Throws Error(InvalidArgument) or Error(Geometry) on inconsistent input.
  void validate() const;
};

/// Material ids by side of an interface aligned with element edges: `left_id`
/// where the signed distance is positive. Throws Error(NotSupported) when the
/// interface crosses an element interior.
std::vector<int> assign_materials(const QuadMesh& mesh, const Polyline& interface, int left_id, int right_id);

struct SBFEMRegionSpec {
  int layers = 3;
  /// Use fewer layers (at least one) when more would take in a crack kink or
  /// a material the tip elements do not touch.
  bool shrink_to_fit = false;
  /// Scaling centre when the model has no crack; ignored otherwise (the crack tip is used).
  std::optional<Point> center;
};

/// Sign of a signed distance. Throws Error(Geometry) for exactly zero.
int heaviside(double signed_distance);

/// Sub-triangles of a crack-cut element with their Heaviside value.
struct SplitCell {
  std::array<Point, 3> vertices;
  int side = 0;
};

struct Classification {
  std::vector<ElementClass> classes;
  std::vector<int> region_elements;  // sorted
  std::vector<int> tip_elements;
  int layers = 0;                    // rings actually used
  std::vector<int> enriched_nodes;   // sorted
  std::vector<char> enriched;        // per node
  std::vector<std::vector<SplitCell>> cells;  // per element, non-empty for Split elements
  int count(ElementClass c) const;
};

/// Region = elements containing the tip plus `layers` rings of node neighbours.
/// Enriched nodes: outside-region support cut by the crack.
/// Throws Error(Geometry) when the tip lies outside the mesh and
/// Error(InvalidArgument) for layers < 1.
Classification classify_elements(const GlobalModel& model, const SBFEMRegionSpec& spec);

/// A node of the SBFEM boundary chain expressed through FE nodes: it sits at
/// (1 - t) x_a + t x_b. `face` is +-1 on the two copies of the crack mouth.
struct ChainNode {
  int node_a = -1;
  int node_b = -1;
  double t = 0.0;
  int face = 0;
};

struct SBFEMRegion {
  SBFEMDomain domain;
  std::vector<int> member_elements;
  std::vector<int> boundary_loop;  // counter-clockwise FE nodes, not repeated
  std::vector<ChainNode> chain;    // SBFEM boundary nodes in domain order
  std::vector<int> interior_nodes; // FE nodes condensed away
};

/// Traces the region boundary, opens it at the crack mouth and builds the
/// linear-element SBFEM domain with the tip as scaling centre.
/// Throws Error(Region) for holes, pinches, repeated mouth crossings or invisibility.
SBFEMRegion extract_sbfem_region(const GlobalModel& model, const SBFEMRegionSpec& spec, const Classification& cls);

struct Solution {
  Classification classification;
  SBFEMRegion region;
  ModalSolution modes;
  IntegrationConstants constants;
  Eigen::VectorXd dofs;
  std::vector<int> u_dof;  // first of two dofs per node, -1 when the node has none
  std::vector<int> a_dof;  // first of two enrichment dofs, -1 when not enriched
  Eigen::VectorXd u_boundary;
  int system_size = 0;
  int free_size = 0;
  double residual = 0.0;
  double symmetry_error = 0.0;

  /// Displacement at a node; `side` selects the crack face for enriched nodes
  /// lying on the crack (0 evaluates H at the node).
  Eigen::Vector2d nodal_displacement(const GlobalModel& model, int node, int side = 0) const;
};

/// Assembles FE, enriched and SBFEM contributions, eliminates Dirichlet dofs and
/// solves. Throws Error(UnderConstrained) for a singular reduced system.
Solution assemble_and_solve(const GlobalModel& model, const SBFEMRegionSpec& spec);

/// Stress (sxx, syy, sxy) at parent point (s, t) of a non-region element.
Eigen::Vector3d element_stress(const GlobalModel& model, const Solution& sol, std::size_t element, double s, double t);

}  // namespace xsbfem
