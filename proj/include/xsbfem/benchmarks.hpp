#pragma once

#include <optional>
#include <vector>

#include "xsbfem/fracture.hpp"
#include "xsbfem/materials.hpp"
#include "xsbfem/sbfem.hpp"
#include "xsbfem/xfem.hpp"

namespace xsbfem {

/// Square [-1, 1]^2 cracked from (-1, 0) to the centre. The boundary runs
/// counter-clockwise from the lower crack face and is cut into `elements`
/// pieces of equal length.
SBFEMDomain square_crack_domain(int elements, int degree, const Material& m);

/// Unit circle cracked along the negative x-axis, `above` for theta > 0.
SBFEMDomain circle_crack_domain(int elements, int degree, const Material& above, const Material& below);

/// One wedge of a multi-material disc: material `material` from the previous
/// wedge's end angle up to `end_angle`.
struct Wedge {
  double end_angle = 0.0;
  int material = 0;
  int elements = 1;
};

/// Unit disc made of wedges swept counter-clockwise from `start_angle`. With
/// `cracked` the boundary is open at `start_angle` (crack along that ray).
SBFEMDomain wedge_domain(double start_angle, const std::vector<Wedge>& wedges, int degree,
                         std::vector<Material> materials, bool cracked);

/// Material 2 on the upper half, 1 on the lower-left and 3 on the lower-right
/// quarter, `elements_per_quarter` elements per quarter. With `cracked` the
/// interface between 2 and 3 (theta = 0) is a crack.
SBFEMDomain triple_junction_domain(const Material& m1, const Material& m2, const Material& m3,
                                   int elements_per_quarter, int degree, bool cracked);

/// Williams displacement of every boundary node for a crack along the
/// negative x-axis; crack-mouth nodes use theta = -pi and pi.
Eigen::VectorXd williams_boundary_displacement(const SBFEMDomain& dom, double k1, double k2, const Material& m);

/// Plate [0, width] x [-height/2, height/2] with uniform tension `load` on top
/// and bottom edges. Material 0 lies above the interface y = 0, material 1 below.
struct PlateSpec {
  int nx = 51;
  int ny = 102;
  double width = 1.0;
  double height = 2.0;
  double e_ratio = 2.0;  // E of material 0 over E of material 1 (E1 = 1)
  double poisson = 0.3;
  PlaneState state = PlaneState::PlaneStrain;
  double load = 1.0;
};

/// Edge crack from (0, 0) to (a, 0) on the interface, minimal rigid-body restraints.
GlobalModel edge_crack_model(const PlateSpec& spec, double crack_length);

/// Right half of a centre-cracked plate: crack from (0, 0) to (a, 0) on the
/// interface, u_x = 0 along x = 0.
GlobalModel center_crack_model(const PlateSpec& spec, double half_crack_length);

/// Two-layer strip [0, length] x [-h2, h1]: material 0 (top, thickness h1)
/// and material 1 (bottom, h2), interface crack from x = 0 to x = a, opening
/// point loads at the left corners and a clamped right end.
struct StripSpec {
  int nx = 201;
  int ny = 51;
  double length = 10.0;
  double h1 = 26.0 / 25.0;
  double h2 = 1.0;
  Material top{7.0 / 3.0, 1.0 / 3.0, PlaneState::PlaneStrain};
  Material bottom{1.0, 1.0 / 3.0, PlaneState::PlaneStrain};
  double crack_length = 5.0;
  double load = 1.0;
};
GlobalModel strip_model(const StripSpec& spec);

/// Plate with a vertical interface x = width/2: material 1 (E = 1) on the left
/// holds a crack ending on the interface at (width/2, 0) and inclined by `psi`
/// (counter-clockwise from +x); material 0 (E = e_ratio) on the right.
GlobalModel terminating_crack_model(const PlateSpec& spec, double psi);

/// Crack along y = 0 through material 1 (left, E = 1) up to the vertical
/// interface at x = x_interface, then kinked by `psi` into material 0 (right,
/// E = e_ratio) over `kink_length`.
GlobalModel deflected_crack_model(const PlateSpec& spec, double x_interface, double psi, double kink_length);

/// Uncracked homogeneous plate (material 0 of `spec`) with the linear field
/// u = F x prescribed on every boundary node, F = [[e_xx, e_xy], [e_xy, e_yy]];
/// the SBFEM region is centred at `center`.
GlobalModel patch_model(const PlateSpec& spec, const Eigen::Vector3d& strain);

/// Largest deviation of nodal displacements and of FE and SBFEM stresses from
/// the exact linear field, relative to the exact magnitudes.
struct PatchError {
  double displacement = 0.0;
  double fe_stress = 0.0;
  double sbfem_stress = 0.0;
};
PatchError patch_error(const GlobalModel& model, const Solution& sol, const Eigen::Vector3d& strain);

/// Result of one coupled analysis.
struct TipAnalysis {
  Solution solution;
  FractureState state;
  /// Direction from the crack mouth on the region boundary to the tip: the
  /// crack the SBFEM region actually represents.
  double crack_angle = 0.0;
};

/// Solves the model and extracts the fracture state at the crack tip; the
/// interface definition is used when different materials meet at theta = 0.
TipAnalysis analyze_tip(const GlobalModel& model, const SBFEMRegionSpec& spec, double l_char);

/// A point of the stress profile ahead of the tip.
struct ProfilePoint {
  double r = 0.0;
  double sigma_yy = 0.0;  // crack-aligned frame
};

/// Full-field sigma_yy (in the crack frame) along theta = 0 inside the SBFEM
/// region, `samples` points with r from L0 / samples to L0.
std::vector<ProfilePoint> stress_ahead_of_tip(const Solution& sol, double crack_angle, int samples);

}  // namespace xsbfem
