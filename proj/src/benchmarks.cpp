#include "xsbfem/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xsbfem/boundary_elements.hpp"
#include "xsbfem/error.hpp"

namespace xsbfem {

namespace {

constexpr double kPi = std::numbers::pi;

int node_index(int nx, int i, int j) { return j * (nx + 1) + i; }

void require_mesh(int nx, int ny) {
  if (nx < 2 || ny < 2) throw Error(ErrorKind::InvalidArgument, "mesh needs at least 2 x 2 elements");
  if (ny % 2 != 0) throw Error(ErrorKind::InvalidArgument, "ny must be even so that y = 0 is a mesh line");
}

void add_tension(GlobalModel& m, int nx, int ny, double load) {
  for (int i = 0; i < nx; ++i) {
    m.tractions.push_back({node_index(nx, i, ny), node_index(nx, i + 1, ny), Eigen::Vector2d(0.0, load)});
    m.tractions.push_back({node_index(nx, i, 0), node_index(nx, i + 1, 0), Eigen::Vector2d(0.0, -load)});
  }
}

GlobalModel plate(const PlateSpec& s) {
  require_mesh(s.nx, s.ny);
  GlobalModel m;
  m.mesh = QuadMesh::structured(0.0, -0.5 * s.height, s.width, s.height, s.nx, s.ny);
  m.materials = {Material(s.e_ratio, s.poisson, s.state), Material(1.0, s.poisson, s.state)};
  return m;
}

// Horizontal interface y = 0: material 0 above.
void horizontal_interface(GlobalModel& m, const PlateSpec& s) {
  Polyline itf({Point(-s.width, 0.0), Point(2.0 * s.width, 0.0)});
  m.element_material = assign_materials(m.mesh, itf, 0, 1);
  m.interface = itf;
}

// Vertical interface x = xi: material 1 on the left.
void vertical_interface(GlobalModel& m, const PlateSpec& s, double xi) {
  Polyline itf({Point(xi, -s.height), Point(xi, s.height)});
  m.element_material = assign_materials(m.mesh, itf, 1, 0);
  m.interface = itf;
}

// Right edge node at y = 0 fixed, the one above fixed in x.
void right_edge_restraints(GlobalModel& m, int nx, int ny) {
  m.constraints.push_back({node_index(nx, nx, ny / 2), 0, 0.0});
  m.constraints.push_back({node_index(nx, nx, ny / 2), 1, 0.0});
  m.constraints.push_back({node_index(nx, nx, ny / 2 + 1), 0, 0.0});
}

}  // namespace

SBFEMDomain square_crack_domain(int elements, int degree, const Material& m) {
  if (elements < 1) throw Error(ErrorKind::InvalidArgument, "need at least one element");
  const std::vector<double> gll = gauss_lobatto_points(degree);
  const std::vector<Point> corners{{-1, 0}, {-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, 0}};
  const double lengths[5] = {1.0, 2.0, 2.0, 2.0, 1.0};
  auto at = [&](double s) {
    for (int k = 0; k < 5; ++k) {
      if (s <= lengths[k] || k == 4) return Point(corners[k] + (corners[k + 1] - corners[k]) * (s / lengths[k]));
      s -= lengths[k];
    }
    return corners[5];
  };
  std::vector<SpectralElement1D> els;
  for (int e = 0; e < elements; ++e) {
    SpectralElement1D el;
    el.order = degree;
    const double s0 = 8.0 * e / elements;
    const double s1 = 8.0 * (e + 1) / elements;
    const Point a = at(s0);
    const Point b = at(s1);
    for (double g : gll) el.nodes.push_back(a + 0.5 * (g + 1.0) * (b - a));
    els.push_back(el);
  }
  return SBFEMDomain::from_elements(Point::Zero(), els, {m}, false);
}

SBFEMDomain wedge_domain(double start_angle, const std::vector<Wedge>& wedges, int degree,
                         std::vector<Material> materials, bool cracked) {
  if (wedges.empty()) throw Error(ErrorKind::InvalidArgument, "no wedges");
  const std::vector<double> gll = gauss_lobatto_points(degree);
  std::vector<SpectralElement1D> els;
  double t_begin = start_angle;
  for (const Wedge& w : wedges) {
    if (w.elements < 1 || !(w.end_angle > t_begin)) {
      throw Error(ErrorKind::InvalidArgument, "wedges must have elements and increasing end angles");
    }
    for (int e = 0; e < w.elements; ++e) {
      const double t0 = t_begin + (w.end_angle - t_begin) * e / w.elements;
      const double t1 = t_begin + (w.end_angle - t_begin) * (e + 1) / w.elements;
      SpectralElement1D el;
      el.order = degree;
      el.material_id = w.material;
      for (double g : gll) {
        const double t = t0 + 0.5 * (g + 1.0) * (t1 - t0);
        el.nodes.emplace_back(std::cos(t), std::sin(t));
      }
      els.push_back(el);
    }
    t_begin = w.end_angle;
  }
  if (std::abs(t_begin - start_angle - 2.0 * kPi) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "wedges must cover a full turn");
  }
  return SBFEMDomain::from_elements(Point::Zero(), els, std::move(materials), !cracked);
}

SBFEMDomain circle_crack_domain(int elements, int degree, const Material& above, const Material& below) {
  if (elements < 2) throw Error(ErrorKind::InvalidArgument, "need at least two elements");
  const int lower = elements / 2;
  return wedge_domain(-kPi, {{0.0, 1, lower}, {kPi, 0, elements - lower}}, degree, {above, below}, true);
}

SBFEMDomain triple_junction_domain(const Material& m1, const Material& m2, const Material& m3,
                                   int elements_per_quarter, int degree, bool cracked) {
  const int n = elements_per_quarter;
  return wedge_domain(0.0, {{kPi, 1, 2 * n}, {1.5 * kPi, 0, n}, {2.0 * kPi, 2, n}}, degree, {m1, m2, m3}, cracked);
}

Eigen::VectorXd williams_boundary_displacement(const SBFEMDomain& dom, double k1, double k2, const Material& m) {
  const auto& nodes = dom.nodes();
  Eigen::VectorXd u(dom.dof_count());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Point x = nodes[k] - dom.scaling_center();
    double theta = std::atan2(x.y(), x.x());
    if (!dom.closed() && k == 0) theta = -kPi;
    if (!dom.closed() && k + 1 == nodes.size()) theta = kPi;
    u.segment<2>(2 * static_cast<Eigen::Index>(k)) = williams_displacement(k1, k2, m, x.norm(), theta);
  }
  return u;
}

GlobalModel edge_crack_model(const PlateSpec& spec, double crack_length) {
  GlobalModel m = plate(spec);
  horizontal_interface(m, spec);
  m.crack = CrackGeometry({Point(0.0, 0.0), Point(crack_length, 0.0)});
  add_tension(m, spec.nx, spec.ny, spec.load);
  right_edge_restraints(m, spec.nx, spec.ny);
  return m;
}

GlobalModel center_crack_model(const PlateSpec& spec, double half_crack_length) {
  GlobalModel m = plate(spec);
  horizontal_interface(m, spec);
  m.crack = CrackGeometry({Point(0.0, 0.0), Point(half_crack_length, 0.0)});
  add_tension(m, spec.nx, spec.ny, spec.load);
  for (int j = 0; j <= spec.ny; ++j) m.constraints.push_back({node_index(spec.nx, 0, j), 0, 0.0});
  m.constraints.push_back({node_index(spec.nx, 0, 0), 1, 0.0});
  return m;
}

GlobalModel strip_model(const StripSpec& s) {
  if (s.nx < 2 || s.ny < 2) throw Error(ErrorKind::InvalidArgument, "mesh needs at least 2 x 2 elements");
  const double rows_below = s.ny * s.h2 / (s.h1 + s.h2);
  if (std::abs(rows_below - std::round(rows_below)) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "layer thicknesses must put the interface on a mesh line");
  }
  GlobalModel m;
  m.mesh = QuadMesh::structured(0.0, -s.h2, s.length, s.h1 + s.h2, s.nx, s.ny);
  // Snap the interface row exactly onto y = 0.
  const int jr = static_cast<int>(std::round(rows_below));
  for (int i = 0; i <= s.nx; ++i) m.mesh.nodes[node_index(s.nx, i, jr)].y() = 0.0;
  m.materials = {s.top, s.bottom};
  Polyline itf({Point(-s.length, 0.0), Point(2.0 * s.length, 0.0)});
  m.element_material = assign_materials(m.mesh, itf, 0, 1);
  m.interface = itf;
  m.crack = CrackGeometry({Point(0.0, 0.0), Point(s.crack_length, 0.0)});
  m.nodal_forces.push_back({node_index(s.nx, 0, s.ny), Eigen::Vector2d(0.0, s.load)});
  m.nodal_forces.push_back({node_index(s.nx, 0, 0), Eigen::Vector2d(0.0, -s.load)});
  for (int j = 0; j <= s.ny; ++j) {
    m.constraints.push_back({node_index(s.nx, s.nx, j), 0, 0.0});
    m.constraints.push_back({node_index(s.nx, s.nx, j), 1, 0.0});
  }
  return m;
}

GlobalModel terminating_crack_model(const PlateSpec& spec, double psi) {
  if (!(std::abs(psi) < 0.45 * kPi)) throw Error(ErrorKind::InvalidArgument, "crack inclination out of range");
  GlobalModel m = plate(spec);
  const double xi = 0.5 * spec.width;
  vertical_interface(m, spec, xi);
  const Point tip(xi, 0.0);
  const Point dir(std::cos(psi), std::sin(psi));
  m.crack = CrackGeometry({tip - (xi / dir.x()) * dir, tip});
  add_tension(m, spec.nx, spec.ny, spec.load);
  right_edge_restraints(m, spec.nx, spec.ny);
  return m;
}

GlobalModel deflected_crack_model(const PlateSpec& spec, double x_interface, double psi, double kink_length) {
  if (!(kink_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "kink length must be positive");
  GlobalModel m = plate(spec);
  vertical_interface(m, spec, x_interface);
  const Point corner(x_interface, 0.0);
  m.crack = CrackGeometry({Point(0.0, 0.0), corner, corner + kink_length * Point(std::cos(psi), std::sin(psi))});
  add_tension(m, spec.nx, spec.ny, spec.load);
  right_edge_restraints(m, spec.nx, spec.ny);
  return m;
}

GlobalModel patch_model(const PlateSpec& spec, const Eigen::Vector3d& strain) {
  GlobalModel m = plate(spec);
  m.materials = {m.materials[0]};
  m.element_material.assign(m.mesh.quads.size(), 0);
  for (int j = 0; j <= spec.ny; ++j) {
    for (int i = 0; i <= spec.nx; ++i) {
      if (i != 0 && j != 0 && i != spec.nx && j != spec.ny) continue;
      const int n = node_index(spec.nx, i, j);
      const Point& x = m.mesh.nodes[n];
      m.constraints.push_back({n, 0, strain[0] * x.x() + strain[2] * x.y()});
      m.constraints.push_back({n, 1, strain[2] * x.x() + strain[1] * x.y()});
    }
  }
  return m;
}

PatchError patch_error(const GlobalModel& model, const Solution& sol, const Eigen::Vector3d& strain) {
  // Engineering shear strain is 2 e_xy.
  const Eigen::Vector3d exact =
      constitutive_matrix(model.materials[0]) * Eigen::Vector3d(strain[0], strain[1], 2.0 * strain[2]);
  const double s_scale = exact.norm();
  PatchError e;
  double u_scale = 0.0;
  for (std::size_t n = 0; n < model.mesh.nodes.size(); ++n) {
    const Point& x = model.mesh.nodes[n];
    u_scale = std::max(u_scale, Eigen::Vector2d(strain[0] * x.x() + strain[2] * x.y(),
                                                strain[2] * x.x() + strain[1] * x.y()).norm());
  }
  for (std::size_t n = 0; n < model.mesh.nodes.size(); ++n) {
    if (sol.u_dof[n] < 0) continue;
    const Point& x = model.mesh.nodes[n];
    const Eigen::Vector2d u(strain[0] * x.x() + strain[2] * x.y(), strain[2] * x.x() + strain[1] * x.y());
    e.displacement = std::max(e.displacement, (sol.nodal_displacement(model, static_cast<int>(n)) - u).norm() / u_scale);
  }
  const auto& classes = sol.classification.classes;
  for (std::size_t q = 0; q < model.mesh.quads.size(); ++q) {
    if (classes[q] == ElementClass::ScaledBoundary) continue;
    for (double s : {-0.5, 0.5}) {
      for (double t : {-0.5, 0.5}) {
        e.fe_stress = std::max(e.fe_stress, (element_stress(model, sol, q, s, t) - exact).norm() / s_scale);
      }
    }
  }
  const SBFEMDomain& dom = sol.region.domain;
  for (std::size_t el = 0; el < dom.elements().size(); ++el) {
    for (double xi : {0.25, 0.75, 1.0}) {
      for (double eta : {-0.5, 0.5}) {
        const StressSample s = stress_field(dom, sol.modes, sol.constants, xi, el, eta);
        e.sbfem_stress = std::max(e.sbfem_stress, (s.cartesian - exact).norm() / s_scale);
      }
    }
  }
  return e;
}

TipAnalysis analyze_tip(const GlobalModel& model, const SBFEMRegionSpec& spec, double l_char) {
  if (!model.crack) throw Error(ErrorKind::InvalidArgument, "the model has no crack");
  TipAnalysis out;
  out.solution = assemble_and_solve(model, spec);
  const SBFEMDomain& dom = out.solution.region.domain;
  const ChainNode& mouth = out.solution.region.chain.front();
  const Point mp = (1.0 - mouth.t) * model.mesh.nodes[mouth.node_a] + mouth.t * model.mesh.nodes[mouth.node_b];
  const Point chord = model.crack->tip() - mp;
  const double angle = std::atan2(chord.y(), chord.x());
  out.crack_angle = angle;
  const double eps = front_oscillatory_index(dom, angle);
  out.state = fracture_state(dom, out.solution.modes, out.solution.constants, angle, eps, l_char);
  return out;
}

std::vector<ProfilePoint> stress_ahead_of_tip(const Solution& sol, double crack_angle, int samples) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  const SBFEMDomain& dom = sol.region.domain;
  const FrontLocation loc = locate_front(dom, crack_angle);
  std::vector<ProfilePoint> out;
  for (int k = 1; k <= samples; ++k) {
    const double xi = static_cast<double>(k) / samples;
    const StressSample s = stress_field(dom, sol.modes, sol.constants, xi, loc.element, loc.eta);
    out.push_back({xi * loc.l0, rotate_stress(s.cartesian, crack_angle)[1]});
  }
  return out;
}

}  // namespace xsbfem
