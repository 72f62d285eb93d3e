#include "app/vtk.hpp"

#include <sstream>

#include "app/config.hpp"
#include "app/results.hpp"
#include "xsbfem/error.hpp"

namespace xsbfem::app {

std::string vtk_legacy(const GlobalModel& model, const Solution& sol, std::uint64_t config_hash) {
  const QuadMesh& mesh = model.mesh;
  std::ostringstream out;
  std::string header = header_line(config_hash);
  header.erase(0, 2);
  out << "# vtk DataFile Version 3.0\n" << header << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.nodes.size() << " double\n";
  for (const Point& p : mesh.nodes) out << format_number(p.x()) << ' ' << format_number(p.y()) << " 0\n";
  out << "CELLS " << mesh.quads.size() << ' ' << 5 * mesh.quads.size() << '\n';
  for (const auto& q : mesh.quads) out << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
  out << "CELL_TYPES " << mesh.quads.size() << '\n';
  for (std::size_t e = 0; e < mesh.quads.size(); ++e) out << "9\n";

  out << "POINT_DATA " << mesh.nodes.size() << "\nVECTORS displacement double\n";
  std::ostringstream condensed;
  for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
    Eigen::Vector2d u = Eigen::Vector2d::Zero();
    if (sol.u_dof[n] >= 0) {
      try {
        u = sol.nodal_displacement(model, static_cast<int>(n));
      } catch (const Error&) {
        u = sol.nodal_displacement(model, static_cast<int>(n), 1);  // node on the crack line
      }
    }
    out << format_number(u.x()) << ' ' << format_number(u.y()) << " 0\n";
    condensed << (sol.u_dof[n] < 0 ? 1 : 0) << '\n';
  }
  out << "SCALARS condensed int 1\nLOOKUP_TABLE default\n" << condensed.str();

  out << "CELL_DATA " << mesh.quads.size() << "\nSCALARS material int 1\nLOOKUP_TABLE default\n";
  for (int m : model.element_material) out << m << '\n';
  out << "SCALARS element_class int 1\nLOOKUP_TABLE default\n";
  for (ElementClass c : sol.classification.classes) out << static_cast<int>(c) << '\n';
  out << "VECTORS stress double\n";
  for (std::size_t e = 0; e < mesh.quads.size(); ++e) {
    Eigen::Vector3d s = Eigen::Vector3d::Zero();
    if (sol.classification.classes[e] != ElementClass::ScaledBoundary) {
      try {
        s = element_stress(model, sol, e, 0.0, 0.0);
      } catch (const Error&) {
        s = element_stress(model, sol, e, 0.01, 0.01);  // centroid on the crack
      }
    }
    out << format_number(s[0]) << ' ' << format_number(s[1]) << ' ' << format_number(s[2]) << '\n';
  }
  return out.str();
}

}  // namespace xsbfem::app
