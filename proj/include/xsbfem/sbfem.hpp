#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "xsbfem/boundary_elements.hpp"
#include "xsbfem/geometry.hpp"
#include "xsbfem/materials.hpp"

namespace xsbfem {

/// Connectivity of one boundary element into the domain node table.
struct BoundaryElement {
  std::vector<int> nodes;  // order + 1 node indices, counter-clockwise about the centre
  int material_id = 0;

  int order() const noexcept { return static_cast<int>(nodes.size()) - 1; }
};

/// Star-shaped region described by its boundary as seen from a scaling centre.
/// Crack faces are not discretised: a cracked domain is an open chain whose two
/// end nodes sit on the crack mouth.
class SBFEMDomain {
 public:
  /// Throws Error(InvalidDomain) for bad indices, clockwise or invisible
  /// elements, or boundaries sweeping more than a full turn.
  SBFEMDomain() = default;
  SBFEMDomain(Point scaling_center, std::vector<Point> nodes, std::vector<BoundaryElement> elements,
              std::vector<Material> materials);

  /// Builds the node table from consecutive spectral elements, merging shared
  /// end nodes. With `closed` the last element joins the first.
  static SBFEMDomain from_elements(Point scaling_center, const std::vector<SpectralElement1D>& elements,
                                   std::vector<Material> materials, bool closed);

  const Point& scaling_center() const noexcept { return center_; }
  const std::vector<Point>& nodes() const noexcept { return nodes_; }
  const std::vector<BoundaryElement>& elements() const noexcept { return elements_; }
  const std::vector<Material>& materials() const noexcept { return materials_; }
  bool closed() const noexcept { return closed_; }
  int dof_count() const noexcept { return 2 * static_cast<int>(nodes_.size()); }

  /// Element e in coordinates relative to the scaling centre.
  SpectralElement1D element(std::size_t e) const;

  /// Total polar angle swept by the boundary (2 pi for a closed loop).
  double swept_angle() const noexcept { return swept_; }

 private:
  Point center_ = Point::Zero();
  std::vector<Point> nodes_;
  std::vector<BoundaryElement> elements_;
  std::vector<Material> materials_;
  bool closed_ = false;
  double swept_ = 0.0;
};

struct CoefficientMatrices {
  Eigen::MatrixXd e0;
  Eigen::MatrixXd e1;
  Eigen::MatrixXd e2;
};

CoefficientMatrices assemble_coefficients(const SBFEMDomain& dom);

/// Z = [[E0^-1 E1^T, -E0^-1], [E1 E0^-1 E1^T - E2, -E1 E0^-1]].
/// Throws Error(IllConditioned) when cond(E0) exceeds 1e12.
Eigen::MatrixXd hamiltonian(const CoefficientMatrices& c);

/// Bounded-domain modes. Exponents follow u ~ xi^mu with Re(mu) >= 0, so the
/// stress of mode i varies as xi^(mu_i - 1).
struct ModalSolution {
  Eigen::VectorXcd exponents;
  Eigen::MatrixXcd phi_u;  // unit-norm columns
  Eigen::MatrixXcd phi_q;
  std::vector<std::string> warnings;

  int size() const noexcept { return static_cast<int>(exponents.size()); }
};

/// Eigen-decomposes Z and keeps the n modes bounded at the scaling centre.
/// The two rigid translations (a defective zero pair of Z) are inserted exactly.
/// Throws Error(ModeSelection) when the spectrum cannot be split cleanly.
ModalSolution modal_solution(const Eigen::MatrixXd& z);

/// assemble_coefficients -> hamiltonian -> modal_solution.
ModalSolution solve_modes(const SBFEMDomain& dom);

/// Full 2n x 2n spectrum of Z, unsorted (diagnostics and property checks).
Eigen::VectorXcd hamiltonian_spectrum(const Eigen::MatrixXd& z);

/// K = Phi_q Phi_u^-1. Throws Error(ModeSelection) if Phi_u is numerically
/// singular or the product is not real.
Eigen::MatrixXd stiffness(const ModalSolution& ms);

struct IntegrationConstants {
  Eigen::VectorXcd values;
};

/// c = Phi_u^-1 u_b.
IntegrationConstants integration_constants(const ModalSolution& ms, const Eigen::VectorXd& u_b);

/// Stress modes Psi_sigma(eta) = D (B1 Phi_u diag(mu) + B2 Phi_u) of one element (3 x n).
Eigen::MatrixXcd stress_modes(const SBFEMDomain& dom, const ModalSolution& ms, std::size_t element, double eta);

/// Displacement modes N(eta) Phi_u of one element (2 x n).
Eigen::MatrixXcd displacement_modes(const SBFEMDomain& dom, const ModalSolution& ms, std::size_t element,
                                    double eta);

/// Throws Error(OutOfDomain) unless 0 < xi <= 1.
Eigen::Vector2d displacement_field(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                                   double xi, std::size_t element, double eta);

struct StressSample {
  Point position;
  double theta = 0.0;           // polar angle about the scaling centre, measured from `reference_angle`
  Eigen::Vector3d cartesian;    // (sxx, syy, sxy)
  double sigma_rr = 0.0;
  double sigma_tt = 0.0;        // hoop stress
  double tau_rt = 0.0;
};

/// Cartesian and polar stress components from a Cartesian tensor, with the
/// polar frame rotated by `theta`.
StressSample polar_components(const Eigen::Vector3d& cartesian, double theta);

StressSample stress_field(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c, double xi,
                          std::size_t element, double eta, double reference_angle = 0.0);

/// xi^mu with xi^0 == 1.
std::complex<double> radial_power(double xi, std::complex<double> mu);

}  // namespace xsbfem
