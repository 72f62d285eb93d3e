#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "xsbfem/materials.hpp"
#include "xsbfem/sbfem.hpp"

namespace xsbfem {

/// Indices of modes with 0 < Re(mu) < 1 (stress unbounded at the centre).
std::vector<int> singular_modes(const ModalSolution& ms);

/// Indices of stress-carrying modes with mu == 1 (T-stress). Rotation modes,
/// whose stress mode norm is below 1e-8 of the largest mu == 1 column, are dropped.
std::vector<int> t_stress_modes(const SBFEMDomain& dom, const ModalSolution& ms);

/// Orders of singularity 1 - mu of the singular modes, sorted by real part
/// descending. Conjugate pairs appear once with a non-negative imaginary part.
std::vector<std::complex<double>> singularity_orders(const ModalSolution& ms);

/// Largest Re(mu) among the singular modes (the exponent the convergence
/// tables report). Throws Error(MissingSingularity) when there is none.
double dominant_singular_exponent(const ModalSolution& ms);

/// True when a singular exponent has a non-negligible imaginary part.
bool is_oscillatory(const ModalSolution& ms);

enum class FrontSide { Any, Above, Below };

/// Position on the boundary where the ray theta = 0 (the crack extension
/// direction `crack_angle`) meets it.
struct FrontLocation {
  std::size_t element = 0;
  double eta = 0.0;
  double l0 = 0.0;  // distance from the scaling centre to the boundary along theta = 0
};

/// When theta = 0 falls on a node shared by two elements, `side` picks the
/// element on theta > 0 (Above) or theta < 0 (Below).
FrontLocation locate_front(const SBFEMDomain& dom, double crack_angle, FrontSide side = FrontSide::Any);

/// Singular part of the hoop and shear stress at (r = L0, theta = 0).
struct FrontStress {
  double sigma_tt = 0.0;
  double tau_rt = 0.0;
  double l0 = 0.0;
};

/// Throws Error(MissingSingularity) without singular modes.
FrontStress singular_stress_at_front(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                                     double crack_angle);

struct StressIntensity {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// K = sqrt(2 pi L0) (sigma_tt, tau_rt).
StressIntensity sif_homogeneous(const FrontStress& s);

/// Same, but throws Error(WrongDefinition) when the modes are oscillatory.
StressIntensity sif_homogeneous(const FrontStress& s, const ModalSolution& ms);

/// K = sqrt(2 pi L0) R (sigma_tt, tau_rt) with
/// R = [[cos w, sin w], [-sin w, cos w]], w = eps ln(L0 / L).
/// Throws Error(InvalidArgument) for L <= 0.
StressIntensity sif_interface(const FrontStress& s, double eps, double characteristic_length);

/// Stress parallel to the crack from the mu == 1 modes at theta = 0 on the
/// requested side. Throws Error(Degenerate) if there is no such mode.
double t_stress(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c, double crack_angle,
                FrontSide side = FrontSide::Any);

struct AngularModeSample {
  double theta = 0.0;                                     // relative to the crack direction
  std::vector<Eigen::Vector3cd> values;                   // per requested mode, (sxx, syy, sxy) at r = 1
};

/// Angular variation r_eta^(1 - mu) psi_sigma(eta) of the listed modes at every
/// boundary node, ordered by theta. With `normalize`, each mode is divided by
/// its sigma_yy at theta = 0.
std::vector<AngularModeSample> angular_distribution(const SBFEMDomain& dom, const ModalSolution& ms,
                                                    const std::vector<int>& modes, double crack_angle,
                                                    bool normalize = false);

/// Angular variation of the combined field sum_i c_i r_eta^(1 - mu_i) psi_i over
/// `modes`, in crack-aligned Cartesian components. One real 3-vector per node.
struct AngularFieldSample {
  double theta = 0.0;
  Eigen::Vector3d stress;
};
std::vector<AngularFieldSample> angular_field(const SBFEMDomain& dom, const ModalSolution& ms,
                                              const IntegrationConstants& c, const std::vector<int>& modes,
                                              double crack_angle);

/// Fracture parameters at one tip.
struct FractureState {
  double k1 = 0.0;
  double k2 = 0.0;
  double t_stress_side1 = 0.0;  // theta = 0+
  double t_stress_side2 = 0.0;  // theta = 0-
  std::vector<std::complex<double>> orders;
  double l0 = 0.0;
  double l_char = 0.0;
  double eps = 0.0;
};

/// Oscillatory index of the materials meeting at theta = 0+ and 0-, zero when
/// they are the same.
double front_oscillatory_index(const SBFEMDomain& dom, double crack_angle);

/// SIFs use the interface definition with `l_char` when `eps` is non-zero and
/// the homogeneous one otherwise.
FractureState fracture_state(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                             double crack_angle, double eps, double l_char);

/// Near-tip displacement of a crack along the negative x-axis.
Eigen::Vector2d williams_displacement(double k1, double k2, const Material& m, double r, double theta);

/// Near-tip stress (sxx, syy, sxy) of a crack along the negative x-axis.
Eigen::Vector3d williams_stress(double k1, double k2, double r, double theta);

/// Rotates a Voigt stress vector into a frame turned by `angle`.
Eigen::Vector3d rotate_stress(const Eigen::Vector3d& s, double angle);

}  // namespace xsbfem
