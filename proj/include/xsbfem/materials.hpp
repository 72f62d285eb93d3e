#pragma once

#include <Eigen/Dense>

namespace xsbfem {

enum class PlaneState { PlaneStress, PlaneStrain };

/// Isotropic linear-elastic material under a 2D plane assumption.
class Material {
 public:
  /// Throws Error(InvalidArgument) unless E > 0 and -1 < nu < 0.5.
  Material(double young_modulus, double poisson_ratio, PlaneState state);

  double young_modulus() const noexcept { return young_; }
  double poisson_ratio() const noexcept { return poisson_; }
  PlaneState plane_state() const noexcept { return state_; }
  double shear_modulus() const noexcept { return young_ / (2.0 * (1.0 + poisson_)); }

  /// E for plane stress, E / (1 - nu^2) for plane strain.
  double effective_modulus() const noexcept;

  friend bool operator==(const Material&, const Material&) = default;

 private:
  double young_;
  double poisson_;
  PlaneState state_;
};

/// Voigt-ordered (xx, yy, xy) stiffness: stress = D * engineering strain.
Eigen::Matrix3d constitutive_matrix(const Material& m);

double kolosov(const Material& m);

/// Two materials bonded along an interface; mat1 occupies the side theta > 0.
class BimaterialPair {
 public:
  BimaterialPair(Material mat1, Material mat2);

  const Material& mat1() const noexcept { return mat1_; }
  const Material& mat2() const noexcept { return mat2_; }
  bool homogeneous() const noexcept { return mat1_ == mat2_; }

 private:
  Material mat1_;
  Material mat2_;
};

/// Second Dundurs parameter,
/// beta = (mu1 (k2 - 1) - mu2 (k1 - 1)) / (mu1 (k2 + 1) + mu2 (k1 + 1)).
/// Vanishes for identical materials and flips sign when the pair is swapped.
double dundurs_beta(const BimaterialPair& p);

/// The same-sign variant mu1 (k2 - 1) + mu2 (k1 - 1) over the same denominator.
/// Kept for comparison only: it equals (k - 1) / (k + 1) for identical
/// materials and does not reproduce the computed interface-crack exponents.
double dundurs_beta_same_sign(const BimaterialPair& p);

/// epsilon = ln((1 - beta) / (1 + beta)) / (2 pi). Requires |beta| < 1.
double oscillatory_index(double beta);

/// Oscillatory index of the pair; exactly 0 for identical materials.
double oscillatory_index(const BimaterialPair& p);

}  // namespace xsbfem
