#include "xsbfem/materials.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xsbfem/error.hpp"

namespace xsbfem {

Material::Material(double young_modulus, double poisson_ratio, PlaneState state)
    : young_(young_modulus), poisson_(poisson_ratio), state_(state) {
  if (!(young_modulus > 0.0) || !std::isfinite(young_modulus)) {
    std::ostringstream msg;
    msg << "Young's modulus must be positive, got " << young_modulus;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  if (!(poisson_ratio > -1.0 && poisson_ratio < 0.5)) {
    std::ostringstream msg;
    msg << "Poisson's ratio must lie in (-1, 0.5), got " << poisson_ratio;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

double Material::effective_modulus() const noexcept {
  return state_ == PlaneState::PlaneStrain ? young_ / (1.0 - poisson_ * poisson_) : young_;
}

Eigen::Matrix3d constitutive_matrix(const Material& m) {
  const double e = m.young_modulus();
  const double nu = m.poisson_ratio();
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  if (m.plane_state() == PlaneState::PlaneStress) {
    const double f = e / (1.0 - nu * nu);
    d(0, 0) = d(1, 1) = f;
    d(0, 1) = d(1, 0) = f * nu;
    d(2, 2) = f * (1.0 - nu) / 2.0;
  } else {
    const double f = e / ((1.0 + nu) * (1.0 - 2.0 * nu));
    d(0, 0) = d(1, 1) = f * (1.0 - nu);
    d(0, 1) = d(1, 0) = f * nu;
    d(2, 2) = f * (1.0 - 2.0 * nu) / 2.0;
  }
  return d;
}

double kolosov(const Material& m) {
  const double nu = m.poisson_ratio();
  return m.plane_state() == PlaneState::PlaneStress ? (3.0 - nu) / (1.0 + nu) : 3.0 - 4.0 * nu;
}

BimaterialPair::BimaterialPair(Material mat1, Material mat2) : mat1_(mat1), mat2_(mat2) {
  if (mat1.plane_state() != mat2.plane_state()) {
    throw Error(ErrorKind::InvalidArgument, "bimaterial pair mixes plane stress and plane strain");
  }
}

double dundurs_beta(const BimaterialPair& p) {
  const double mu1 = p.mat1().shear_modulus();
  const double mu2 = p.mat2().shear_modulus();
  const double k1 = kolosov(p.mat1());
  const double k2 = kolosov(p.mat2());
  return (mu1 * (k2 - 1.0) - mu2 * (k1 - 1.0)) / (mu1 * (k2 + 1.0) + mu2 * (k1 + 1.0));
}

double dundurs_beta_same_sign(const BimaterialPair& p) {
  const double mu1 = p.mat1().shear_modulus();
  const double mu2 = p.mat2().shear_modulus();
  const double k1 = kolosov(p.mat1());
  const double k2 = kolosov(p.mat2());
  return (mu1 * (k2 - 1.0) + mu2 * (k1 - 1.0)) / (mu1 * (k2 + 1.0) + mu2 * (k1 + 1.0));
}

double oscillatory_index(double beta) {
  if (!(std::abs(beta) < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "|beta| must be below 1");
  }
  return std::log((1.0 - beta) / (1.0 + beta)) / (2.0 * std::numbers::pi);
}

double oscillatory_index(const BimaterialPair& p) {
  if (p.homogeneous()) return 0.0;
  return oscillatory_index(dundurs_beta(p));
}

}  // namespace xsbfem
