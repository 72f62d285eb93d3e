#include "xsbfem/sbfem.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "xsbfem/error.hpp"

namespace xsbfem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative tolerance splitting Re(lambda) < 0 from the zero cluster.
constexpr double kSelectionTol = 1e-8;

}  // namespace

SBFEMDomain::SBFEMDomain(Point scaling_center, std::vector<Point> nodes, std::vector<BoundaryElement> elements,
                         std::vector<Material> materials)
    : center_(std::move(scaling_center)),
      nodes_(std::move(nodes)),
      elements_(std::move(elements)),
      materials_(std::move(materials)) {
  if (elements_.empty()) throw Error(ErrorKind::InvalidDomain, "domain has no boundary elements");
  if (materials_.empty()) throw Error(ErrorKind::InvalidDomain, "domain has no materials");
  const int nn = static_cast<int>(nodes_.size());
  std::vector<int> uses(nodes_.size(), 0);
  for (const BoundaryElement& el : elements_) {
    if (el.order() < 1) throw Error(ErrorKind::InvalidOrder, "boundary element needs at least two nodes");
    if (el.material_id < 0 || el.material_id >= static_cast<int>(materials_.size())) {
      throw Error(ErrorKind::InvalidDomain, "boundary element references an unknown material");
    }
    for (int n : el.nodes) {
      if (n < 0 || n >= nn) throw Error(ErrorKind::InvalidDomain, "boundary element references an unknown node");
      ++uses[n];
    }
  }
  for (std::size_t i = 0; i < uses.size(); ++i) {
    if (uses[i] == 0) throw Error(ErrorKind::InvalidDomain, "node not referenced by any boundary element");
  }
  closed_ = elements_.front().nodes.front() == elements_.back().nodes.back();

  // Visibility: positive Jacobian along every element, total sweep <= 2 pi.
  double swept = 0.0;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const SpectralElement1D el = element(e);
    const LobattoBasis basis(el.order);
    const int samples = 4 * (el.order + 1);
    double prev_theta = 0.0;
    for (int k = 0; k <= samples; ++k) {
      const double eta = -1.0 + 2.0 * k / samples;
      GeometricOperators g;
      try {
        g = geometric_operators(el, basis, eta);
      } catch (const Error& err) {
        std::ostringstream msg;
        msg << "boundary element " << e << " is not visible from the scaling centre: " << err.what();
        throw Error(ErrorKind::InvalidDomain, msg.str());
      }
      if (k > 0) swept += wrap_angle(g.theta - prev_theta);
      prev_theta = g.theta;
    }
  }
  swept_ = swept;
  if (swept > kTwoPi * (1.0 + 1e-9)) {
    throw Error(ErrorKind::InvalidDomain, "boundary wraps more than once around the scaling centre");
  }
}

SBFEMDomain SBFEMDomain::from_elements(Point scaling_center, const std::vector<SpectralElement1D>& elements,
                                       std::vector<Material> materials, bool closed) {
  std::vector<Point> nodes;
  std::vector<BoundaryElement> connectivity;
  for (const SpectralElement1D& el : elements) {
    el.validate();
    BoundaryElement be;
    be.material_id = el.material_id;
    for (std::size_t i = 0; i < el.nodes.size(); ++i) {
      if (i == 0 && !nodes.empty()) {
        be.nodes.push_back(static_cast<int>(nodes.size()) - 1);
        continue;
      }
      nodes.push_back(el.nodes[i]);
      be.nodes.push_back(static_cast<int>(nodes.size()) - 1);
    }
    connectivity.push_back(std::move(be));
  }
  if (closed && !connectivity.empty()) {
    nodes.pop_back();
    connectivity.back().nodes.back() = 0;
  }
  return SBFEMDomain(std::move(scaling_center), std::move(nodes), std::move(connectivity), std::move(materials));
}

SpectralElement1D SBFEMDomain::element(std::size_t e) const {
  const BoundaryElement& be = elements_.at(e);
  SpectralElement1D el;
  el.order = be.order();
  el.material_id = be.material_id;
  el.nodes.reserve(be.nodes.size());
  for (int n : be.nodes) el.nodes.push_back(nodes_[n] - center_);
  return el;
}

CoefficientMatrices assemble_coefficients(const SBFEMDomain& dom) {
  const int n = dom.dof_count();
  CoefficientMatrices c{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (std::size_t e = 0; e < dom.elements().size(); ++e) {
    const SpectralElement1D el = dom.element(e);
    const CoefficientTriple t = coefficient_matrices(el, constitutive_matrix(dom.materials()[el.material_id]));
    const std::vector<int>& conn = dom.elements()[e].nodes;
    const int m = static_cast<int>(conn.size());
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            const int r = 2 * conn[a] + i;
            const int s = 2 * conn[b] + j;
            c.e0(r, s) += t.e0(2 * a + i, 2 * b + j);
            c.e1(r, s) += t.e1(2 * a + i, 2 * b + j);
            c.e2(r, s) += t.e2(2 * a + i, 2 * b + j);
          }
        }
      }
    }
  }
  return c;
}

Eigen::MatrixXd hamiltonian(const CoefficientMatrices& c) {
  const Eigen::Index n = c.e0.rows();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectrum(c.e0, Eigen::EigenvaluesOnly);
  const double lo = spectrum.eigenvalues().minCoeff();
  const double hi = spectrum.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) {
    std::ostringstream msg;
    msg << "E0 is numerically singular (eigenvalue range " << lo << " .. " << hi << ")";
    throw Error(ErrorKind::IllConditioned, msg.str());
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(c.e0);
  const Eigen::MatrixXd e0_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd e0_inv_e1t = e0_inv * c.e1.transpose();
  Eigen::MatrixXd z(2 * n, 2 * n);
  z.topLeftCorner(n, n) = e0_inv_e1t;
  z.topRightCorner(n, n) = -e0_inv;
  z.bottomLeftCorner(n, n) = c.e1 * e0_inv_e1t - c.e2;
  z.bottomRightCorner(n, n) = -c.e1 * e0_inv;
  return z;
}

namespace {

struct Eigenpairs {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

Eigenpairs general_eigen(const Eigen::MatrixXd& a, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd work = a;  // column-major copy, overwritten by LAPACK
  std::vector<double> wr(n), wi(n);
  Eigen::MatrixXd vr(want_vectors ? n : 1, want_vectors ? n : 1);
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, work.data(), n,
                                        wr.data(), wi.data(), &dummy, 1, vr.data(), want_vectors ? n : 1);
  if (info != 0) {
    std::ostringstream msg;
    msg << "dgeev failed with info = " << info;
    throw Error(ErrorKind::ModeSelection, msg.str());
  }
  Eigenpairs out;
  out.values.resize(n);
  for (lapack_int i = 0; i < n; ++i) out.values[i] = {wr[i], wi[i]};
  if (!want_vectors) return out;
  out.vectors.resize(n, n);
  for (lapack_int j = 0; j < n; ++j) {
    if (wi[j] == 0.0) {
      out.vectors.col(j) = vr.col(j).cast<std::complex<double>>();
    } else {
      // Columns j, j+1 hold the real and imaginary parts of a conjugate pair.
      const Eigen::VectorXcd v = vr.col(j).cast<std::complex<double>>() +
                                 std::complex<double>(0.0, 1.0) * vr.col(j + 1).cast<std::complex<double>>();
      out.vectors.col(j) = v;
      out.vectors.col(j + 1) = v.conjugate();
      ++j;
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXcd hamiltonian_spectrum(const Eigen::MatrixXd& z) { return general_eigen(z, false).values; }

ModalSolution modal_solution(const Eigen::MatrixXd& z) {
  if (z.rows() != z.cols() || z.rows() % 4 != 0) {
    throw Error(ErrorKind::InvalidArgument, "Hamiltonian must be square with 2n rows, n even");
  }
  const Eigen::Index n = z.rows() / 2;
  const Eigenpairs eig = general_eigen(z, true);
  const double scale = eig.values.cwiseAbs().maxCoeff();

  std::vector<Eigen::Index> order(2 * n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eig.values[a].real() < eig.values[b].real();
  });

  // Exactly two rigid translations sit in the zero cluster of a bounded 2D
  // domain; the n - 2 most negative eigenvalues are the remaining modes.
  const Eigen::Index n_neg = n - 2;
  const double last = eig.values[order[n_neg - 1]].real();
  const double first_zero = std::abs(eig.values[order[n_neg]]);
  const double zero_bound = std::max(kSelectionTol * scale, 1e3 * std::sqrt(1e-16 * scale));
  if (!(last < -kSelectionTol * scale) || first_zero > zero_bound) {
    std::ostringstream msg;
    msg << "cannot split the spectrum: last bounded eigenvalue " << eig.values[order[n_neg - 1]]
        << ", next eigenvalue " << eig.values[order[n_neg]] << ", spectral radius " << scale;
    throw Error(ErrorKind::ModeSelection, msg.str());
  }

  ModalSolution ms;
  ms.exponents.resize(n);
  ms.phi_u.resize(n, n);
  ms.phi_q.resize(n, n);

  // Translations first: u uniform, q = 0.
  for (int comp = 0; comp < 2; ++comp) {
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index k = comp; k < n; k += 2) t[k] = 1.0;
    ms.phi_u.col(comp) = t / t.norm();
    ms.phi_q.col(comp).setZero();
    ms.exponents[comp] = 0.0;
  }

  // Remaining modes ordered by increasing Re(mu); conjugate partners stay adjacent
  // with the negative imaginary part first.
  std::vector<Eigen::Index> selected(order.begin(), order.begin() + n_neg);
  std::stable_sort(selected.begin(), selected.end(), [&](Eigen::Index a, Eigen::Index b) {
    const std::complex<double> la = eig.values[a];
    const std::complex<double> lb = eig.values[b];
    if (la.real() != lb.real()) return la.real() > lb.real();
    return -la.imag() < -lb.imag();
  });
  for (Eigen::Index k = 0; k < n_neg; ++k) {
    const Eigen::Index src = selected[k];
    Eigen::VectorXcd u = eig.vectors.col(src).head(n);
    Eigen::VectorXcd q = eig.vectors.col(src).tail(n);
    const double norm = u.norm();
    if (norm == 0.0) throw Error(ErrorKind::ModeSelection, "eigenvector with vanishing displacement part");
    ms.phi_u.col(k + 2) = u / norm;
    ms.phi_q.col(k + 2) = q / norm;
    ms.exponents[k + 2] = -eig.values[src];
  }

  // Nearly parallel eigenvectors of a clustered eigenvalue indicate a defective
  // (power-log) mode that this solver does not represent.
  for (Eigen::Index k = 3; k < n; ++k) {
    const std::complex<double> a = ms.exponents[k - 1];
    const std::complex<double> b = ms.exponents[k];
    if (std::abs(a - b) < 1e-8 * scale) {
      const double overlap = std::abs(ms.phi_u.col(k - 1).dot(ms.phi_u.col(k)));
      if (overlap > 1.0 - 1e-6) {
        std::ostringstream msg;
        msg << "near-defective eigenvalue cluster at mu = " << b;
        ms.warnings.push_back(msg.str());
      }
    }
  }
  return ms;
}

ModalSolution solve_modes(const SBFEMDomain& dom) { return modal_solution(hamiltonian(assemble_coefficients(dom))); }

Eigen::MatrixXd stiffness(const ModalSolution& ms) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ms.phi_u.transpose());
  if (lu.rcond() < 1e-12) {
    std::ostringstream msg;
    msg << "displacement modes are numerically dependent (rcond " << lu.rcond() << ")";
    throw Error(ErrorKind::ModeSelection, msg.str());
  }
  // K Phi_u = Phi_q  <=>  Phi_u^T K^T = Phi_q^T
  const Eigen::MatrixXcd kt = lu.solve(ms.phi_q.transpose());
  const Eigen::MatrixXcd k = kt.transpose();
  const double re = k.real().norm();
  const double im = k.imag().norm();
  if (im > 1e-6 * re) {
    std::ostringstream msg;
    msg << "stiffness has imaginary residue " << im / re << " (relative)";
    throw Error(ErrorKind::ModeSelection, msg.str());
  }
  return k.real();
}

IntegrationConstants integration_constants(const ModalSolution& ms, const Eigen::VectorXd& u_b) {
  if (u_b.size() != ms.phi_u.rows()) {
    throw Error(ErrorKind::InvalidArgument, "boundary displacement vector has the wrong length");
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ms.phi_u);
  if (lu.rcond() < 1e-12) throw Error(ErrorKind::ModeSelection, "displacement modes are numerically dependent");
  return {lu.solve(u_b.cast<std::complex<double>>())};
}

std::complex<double> radial_power(double xi, std::complex<double> mu) {
  if (mu == std::complex<double>(0.0, 0.0)) return 1.0;
  const double lx = std::log(xi);
  const double mag = std::exp(mu.real() * lx);
  return {mag * std::cos(mu.imag() * lx), mag * std::sin(mu.imag() * lx)};
}

namespace {

Eigen::MatrixXcd element_rows(const SBFEMDomain& dom, const ModalSolution& ms, std::size_t element) {
  const std::vector<int>& conn = dom.elements().at(element).nodes;
  Eigen::MatrixXcd rows(2 * conn.size(), ms.size());
  for (std::size_t a = 0; a < conn.size(); ++a) {
    rows.row(2 * a) = ms.phi_u.row(2 * conn[a]);
    rows.row(2 * a + 1) = ms.phi_u.row(2 * conn[a] + 1);
  }
  return rows;
}

void check_xi(double xi) {
  if (!(xi > 0.0 && xi <= 1.0)) {
    std::ostringstream msg;
    msg << "radial coordinate must satisfy 0 < xi <= 1, got " << xi;
    throw Error(ErrorKind::OutOfDomain, msg.str());
  }
}

}  // namespace

Eigen::MatrixXcd stress_modes(const SBFEMDomain& dom, const ModalSolution& ms, std::size_t element, double eta) {
  const SpectralElement1D el = dom.element(element);
  const LobattoBasis basis(el.order);
  const GeometricOperators g = geometric_operators(el, basis, eta);
  const ShapeValues s = basis.evaluate(eta);
  const Eigen::MatrixXd b1 = g.b1 * interpolation_matrix(s.values);
  const Eigen::MatrixXd b2 = g.b2 * interpolation_matrix(s.derivatives);
  const Eigen::MatrixXcd rows = element_rows(dom, ms, element);
  const Eigen::Matrix3cd d = constitutive_matrix(dom.materials()[el.material_id]).cast<std::complex<double>>();
  return d * (b1.cast<std::complex<double>>() * rows * ms.exponents.asDiagonal() +
              b2.cast<std::complex<double>>() * rows);
}

Eigen::MatrixXcd displacement_modes(const SBFEMDomain& dom, const ModalSolution& ms, std::size_t element,
                                    double eta) {
  const SpectralElement1D el = dom.element(element);
  const ShapeValues s = LobattoBasis(el.order).evaluate(eta);
  return interpolation_matrix(s.values).cast<std::complex<double>>() * element_rows(dom, ms, element);
}

Eigen::Vector2d displacement_field(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                                   double xi, std::size_t element, double eta) {
  check_xi(xi);
  Eigen::VectorXcd scaled(ms.size());
  for (int i = 0; i < ms.size(); ++i) scaled[i] = radial_power(xi, ms.exponents[i]) * c.values[i];
  const Eigen::Vector2cd u = displacement_modes(dom, ms, element, eta) * scaled;
  return u.real();
}

StressSample polar_components(const Eigen::Vector3d& s, double theta) {
  StressSample out;
  out.cartesian = s;
  out.theta = theta;
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  out.sigma_rr = s[0] * c * c + s[1] * sn * sn + 2.0 * s[2] * sn * c;
  out.sigma_tt = s[0] * sn * sn + s[1] * c * c - 2.0 * s[2] * sn * c;
  out.tau_rt = (s[1] - s[0]) * sn * c + s[2] * (c * c - sn * sn);
  return out;
}

StressSample stress_field(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c, double xi,
                          std::size_t element, double eta, double reference_angle) {
  check_xi(xi);
  Eigen::VectorXcd scaled(ms.size());
  for (int i = 0; i < ms.size(); ++i) {
    // Translations carry no stress; skip xi^-1 for them.
    scaled[i] = ms.exponents[i] == std::complex<double>(0.0, 0.0)
                    ? std::complex<double>(0.0, 0.0)
                    : radial_power(xi, ms.exponents[i] - 1.0) * c.values[i];
  }
  const Eigen::Vector3cd sigma = stress_modes(dom, ms, element, eta) * scaled;
  const SpectralElement1D el = dom.element(element);
  const GeometricOperators g = geometric_operators(el, LobattoBasis(el.order), eta);
  StressSample out = polar_components(sigma.real(), g.theta);
  out.theta = wrap_angle(g.theta - reference_angle);
  out.position = dom.scaling_center() + xi * g.x;
  return out;
}

}  // namespace xsbfem
