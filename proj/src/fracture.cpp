#include "xsbfem/fracture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "xsbfem/error.hpp"

namespace xsbfem {

namespace {

constexpr double kExponentTol = 1e-6;
constexpr double kRotationFilter = 1e-8;
constexpr double kNodeTol = 1e-10;

using cd = std::complex<double>;

bool is_unit(const cd& mu) { return std::abs(mu - 1.0) <= kExponentTol; }

// Polar angle of a boundary point relative to the crack direction, continued
// along the element from its start so that elements touching the mouth stay monotone.
struct AngleTrack {
  double start = 0.0;
  double raw_start = 0.0;
  double at(double raw) const { return start + wrap_angle(raw - raw_start); }
};


struct Candidate {
  std::size_t element;
  double eta;
};

std::vector<Candidate> front_candidates(const SBFEMDomain& dom, double crack_angle) {
  std::vector<Candidate> out;
  for (std::size_t e = 0; e < dom.elements().size(); ++e) {
    const SpectralElement1D el = dom.element(e);
    const LobattoBasis basis(el.order);
    const double raw0 = geometric_operators(el, basis, -1.0).theta;
    const double raw1 = geometric_operators(el, basis, 1.0).theta;
    AngleTrack track{wrap_angle(raw0 - crack_angle), raw0};
    double a = track.start;
    double b = track.at(raw1);
    // An element starting on the mouth may report +pi for its first node.
    if (a > 0.0 && b > std::numbers::pi) {
      a -= 2.0 * std::numbers::pi;
      b -= 2.0 * std::numbers::pi;
      track.start -= 2.0 * std::numbers::pi;
    }
    if (std::abs(a) <= kNodeTol) {
      out.push_back({e, -1.0});
      continue;
    }
    if (std::abs(b) <= kNodeTol) {
      out.push_back({e, 1.0});
      continue;
    }
    if (!(a < 0.0 && b > 0.0)) continue;
    double lo = -1.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double t = track.at(geometric_operators(el, basis, mid).theta);
      (t < 0.0 ? lo : hi) = mid;
    }
    out.push_back({e, 0.5 * (lo + hi)});
  }
  return out;
}

Eigen::Vector3cd combined_stress(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                                 const std::vector<int>& modes, std::size_t e, double eta) {
  const Eigen::MatrixXcd psi = stress_modes(dom, ms, e, eta);
  Eigen::Vector3cd s = Eigen::Vector3cd::Zero();
  for (int i : modes) s += psi.col(i) * c.values[i];
  return s;
}

}  // namespace

std::vector<int> singular_modes(const ModalSolution& ms) {
  std::vector<int> out;
  for (int i = 0; i < ms.size(); ++i) {
    const cd mu = ms.exponents[i];
    if (mu.real() > kExponentTol && mu.real() < 1.0 - kExponentTol) out.push_back(i);
  }
  return out;
}

std::vector<int> t_stress_modes(const SBFEMDomain& dom, const ModalSolution& ms) {
  std::vector<int> unit;
  for (int i = 0; i < ms.size(); ++i) {
    if (is_unit(ms.exponents[i])) unit.push_back(i);
  }
  if (unit.empty()) return {};
  // Stress-mode norms over all element nodes.
  std::vector<double> norms(unit.size(), 0.0);
  for (std::size_t e = 0; e < dom.elements().size(); ++e) {
    const SpectralElement1D el = dom.element(e);
    const LobattoBasis basis(el.order);
    for (double eta : basis.nodes()) {
      const Eigen::MatrixXcd psi = stress_modes(dom, ms, e, eta);
      for (std::size_t k = 0; k < unit.size(); ++k) norms[k] += psi.col(unit[k]).squaredNorm();
    }
  }
  const double top = std::sqrt(*std::max_element(norms.begin(), norms.end()));
  std::vector<int> out;
  for (std::size_t k = 0; k < unit.size(); ++k) {
    if (std::sqrt(norms[k]) > kRotationFilter * top) out.push_back(unit[k]);
  }
  return out;
}

std::vector<cd> singularity_orders(const ModalSolution& ms) {
  std::vector<cd> out;
  for (int i : singular_modes(ms)) {
    const cd mu = ms.exponents[i];
    if (mu.imag() < -kExponentTol) continue;  // reported through its conjugate
    out.emplace_back(1.0 - mu.real(), std::abs(mu.imag()));
  }
  std::sort(out.begin(), out.end(), [](const cd& a, const cd& b) { return a.real() > b.real(); });
  return out;
}

double dominant_singular_exponent(const ModalSolution& ms) {
  const std::vector<int> idx = singular_modes(ms);
  if (idx.empty()) throw Error(ErrorKind::MissingSingularity, "no singular modes");
  double best = 0.0;
  for (int i : idx) best = std::max(best, ms.exponents[i].real());
  return best;
}

bool is_oscillatory(const ModalSolution& ms) {
  for (int i : singular_modes(ms)) {
    if (std::abs(ms.exponents[i].imag()) > kExponentTol) return true;
  }
  return false;
}

FrontLocation locate_front(const SBFEMDomain& dom, double crack_angle, FrontSide side) {
  const std::vector<Candidate> cands = front_candidates(dom, crack_angle);
  if (cands.empty()) throw Error(ErrorKind::Geometry, "the crack direction does not meet the SBFEM boundary");
  Candidate pick = cands.front();
  for (const Candidate& c : cands) {
    const bool interior = std::abs(c.eta) < 1.0;
    if (interior || (side == FrontSide::Above && c.eta == -1.0) || (side == FrontSide::Below && c.eta == 1.0)) {
      pick = c;
      break;
    }
  }
  const SpectralElement1D el = dom.element(pick.element);
  return {pick.element, pick.eta, geometric_operators(el, pick.eta).r};
}

FrontStress singular_stress_at_front(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                                     double crack_angle) {
  const std::vector<int> modes = singular_modes(ms);
  if (modes.empty()) throw Error(ErrorKind::MissingSingularity, "no singular modes in the modal solution");
  // On a node shared by two elements the tractions of both sides are averaged.
  std::vector<FrontLocation> locs;
  locs.push_back(locate_front(dom, crack_angle, FrontSide::Above));
  const FrontLocation below = locate_front(dom, crack_angle, FrontSide::Below);
  if (below.element != locs[0].element) locs.push_back(below);
  FrontStress out;
  for (const FrontLocation& loc : locs) {
    const Eigen::Vector3cd s = combined_stress(dom, ms, c, modes, loc.element, loc.eta);
    const StressSample p = polar_components(s.real(), crack_angle);
    out.sigma_tt += p.sigma_tt / static_cast<double>(locs.size());
    out.tau_rt += p.tau_rt / static_cast<double>(locs.size());
    out.l0 += loc.l0 / static_cast<double>(locs.size());
  }
  return out;
}

StressIntensity sif_homogeneous(const FrontStress& s) {
  const double f = std::sqrt(2.0 * std::numbers::pi * s.l0);
  return {f * s.sigma_tt, f * s.tau_rt};
}

StressIntensity sif_homogeneous(const FrontStress& s, const ModalSolution& ms) {
  if (is_oscillatory(ms)) {
    throw Error(ErrorKind::WrongDefinition, "oscillatory singular exponents: use the interface definition");
  }
  return sif_homogeneous(s);
}

StressIntensity sif_interface(const FrontStress& s, double eps, double characteristic_length) {
  if (!(characteristic_length > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "characteristic length must be positive");
  }
  const double w = eps * std::log(s.l0 / characteristic_length);
  const double f = std::sqrt(2.0 * std::numbers::pi * s.l0);
  const double cw = std::cos(w);
  const double sw = std::sin(w);
  return {f * (cw * s.sigma_tt + sw * s.tau_rt), f * (-sw * s.sigma_tt + cw * s.tau_rt)};
}

double t_stress(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c, double crack_angle,
                FrontSide side) {
  const std::vector<int> modes = t_stress_modes(dom, ms);
  if (modes.empty()) throw Error(ErrorKind::Degenerate, "no stress-carrying mode with mu = 1");
  const FrontLocation loc = locate_front(dom, crack_angle, side);
  const Eigen::Vector3cd s = combined_stress(dom, ms, c, modes, loc.element, loc.eta);
  return rotate_stress(s.real(), crack_angle)[0];
}

double front_oscillatory_index(const SBFEMDomain& dom, double crack_angle) {
  const FrontLocation above = locate_front(dom, crack_angle, FrontSide::Above);
  const FrontLocation below = locate_front(dom, crack_angle, FrontSide::Below);
  const Material& m1 = dom.materials().at(dom.elements()[above.element].material_id);
  const Material& m2 = dom.materials().at(dom.elements()[below.element].material_id);
  return oscillatory_index(BimaterialPair(m1, m2));
}

FractureState fracture_state(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                             double crack_angle, double eps, double l_char) {
  FractureState st;
  st.orders = singularity_orders(ms);
  const FrontStress fs = singular_stress_at_front(dom, ms, c, crack_angle);
  const StressIntensity k = eps != 0.0 ? sif_interface(fs, eps, l_char) : sif_homogeneous(fs);
  st.k1 = k.k1;
  st.k2 = k.k2;
  st.l0 = fs.l0;
  st.l_char = l_char;
  st.eps = eps;
  st.t_stress_side1 = t_stress(dom, ms, c, crack_angle, FrontSide::Above);
  st.t_stress_side2 = t_stress(dom, ms, c, crack_angle, FrontSide::Below);
  return st;
}

std::vector<AngularModeSample> angular_distribution(const SBFEMDomain& dom, const ModalSolution& ms,
                                                    const std::vector<int>& modes, double crack_angle,
                                                    bool normalize) {
  for (int i : modes) {
    if (i < 0 || i >= ms.size()) throw Error(ErrorKind::InvalidArgument, "mode index out of range");
  }
  auto sample = [&](std::size_t e, double eta) {
    const SpectralElement1D el = dom.element(e);
    const GeometricOperators g = geometric_operators(el, eta);
    const Eigen::MatrixXcd psi = stress_modes(dom, ms, e, eta);
    AngularModeSample s;
    s.theta = wrap_angle(g.theta - crack_angle);
    for (int i : modes) {
      const Eigen::Vector3cd v = psi.col(i) * radial_power(g.r, 1.0 - ms.exponents[i]);
      const Eigen::Vector3d re = rotate_stress(v.real(), crack_angle);
      const Eigen::Vector3d im = rotate_stress(v.imag(), crack_angle);
      s.values.push_back(re.cast<cd>() + cd(0.0, 1.0) * im.cast<cd>());
    }
    return s;
  };
  std::vector<AngularModeSample> out;
  for (std::size_t e = 0; e < dom.elements().size(); ++e) {
    const LobattoBasis basis(dom.elements()[e].order());
    for (double eta : basis.nodes()) out.push_back(sample(e, eta));
  }
  // The mouth nodes sit at +-pi; keep the chain order by mapping the first to -pi.
  if (!out.empty() && out.front().theta > 0.0) out.front().theta -= 2.0 * std::numbers::pi;
  std::stable_sort(out.begin(), out.end(),
                   [](const AngularModeSample& a, const AngularModeSample& b) { return a.theta < b.theta; });
  if (normalize) {
    const FrontLocation loc = locate_front(dom, crack_angle);
    const AngularModeSample ref = sample(loc.element, loc.eta);
    for (AngularModeSample& s : out) {
      for (std::size_t k = 0; k < modes.size(); ++k) {
        const cd d = ref.values[k][1];
        if (std::abs(d) > 0.0) s.values[k] /= d;
      }
    }
  }
  return out;
}

std::vector<AngularFieldSample> angular_field(const SBFEMDomain& dom, const ModalSolution& ms,
                                              const IntegrationConstants& c, const std::vector<int>& modes,
                                              double crack_angle) {
  const std::vector<AngularModeSample> raw = angular_distribution(dom, ms, modes, crack_angle, false);
  std::vector<AngularFieldSample> out;
  out.reserve(raw.size());
  for (const AngularModeSample& s : raw) {
    Eigen::Vector3cd sum = Eigen::Vector3cd::Zero();
    for (std::size_t k = 0; k < modes.size(); ++k) sum += s.values[k] * c.values[modes[k]];
    out.push_back({s.theta, sum.real()});
  }
  return out;
}

Eigen::Vector2d williams_displacement(double k1, double k2, const Material& m, double r, double theta) {
  if (r < 0.0) throw Error(ErrorKind::InvalidArgument, "radius must be non-negative");
  const double kap = kolosov(m);
  const double f = std::sqrt(r / (2.0 * std::numbers::pi)) / (2.0 * m.shear_modulus());
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double ux = k1 * f * c * (kap - 1.0 + 2.0 * s * s) + k2 * f * s * (kap + 1.0 + 2.0 * c * c);
  const double uy = k1 * f * s * (kap + 1.0 - 2.0 * c * c) - k2 * f * c * (kap - 1.0 - 2.0 * s * s);
  return {ux, uy};
}

Eigen::Vector3d williams_stress(double k1, double k2, double r, double theta) {
  const double f = 1.0 / std::sqrt(2.0 * std::numbers::pi * r);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double c3 = std::cos(1.5 * theta);
  const double s3 = std::sin(1.5 * theta);
  const double sxx = k1 * f * c * (1.0 - s * s3) - k2 * f * s * (2.0 + c * c3);
  const double syy = k1 * f * c * (1.0 + s * s3) + k2 * f * s * c * c3;
  const double sxy = k1 * f * s * c * c3 + k2 * f * c * (1.0 - s * s3);
  return {sxx, syy, sxy};
}

Eigen::Vector3d rotate_stress(const Eigen::Vector3d& s, double angle) {
  const double c = std::cos(angle);
  const double sn = std::sin(angle);
  return {s[0] * c * c + s[1] * sn * sn + 2.0 * s[2] * sn * c, s[0] * sn * sn + s[1] * c * c - 2.0 * s[2] * sn * c,
          (s[1] - s[0]) * sn * c + s[2] * (c * c - sn * sn)};
}

}  // namespace xsbfem
