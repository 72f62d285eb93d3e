#include "app/runners.hpp"

#include <cmath>
#include <numbers>

#include "xsbfem/benchmarks.hpp"
#include "xsbfem/error.hpp"
#include "xsbfem/fracture.hpp"
#include "xsbfem/growth.hpp"
#include "xsbfem/sbfem.hpp"

namespace xsbfem::app {
namespace {

constexpr double kPi = std::numbers::pi;
const Eigen::Vector3d kPatchStrain(1e-2, -5e-3, 2e-3);

PlateSpec plate_spec(const AnalysisConfig& c) {
  PlateSpec ps;
  ps.nx = c.nx;
  ps.ny = c.ny;
  ps.width = c.width;
  ps.height = c.height;
  ps.e_ratio = c.e_ratio;
  ps.poisson = c.poisson;
  ps.state = c.plane;
  ps.load = c.load;
  return ps;
}

double crack_length(const CrackGeometry& crack) {
  double a = 0.0;
  const auto v = crack.vertices();
  for (std::size_t i = 1; i < v.size(); ++i) a += (v[i] - v[i - 1]).norm();
  return a;
}

void add_orders(ResultTable& t, const std::string& name, const std::vector<std::complex<double>>& orders) {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    t.add(name, "order_" + std::to_string(i + 1) + "_re", orders[i].real());
    t.add(name, "order_" + std::to_string(i + 1) + "_im", orders[i].imag());
  }
}

void add_state(ResultTable& t, const std::string& name, const FractureState& st, double a) {
  const double f = std::sqrt(kPi * a);
  const double ko = std::hypot(st.k1, st.k2);
  t.add(name, "crack_length", a);
  t.add(name, "K_I", st.k1);
  t.add(name, "K_II", st.k2);
  t.add(name, "K_I_norm", st.k1 / f);
  t.add(name, "K_II_norm", st.k2 / f);
  t.add(name, "T_side1", st.t_stress_side1);
  t.add(name, "T_side2", st.t_stress_side2);
  if (ko > 0.0) {
    t.add(name, "T_norm_side1", st.t_stress_side1 * f / ko);
    t.add(name, "T_norm_side2", st.t_stress_side2 * f / ko);
  }
  t.add(name, "eps", st.eps);
  t.add(name, "l0", st.l0);
  add_orders(t, name, st.orders);
}

ResultSeries angular_series(const SBFEMDomain& dom, const ModalSolution& ms, const IntegrationConstants& c,
                            double crack_angle) {
  ResultSeries s{"angular", {"theta", "sigma_xx", "sigma_yy", "sigma_xy"}, {}};
  for (const auto& p : angular_field(dom, ms, c, singular_modes(ms), crack_angle)) {
    s.rows.push_back({p.theta, p.stress[0], p.stress[1], p.stress[2]});
  }
  return s;
}

ResultSeries mode_series(const SBFEMDomain& dom, const ModalSolution& ms) {
  ResultSeries s{"modes",
                 {"mode", "theta", "sigma_xx_re", "sigma_yy_re", "sigma_xy_re", "sigma_xx_im", "sigma_yy_im",
                  "sigma_xy_im"},
                 {}};
  const std::vector<int> modes = singular_modes(ms);
  for (const auto& p : angular_distribution(dom, ms, modes, 0.0)) {
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const Eigen::Vector3cd& v = p.values[k];
      s.rows.push_back({static_cast<double>(modes[k]), p.theta, v[0].real(), v[1].real(), v[2].real(), v[0].imag(),
                        v[1].imag(), v[2].imag()});
    }
  }
  return s;
}

}  // namespace

GlobalModel build_model(const AnalysisConfig& c) {
  const PlateSpec ps = plate_spec(c);
  const double psi = c.psi_deg * kPi / 180.0;
  switch (c.problem) {
    case ProblemKind::EdgeCrack: return edge_crack_model(ps, c.crack_length);
    case ProblemKind::CenterCrack: return center_crack_model(ps, c.crack_length);
    case ProblemKind::Terminating: return terminating_crack_model(ps, psi);
    case ProblemKind::Deflected: return deflected_crack_model(ps, c.interface_x, psi, c.kink_length);
    case ProblemKind::Patch: return patch_model(ps, kPatchStrain);
    case ProblemKind::Strip: {
      StripSpec s;
      s.nx = c.nx;
      s.ny = c.ny;
      s.length = c.strip_length;
      s.h1 = c.h1;
      s.h2 = c.h2;
      s.top = Material(c.top_e, c.top_poisson, c.plane);
      s.bottom = Material(c.bottom_e, c.bottom_poisson, c.plane);
      s.crack_length = c.crack_length;
      s.load = c.load;
      return strip_model(s);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown problem");
}

SBFEMRegionSpec region_spec(const AnalysisConfig& c) {
  SBFEMRegionSpec rs;
  rs.layers = c.layers;
  rs.shrink_to_fit = c.shrink_to_fit;
  if (c.problem == ProblemKind::Patch) rs.center = Point(0.5 * c.width, 0.0);
  return rs;
}

ResultTable run_analyze(const AnalysisConfig& c, std::optional<FieldOutput>* field) {
  ResultTable t;
  t.config_hash = c.hash;
  GlobalModel model = build_model(c);
  const SBFEMRegionSpec rs = region_spec(c);

  if (c.problem == ProblemKind::Patch) {
    Solution sol = assemble_and_solve(model, rs);
    const PatchError e = patch_error(model, sol, kPatchStrain);
    t.add(c.name, "patch_displacement_error", e.displacement);
    t.add(c.name, "patch_stress_error", std::max(e.fe_stress, e.sbfem_stress));
    t.add(c.name, "patch_sbfem_stress_error", e.sbfem_stress);
    t.add(c.name, "layers_used", sol.classification.layers);
    t.add(c.name, "system_size", sol.system_size);
    if (field) *field = FieldOutput{std::move(model), std::move(sol)};
    return t;
  }

  TipAnalysis res = analyze_tip(model, rs, c.l_char);
  add_state(t, c.name, res.state, crack_length(*model.crack));
  t.add(c.name, "crack_angle", res.crack_angle);
  t.add(c.name, "layers_used", res.solution.classification.layers);
  t.add(c.name, "system_size", res.solution.system_size);
  t.add(c.name, "residual", res.solution.residual);

  const Solution& sol = res.solution;
  t.series.push_back(angular_series(sol.region.domain, sol.modes, sol.constants, res.crack_angle));
  ResultSeries prof{"profile", {"r", "sigma_yy"}, {}};
  for (const auto& p : stress_ahead_of_tip(sol, res.crack_angle, c.profile_samples)) prof.rows.push_back({p.r, p.sigma_yy});
  t.series.push_back(std::move(prof));
  if (field) *field = FieldOutput{std::move(model), std::move(res.solution)};
  return t;
}

ResultTable run_singularity(const AnalysisConfig& c) {
  ResultTable t;
  t.config_hash = c.hash;
  const SingularityConfig& s = c.singularity;
  const Material base(1.0, c.poisson, c.plane);

  auto analyse = [&](const std::string& name, const SBFEMDomain& dom, bool with_modes) {
    const ModalSolution ms = solve_modes(dom);
    const auto orders = singularity_orders(ms);
    t.add(name, "singular_orders", static_cast<double>(orders.size()));
    add_orders(t, name, orders);
    if (with_modes && !orders.empty()) t.series.push_back(mode_series(dom, ms));
    return orders;
  };

  switch (s.domain) {
    case DomainKind::Circle: {
      const SBFEMDomain dom = s.cracked ? circle_crack_domain(s.elements, s.order, base, base)
                                        : wedge_domain(-kPi, {{kPi, 0, s.elements}}, s.order, {base}, false);
      analyse(c.name, dom, true);
      break;
    }
    case DomainKind::Square: {
      if (!s.cracked) throw Error(ErrorKind::NotSupported, "the square domain is always cracked");
      analyse(c.name, square_crack_domain(s.elements, s.order, base), true);
      break;
    }
    case DomainKind::Bimaterial: {
      const Material above(s.e_ratio, c.poisson, c.plane);
      const SBFEMDomain dom = circle_crack_domain(s.elements, s.order, above, base);
      const auto orders = analyse(c.name, dom, true);
      const double eps = std::abs(oscillatory_index(BimaterialPair(above, base)));
      t.add(c.name, "eps_closed_form", eps);
      if (!orders.empty()) {
        ResultRow r{c.name, "eps_numerical", orders.front().imag(), eps, "ok"};
        t.rows.push_back(r);
      }
      break;
    }
    case DomainKind::TripleJunction: {
      const Material m3(s.e3_ratio, c.poisson, c.plane);
      for (double e2 : s.e2_ratios) {
        const Material m2(e2, c.poisson, c.plane);
        const std::string name = c.name + "_E2_" + short_number(e2);
        const auto orders = analyse(name, triple_junction_domain(base, m2, m3, s.elements, s.order, s.cracked),
                                    s.e2_ratios.size() == 1);
        int real_orders = 0;
        for (const auto& o : orders) real_orders += std::abs(o.imag()) < 1e-8;
        t.add(name, "real_singular_orders", real_orders);
      }
      break;
    }
  }
  return t;
}

ResultTable run_propagate(const AnalysisConfig& c, std::optional<FieldOutput>* field) {
  if (!c.growth) throw Error(ErrorKind::Config, "[growth] section is required for propagate");
  if (c.problem == ProblemKind::Patch) throw Error(ErrorKind::Config, "[analysis] problem: patch has no crack");
  ResultTable t;
  t.config_hash = c.hash;
  GlobalModel model = build_model(c);
  const SBFEMRegionSpec rs = region_spec(c);
  const GrowthHistory h = propagate(model, rs, *c.growth);

  ResultSeries path{"path", {"step", "crack_length", "tip_x", "tip_y", "K_I", "K_II", "T_side1", "T_side2", "theta_c"}, {}};
  for (std::size_t k = 0; k < h.steps.size(); ++k) {
    const GrowthStep& s = h.steps[k];
    const std::string name = c.name + "_step" + std::to_string(k + 1);
    add_state(t, name, s.state, s.crack_length);
    t.add(name, "tip_x", s.tip.x());
    t.add(name, "tip_y", s.tip.y());
    t.add(name, "theta_c", s.theta_c);
    path.rows.push_back({static_cast<double>(k + 1), s.crack_length, s.tip.x(), s.tip.y(), s.state.k1, s.state.k2,
                         s.state.t_stress_side1, s.state.t_stress_side2, s.theta_c});
  }
  t.add(c.name, "steps", static_cast<double>(h.steps.size()));
  t.add(c.name, "tip_exited", h.status == GrowthStatus::TipExited ? 1.0 : 0.0);
  t.series.push_back(std::move(path));

  if (field) {
    model.crack = CrackGeometry(h.final_crack);
    Solution sol = assemble_and_solve(model, rs);
    *field = FieldOutput{std::move(model), std::move(sol)};
  }
  return t;
}

}  // namespace xsbfem::app
