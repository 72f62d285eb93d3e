#include "xsbfem/growth.hpp"

#include <cmath>
#include <limits>

#include "xsbfem/error.hpp"

namespace xsbfem {

namespace {

constexpr double kMinKink = 1e-6;

Point rotate(const Point& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

// Direction of the interface segment nearest to `tip`, oriented along `dir`.
Point interface_direction(const Polyline& itf, const Point& tip, const Point& dir) {
  const auto v = itf.vertices();
  double best = std::numeric_limits<double>::infinity();
  Point out = dir;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double d = distance_to_segment(tip, v[k], v[k + 1]).first;
    if (d < best) {
      best = d;
      out = (v[k + 1] - v[k]).normalized();
    }
  }
  return out.dot(dir) < 0.0 ? Point(-out) : out;
}

}  // namespace

void GrowthConfig::validate() const {
  if (!(increment > 0.0)) throw Error(ErrorKind::InvalidArgument, "growth increment must be positive");
  if (max_steps < 1 || max_steps > 1000) throw Error(ErrorKind::InvalidArgument, "max_steps must lie in [1, 1000]");
  if (!(l_char > 0.0)) throw Error(ErrorKind::InvalidArgument, "characteristic length must be positive");
  if (margin < 0.0) throw Error(ErrorKind::InvalidArgument, "margin must be non-negative");
}

double hoop_stress_angle(double k1, double k2) {
  if (k1 == 0.0) {
    throw Error(ErrorKind::PureModeII, "K_I = 0: the maximum hoop stress direction is +-70.53 degrees");
  }
  const double r = k2 / k1;
  return 2.0 * std::atan(-2.0 * r / (1.0 + std::sqrt(1.0 + 8.0 * r * r)));
}

double hoop_stress_residual(double k1, double k2, double theta) {
  return k1 * std::sin(theta) + k2 * (3.0 * std::cos(theta) - 1.0);
}

GrowthHistory propagate(const GlobalModel& model, const SBFEMRegionSpec& spec, const GrowthConfig& cfg) {
  cfg.validate();
  model.validate();
  if (!model.crack) throw Error(ErrorKind::InvalidArgument, "growth needs a crack");
  if (cfg.mode == GrowthMode::AlongInterface && !model.interface) {
    throw Error(ErrorKind::InvalidArgument, "interface growth needs an interface");
  }
  Point lo = model.mesh.nodes.front();
  Point hi = lo;
  for (const Point& p : model.mesh.nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  auto inside = [&](const Point& p) {
    return p.x() > lo.x() + cfg.margin && p.x() < hi.x() - cfg.margin && p.y() > lo.y() + cfg.margin &&
           p.y() < hi.y() - cfg.margin;
  };

  GlobalModel m = model;
  GrowthHistory hist;
  for (int step = 0; step < cfg.max_steps; ++step) {
    const TipAnalysis res = analyze_tip(m, spec, cfg.l_char);
    GrowthStep rec;
    rec.crack_length = m.crack->length();
    rec.tip = m.crack->tip();
    rec.state = res.state;
    const Point dir = m.crack->tip_direction();
    Point next_dir = dir;
    if (cfg.mode == GrowthMode::MaxHoopStress) {
      rec.theta_c = hoop_stress_angle(rec.state.k1, rec.state.k2);
      if (std::abs(rec.theta_c) < kMinKink) rec.theta_c = 0.0;
      next_dir = rotate(Point(std::cos(res.crack_angle), std::sin(res.crack_angle)), rec.theta_c);
    } else {
      next_dir = interface_direction(*m.interface, rec.tip, dir);
    }
    hist.steps.push_back(rec);
    if (step + 1 == cfg.max_steps) break;
    const Point next = rec.tip + cfg.increment * next_dir;
    if (!inside(next)) {
      hist.status = GrowthStatus::TipExited;
      break;
    }
    m.crack->extend_to(next);
  }
  const auto v = m.crack->vertices();
  hist.final_crack.assign(v.begin(), v.end());
  return hist;
}

}  // namespace xsbfem
