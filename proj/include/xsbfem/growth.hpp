#pragma once

#include <vector>

#include "xsbfem/benchmarks.hpp"
#include "xsbfem/fracture.hpp"
#include "xsbfem/xfem.hpp"

namespace xsbfem {

enum class GrowthMode { AlongInterface, MaxHoopStress };

struct GrowthConfig {
  double increment = 0.2;
  int max_steps = 1;
  GrowthMode mode = GrowthMode::AlongInterface;
  /// Inclination of the starting crack to the interface, for model builders.
  double initial_angle = 0.0;
  double l_char = 1.0;
  /// Growth stops once the tip comes closer than this to the mesh bounding box.
  double margin = 0.0;

  /// Throws Error(InvalidArgument) unless increment > 0 and 1 <= max_steps <= 1000.
  void validate() const;
};

struct GrowthStep {
  double crack_length = 0.0;
  Point tip = Point::Zero();
  FractureState state;
  double theta_c = 0.0;  // kink angle applied after this step, relative to the tip direction
};

enum class GrowthStatus { Completed, TipExited };

struct GrowthHistory {
  std::vector<GrowthStep> steps;
  GrowthStatus status = GrowthStatus::Completed;
  std::vector<Point> final_crack;
};

/// theta_c = 2 atan(-2 r / (1 + sqrt(1 + 8 r^2))), r = K2 / K1.
/// Throws Error(PureModeII) for K1 == 0.
double hoop_stress_angle(double k1, double k2);

/// K1 sin(theta) + K2 (3 cos(theta) - 1).
double hoop_stress_residual(double k1, double k2, double theta);

/// Solve, extract, turn, extend; repeated max_steps times or until the next
/// tip would leave the mesh margin.
GrowthHistory propagate(const GlobalModel& model, const SBFEMRegionSpec& spec, const GrowthConfig& cfg);

}  // namespace xsbfem
