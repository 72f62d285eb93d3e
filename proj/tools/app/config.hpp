#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xsbfem/growth.hpp"
#include "xsbfem/materials.hpp"

namespace xsbfem::app {

enum class ProblemKind { EdgeCrack, CenterCrack, Strip, Terminating, Deflected, Patch };
enum class DomainKind { Circle, Square, Bimaterial, TripleJunction };

struct SingularityConfig {
  DomainKind domain = DomainKind::Circle;
  int elements = 8;
  int order = 2;
  bool cracked = true;
  double e_ratio = 1.0;               // bimaterial: E above / E below
  std::vector<double> e2_ratios{1.0};  // triple junction sweep of E2/E1
  double e3_ratio = 10.0;             // triple junction E3/E1
};

/// One analysis read from a sectioned key/value file.
struct AnalysisConfig {
  std::string name = "case";
  ProblemKind problem = ProblemKind::EdgeCrack;

  int nx = 51;
  int ny = 102;
  double width = 1.0;
  double height = 2.0;
  double crack_length = 0.5;
  double psi_deg = 0.0;
  double interface_x = 0.5;
  double kink_length = 0.1;
  double strip_length = 10.0;
  double h1 = 26.0 / 25.0;
  double h2 = 1.0;

  double e_ratio = 2.0;
  double poisson = 0.3;
  PlaneState plane = PlaneState::PlaneStrain;
  double top_e = 7.0 / 3.0;
  double top_poisson = 1.0 / 3.0;
  double bottom_e = 1.0;
  double bottom_poisson = 1.0 / 3.0;
  double load = 1.0;

  int layers = 3;
  bool shrink_to_fit = false;
  double l_char = 1.0;

  SingularityConfig singularity;
  std::optional<GrowthConfig> growth;

  bool vtk = true;
  int profile_samples = 10;

  /// FNV-1a of the normalised key/value content.
  std::uint64_t hash = 0;
};

/// Throws Error(Config) with the line number for syntax errors and the
/// [section] key for bad or unknown fields.
AnalysisConfig parse_config(const std::string& text);
AnalysisConfig load_config(const std::string& path);

std::uint64_t fnv1a(const std::string& text);
std::string hex_hash(std::uint64_t h);

}  // namespace xsbfem::app
