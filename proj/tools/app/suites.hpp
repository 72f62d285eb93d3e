#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "app/results.hpp"

namespace xsbfem::app {

/// One compared quantity. Predicates are encoded as value 1 (holds) or 0
/// against reference 1 with zero tolerance.
struct Check {
  int criterion = 0;
  std::string case_name;
  std::string quantity;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool absolute = false;
  /// Reported but not counted towards the verdict.
  bool informational = false;

  double error() const;
  bool pass() const;
};

struct SuiteOptions {
  int threads = 1;
  /// Replaces every tolerance (test hook).
  std::optional<double> tolerance_override;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  /// Cases that threw, with the message.
  std::vector<std::string> errors;

  bool passed() const;
  ResultTable table() const;
  /// One line per check: status, case, quantity, expected, got, tolerance.
  std::string text() const;
};

std::vector<std::string> suite_names();

/// Throws Error(Config) listing the registered suites for an unknown or empty name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace xsbfem::app
