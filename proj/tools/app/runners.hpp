#pragma once

#include <optional>
#include <string>

#include "app/config.hpp"
#include "app/results.hpp"
#include "xsbfem/xfem.hpp"

namespace xsbfem::app {

/// Model, region spec and the solution of the last analysis, for field export.
struct FieldOutput {
  GlobalModel model;
  Solution solution;
};

/// Builds the model of a config (also the uncracked patch model).
GlobalModel build_model(const AnalysisConfig& c);
SBFEMRegionSpec region_spec(const AnalysisConfig& c);

/// Coupled analysis: SIFs, T-stress and orders for cracked problems, the
/// patch-stress error for the patch problem; angular field and profile series.
ResultTable run_analyze(const AnalysisConfig& c, std::optional<FieldOutput>* field = nullptr);

/// Stand-alone SBFEM domain: orders and angular modes; the triple junction
/// sweeps the E2/E1 list.
ResultTable run_singularity(const AnalysisConfig& c);

/// Growth history as rows per step (quantities suffixed with the step index).
ResultTable run_propagate(const AnalysisConfig& c, std::optional<FieldOutput>* field = nullptr);

}  // namespace xsbfem::app
