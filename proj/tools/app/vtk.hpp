#pragma once

#include <cstdint>
#include <string>

#include "xsbfem/xfem.hpp"

namespace xsbfem::app {

/// Legacy ASCII unstructured grid: quads, nodal displacement (zero inside the
/// SBFEM region, flagged by `condensed`), per-cell material, class and
/// centroid stress.
std::string vtk_legacy(const GlobalModel& model, const Solution& sol, std::uint64_t config_hash);

}  // namespace xsbfem::app
