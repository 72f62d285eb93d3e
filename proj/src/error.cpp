#include "xsbfem/error.hpp"

namespace xsbfem {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidOrder: return "invalid-order";
    case ErrorKind::DegenerateElement: return "degenerate-element";
    case ErrorKind::InvalidDomain: return "invalid-domain";
    case ErrorKind::IllConditioned: return "ill-conditioned-domain";
    case ErrorKind::ModeSelection: return "mode-selection";
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::MissingSingularity: return "missing-singularity";
    case ErrorKind::WrongDefinition: return "wrong-definition";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Region: return "region";
    case ErrorKind::UnderConstrained: return "under-constrained";
    case ErrorKind::NotSupported: return "not-supported";
    case ErrorKind::PureModeII: return "pure-mode-ii";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace xsbfem
