#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xsbfem {

/// Failure categories raised by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  InvalidArgument,
  InvalidOrder,
  DegenerateElement,
  InvalidDomain,
  IllConditioned,
  ModeSelection,
  OutOfDomain,
  MissingSingularity,
  WrongDefinition,
  Degenerate,
  Geometry,
  Region,
  UnderConstrained,
  NotSupported,
  PureModeII,
  Config,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for input/configuration problems, false for numerical failures.
  bool is_validation() const noexcept {
    return kind_ == ErrorKind::InvalidArgument || kind_ == ErrorKind::Config ||
           kind_ == ErrorKind::InvalidOrder || kind_ == ErrorKind::NotSupported;
  }

 private:
  ErrorKind kind_;
};

}  // namespace xsbfem
