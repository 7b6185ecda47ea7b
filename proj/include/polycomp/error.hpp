#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polycomp {

enum class ErrorKind {
  MalformedInput,
  NotSimple,
  InconsistentLattice,
  DegenerateSpan,
  DuplicateVertex,
  InvalidShape,
  InvalidTriangulation,
  PolytopeMismatch,
  DegenerateSimplex,
  PointOutside,
  SingularSimplex,
  NotPSD,
  NotContraction,
  InfeasibleApex,
  NotTree,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polycomp
