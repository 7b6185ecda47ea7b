#include "polycomp/error.hpp"

namespace polycomp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::InconsistentLattice: return "InconsistentLattice";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::InvalidTriangulation: return "InvalidTriangulation";
    case ErrorKind::PolytopeMismatch: return "PolytopeMismatch";
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::PointOutside: return "PointOutside";
    case ErrorKind::SingularSimplex: return "SingularSimplex";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::InfeasibleApex: return "InfeasibleApex";
    case ErrorKind::NotTree: return "NotTree";
  }
  return "Unknown";
}

}  // namespace polycomp
