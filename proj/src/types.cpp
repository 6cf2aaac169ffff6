#include "greensign/types.hpp"

#include <cmath>
#include <string>

#include "greensign/error.hpp"

namespace greensign {

std::string_view to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Antiperiodic: return "antiperiodic";
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Neumann: return "neumann";
    case BoundaryKind::Mixed1: return "mixed1";
    case BoundaryKind::Mixed2: return "mixed2";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(std::string_view name) {
  for (BoundaryKind bc : kAllBoundaryKinds) {
    if (to_string(bc) == name) return bc;
  }
  fail(ErrorCode::InvalidArgument, "unknown boundary kind '" + std::string(name) + "'");
}

VanishingEnds vanishing_ends(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::Dirichlet: return {true, true};
    case BoundaryKind::Mixed1: return {false, true};
    case BoundaryKind::Mixed2: return {true, false};
    default: return {};
  }
}

Interval::Interval(double T) : T_(T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    fail(ErrorCode::InvalidArgument, "interval length T must be positive and finite");
  }
}

}  // namespace greensign
