#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "greensign/greens.hpp"
#include "greensign/potential.hpp"
#include "greensign/types.hpp"

namespace greensign {

enum class EigenMethod { ClosedForm, Shooting };

/// Smallest lambda for which u'' + (a(t) + lambda)u = 0 has a nontrivial
/// solution under the boundary kind.
struct EigenResult {
  double lambda = 0.0;
  BoundaryKind bc = BoundaryKind::Periodic;
  EigenMethod method = EigenMethod::ClosedForm;
};

struct SpectralOptions {
  int grid = kDefaultGrid;      ///< RK4 nodes for shooting
  double scan_step = 0.5;       ///< upper bound on the bracketing step in lambda
  double root_tol = 1e-10;      ///< |characteristic - target| accepted at the root
  double zero_tol = 1e-8;       ///< |lambda| below this cannot be classified
  double double_root_tol = 1e-7;  ///< antiperiodic discriminant touching -2
};

EigenResult smallest_eigenvalue(const PotentialSpec& potential, BoundaryKind bc, const SpectralOptions& opt = {});

enum class SignVerdict { NonPositive, NonNegative, ChangesSign };

/// Sign of the Green's function decided from the signs of smallest
/// eigenvalues. `witnesses` holds every eigenvalue the rule looked at.
struct SignClass {
  SignVerdict verdict = SignVerdict::ChangesSign;
  BoundaryKind bc = BoundaryKind::Periodic;
  std::vector<EigenResult> witnesses;
  std::string rule;
};

/// Antiperiodic kernels are not covered by the sign rules and raise
/// UnsupportedBoundaryKind; a zero eigenvalue raises Undetermined.
SignClass classify_sign(const PotentialSpec& potential, BoundaryKind bc, const SpectralOptions& opt = {});

/// Positive eigenfunction of the smallest eigenvalue, sampled on a uniform
/// grid and scaled to maximum 1. Between nodes it is evaluated by cubic
/// Hermite interpolation.
struct Eigenfunction {
  BoundaryKind bc = BoundaryKind::Periodic;
  double lambda = 0.0;
  Eigen::VectorXd grid;
  Eigen::VectorXd values;
  Eigen::VectorXd slopes;

  double operator()(double t) const;
};

/// Closed form for constant potentials (1, sin, cos as appropriate), shooting
/// otherwise. NotPositive if an interior sample is not positive.
Eigenfunction principal_eigenfunction(const PotentialSpec& potential, BoundaryKind bc, int grid_size = kDefaultGrid,
                                      const SpectralOptions& opt = {});

std::string_view to_string(SignVerdict verdict);
std::string_view to_string(EigenMethod method);

}  // namespace greensign
