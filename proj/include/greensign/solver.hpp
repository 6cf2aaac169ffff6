#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>

#include "greensign/cone.hpp"
#include "greensign/greens.hpp"
#include "greensign/quadrature.hpp"

namespace greensign {

/// Sign pattern of a profile on the interior grid nodes. Negative means no
/// interior value above the tolerance while some lie below it.
enum class Positivity { Positive, Nonnegative, ChangesSign, Negative };

struct SolutionProfile {
  Eigen::VectorXd grid;
  Eigen::VectorXd values;
  double residual_norm = 0.0;  ///< sup |u'' + a u - rhs| by second differences
  double bc_error = 0.0;
  Positivity positivity = Positivity::Nonnegative;
  int iterations = 0;  ///< 0 for linear solves
  bool converged = true;
  double last_update = 0.0;  ///< sup |u_{k+1} - u_k| of the final step
  std::optional<double> fixed_point_residual;  ///< sup |u - Tu| by finer quadrature
};

struct SolverOptions {
  int grid = kDefaultGrid;
  QuadratureOptions quadrature;
  double damping = 0.5;  ///< theta in u <- (1 - theta) u + theta Tu
  int max_iter = 500;
  double tol = 1e-10;
  double sign_tol = 1e-9;
};

/// Right-hand side of u'' + a u = rhs(t, u).
using RightHandSide = std::function<double(double, double)>;

/// u(t_i) = int_0^T G(t_i, s) sigma(s) ds at every node of a uniform grid.
SolutionProfile solve_linear(const GreensKernel& kernel, const ScalarFunction& sigma, const SolverOptions& opt = {});

/// Damped Picard iteration for u = T u, Tu(t) = int G(t,s) f(s, u(s)) ds,
/// from u_0 = T(0). Between grid nodes u is the local cubic interpolant.
/// Non-convergence is reported through `converged`, not thrown.
SolutionProfile solve_nonlinear(const GreensKernel& kernel, const Nonlinearity& f, const SolverOptions& opt = {});

struct Verification {
  double residual_norm = 0.0;
  double bc_error = 0.0;
  Positivity positivity = Positivity::Nonnegative;
  std::optional<bool> in_cone;
};

/// Second-difference residual at interior nodes (skipping nodes that coincide
/// with breakpoints of a sampled potential), boundary error from fifth-order
/// one-sided derivatives, sign pattern, and cone membership when `cone` is
/// given.
Verification verify_solution(const SolutionProfile& profile, const PotentialSpec& potential, BoundaryKind bc,
                             const RightHandSide& rhs, const ConeConstants* cone = nullptr, double sign_tol = 1e-9);

Positivity classify_positivity(const Eigen::Ref<const Eigen::VectorXd>& values, double tol);
std::string_view to_string(Positivity p);

}  // namespace greensign
