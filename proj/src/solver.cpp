#include "greensign/solver.hpp"

#include <algorithm>
#include <cmath>

#include "greensign/error.hpp"
#include "greensign/ode.hpp"

namespace greensign {
namespace {

Eigen::VectorXd uniform_grid(int n, double T) {
  if (n < 5) fail(ErrorCode::InvalidArgument, "solution grid needs at least 5 nodes");
  Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(n, 0.0, T);
  g(n - 1) = T;
  return g;
}

// Cubic through the four nodes nearest to t on a uniform grid.
double local_cubic(const Eigen::VectorXd& u, double t, double T) {
  const Eigen::Index n = u.size();
  const auto [i, theta] = locate_uniform(t, T, n);
  const Eigen::Index start = std::clamp<Eigen::Index>(i - 1, 0, n - 4);
  const double x = static_cast<double>(i - start) + theta;
  double value = 0.0;
  for (int j = 0; j < 4; ++j) {
    double l = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k != j) l *= (x - k) / (j - k);
    }
    value += l * u(start + j);
  }
  return value;
}

Eigen::VectorXd apply_operator(const GreensKernel& kernel, const Eigen::VectorXd& grid, const ScalarFunction& rhs,
                               const QuadratureOptions& q) {
  Eigen::VectorXd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) out(i) = integrate_kernel_row(kernel, grid(i), rhs, q);
  if (!out.allFinite()) fail(ErrorCode::QuadratureFailure, "non-finite solution values");
  return out;
}

void finish(SolutionProfile& p, const GreensKernel& kernel, const RightHandSide& rhs, double sign_tol) {
  const Verification v = verify_solution(p, kernel.potential(), kernel.bc(), rhs, nullptr, sign_tol);
  p.residual_norm = v.residual_norm;
  p.bc_error = v.bc_error;
  p.positivity = v.positivity;
}

bool on_breakpoint(double t, std::span<const double> nodes, double h) {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), t - 1e-9 * h);
  return it != nodes.end() && std::abs(*it - t) <= 1e-9 * h;
}

}  // namespace

std::string_view to_string(Positivity p) {
  switch (p) {
    case Positivity::Positive:
      return "Positive";
    case Positivity::Nonnegative:
      return "Nonnegative";
    case Positivity::ChangesSign:
      return "ChangesSign";
    case Positivity::Negative:
      return "Negative";
  }
  return "?";
}

Positivity classify_positivity(const Eigen::Ref<const Eigen::VectorXd>& values, double tol) {
  if (values.size() < 3) fail(ErrorCode::InvalidArgument, "need at least one interior node");
  const auto interior = values.segment(1, values.size() - 2);
  const double lo = interior.minCoeff(), hi = interior.maxCoeff();
  if (lo > tol) return Positivity::Positive;
  if (lo >= -tol) return Positivity::Nonnegative;
  if (hi <= tol) return Positivity::Negative;
  return Positivity::ChangesSign;
}

Verification verify_solution(const SolutionProfile& profile, const PotentialSpec& potential, BoundaryKind bc,
                             const RightHandSide& rhs, const ConeConstants* cone, double sign_tol) {
  const Eigen::VectorXd& t = profile.grid;
  const Eigen::VectorXd& u = profile.values;
  const Eigen::Index n = u.size();
  if (n < 5 || t.size() != n) fail(ErrorCode::InvalidArgument, "profile needs at least 5 nodes");
  if (!u.allFinite()) fail(ErrorCode::InvalidArgument, "profile has non-finite values");
  const double h = t(1) - t(0);
  const auto kinks = potential.nodes();

  Verification v;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (on_breakpoint(t(i), kinks, h)) continue;
    const double d2 = (u(i + 1) - 2.0 * u(i) + u(i - 1)) / (h * h);
    v.residual_norm = std::max(v.residual_norm, std::abs(d2 + potential(t(i)) * u(i) - rhs(t(i), u(i))));
  }

  const double left_slope = (-25.0 * u(0) + 48.0 * u(1) - 36.0 * u(2) + 16.0 * u(3) - 3.0 * u(4)) / (12.0 * h);
  const double right_slope =
      (25.0 * u(n - 1) - 48.0 * u(n - 2) + 36.0 * u(n - 3) - 16.0 * u(n - 4) + 3.0 * u(n - 5)) / (12.0 * h);
  const auto [B, C] = boundary_matrices(bc);
  v.bc_error = (B * Eigen::Vector2d(u(0), left_slope) + C * Eigen::Vector2d(u(n - 1), right_slope)).cwiseAbs().maxCoeff();
  v.positivity = classify_positivity(u, sign_tol);
  if (cone) v.in_cone = cone_membership(t, u, *cone);
  return v;
}

SolutionProfile solve_linear(const GreensKernel& kernel, const ScalarFunction& sigma, const SolverOptions& opt) {
  SolutionProfile p;
  p.grid = uniform_grid(opt.grid, kernel.T());
  p.values = apply_operator(kernel, p.grid, sigma, opt.quadrature);
  finish(p, kernel, [&sigma](double t, double) { return sigma(t); }, opt.sign_tol);
  return p;
}

SolutionProfile solve_nonlinear(const GreensKernel& kernel, const Nonlinearity& f, const SolverOptions& opt) {
  if (!(opt.damping > 0.0 && opt.damping <= 1.0)) fail(ErrorCode::InvalidArgument, "damping must lie in (0, 1]");
  if (opt.max_iter < 1) fail(ErrorCode::InvalidArgument, "max_iter must be positive");
  const double T = kernel.T();
  auto checked = [&f](double s, double x) {
    const double v = f(s, x);
    if (!std::isfinite(v)) {
      fail(ErrorCode::EvaluationFailure,
           "nonlinearity is not finite at t = " + std::to_string(s) + ", x = " + std::to_string(x));
    }
    return v;
  };
  auto image = [&](const Eigen::VectorXd& grid, const Eigen::VectorXd& u, const QuadratureOptions& q) {
    return apply_operator(kernel, grid, [&](double s) { return checked(s, local_cubic(u, s, T)); }, q);
  };

  SolutionProfile p;
  p.grid = uniform_grid(opt.grid, T);
  Eigen::VectorXd u = apply_operator(kernel, p.grid, [&](double s) { return checked(s, 0.0); }, opt.quadrature);
  p.converged = false;
  for (int k = 1; k <= opt.max_iter; ++k) {
    const Eigen::VectorXd next = (1.0 - opt.damping) * u + opt.damping * image(p.grid, u, opt.quadrature);
    p.last_update = (next - u).cwiseAbs().maxCoeff();
    u = next;
    p.iterations = k;
    if (!std::isfinite(p.last_update)) fail(ErrorCode::EvaluationFailure, "Picard iterate is not finite");
    if (p.last_update <= opt.tol) {
      p.converged = true;
      break;
    }
  }
  p.values = u;
  if (p.converged) {
    QuadratureOptions fine = opt.quadrature;
    fine.order += 4;
    fine.panels *= 2;
    p.fixed_point_residual = (u - image(p.grid, u, fine)).cwiseAbs().maxCoeff();
    if (*p.fixed_point_residual > 10.0 * opt.tol) p.converged = false;
  }
  finish(p, kernel, [&](double t, double x) { return checked(t, x); }, opt.sign_tol);
  return p;
}

}  // namespace greensign
