#pragma once

#include <limits>
#include <string>
#include <vector>

#include "greensign/greens.hpp"
#include "greensign/potential.hpp"
#include "greensign/quadrature.hpp"
#include "greensign/types.hpp"

namespace greensign {

enum class GammaMethod { ClosedFormPeriodic, ClosedFormDirichletT1, Quadrature };
enum class WeightKind { PrincipalEigenfunction, Coefficient, One };

/// inf over t of int G+(t,s) w(s) ds / int G-(t,s) w(s) ds. `value` is +inf
/// when the kernel has no negative part.
struct GammaResult {
  double value = std::numeric_limits<double>::infinity();
  double argmin_t = 0.0;
  GammaMethod method = GammaMethod::Quadrature;
  WeightKind weight = WeightKind::PrincipalEigenfunction;
  std::string note;

  bool is_infinite() const noexcept { return value == std::numeric_limits<double>::infinity(); }
};

struct GammaOptions {
  int t_grid = 1001;
  QuadratureOptions quadrature;
  /// The kernel counts as nonnegative when every negative integral is below
  /// this fraction of the positive one.
  double sentinel_ratio = 1e-13;
  /// Ratios within this relative distance of the minimum count as ties; the
  /// smallest such t is reported.
  double tie_tol = 1e-9;
};

/// Weighted positive and negative integrals of one kernel row.
struct RatioSample {
  double t = 0.0;
  double positive = 0.0;
  double negative = 0.0;
  double ratio = 0.0;  ///< positive / negative; +inf when negative == 0
  bool extrapolated = false;
};

/// Ratio at every node of a uniform t-grid. At ends where the kernel row
/// vanishes identically the ratio is extrapolated from the six nearest
/// interior nodes.
std::vector<RatioSample> gamma_profile(const GreensKernel& kernel, const ScalarFunction& weight,
                                       const GammaOptions& opt = {});

/// Minimum of gamma_profile, ties resolved towards smaller t. Throws
/// NonpositiveWeightedIntegral if int G w <= 0 at a sampled t and
/// InvalidWeight for negative or identically zero weights.
GammaResult gamma_quadrature(const GreensKernel& kernel, const ScalarFunction& weight,
                             WeightKind kind = WeightKind::PrincipalEigenfunction, const GammaOptions& opt = {});

/// Constant-potential periodic kernel, where the ratio does not depend on t.
/// `note` carries the case label ("2A", "2B", "1B", "1A") and k. OutOfRange
/// for rho <= pi/T, ResonantPotential at even multiples of pi/T.
GammaResult gamma_periodic_closed(double rho, double T);

/// Case label and index k of the periodic closed form for rho*T/pi in an open
/// interval (m, m+1), m >= 1.
struct PeriodicGammaCase {
  std::string label;
  int k = 0;
};
PeriodicGammaCase periodic_gamma_case(double rho, double T);

/// Dirichlet, T = 1, weight sin(pi s): the ratio at a fixed t for
/// pi < rho < 6 pi. Near the ends it uses the closed expression
///   sin(rho t) S / (sin(rho t) S - (-1)^n sin(rho) sin(pi t)),
///   S = sum_{k=1..n} sin(k pi^2 / rho), n = floor(rho / pi),
/// which is valid while no zero of G(t, .) falls inside (0, t) or (t, 1);
/// elsewhere the two integrals are evaluated exactly piece by piece.
double gamma_dirichlet_t_closed(double t, double rho);

/// Exact piecewise ratio for any t in (0,1) and nonresonant rho > pi.
double gamma_dirichlet_t_exact(double t, double rho);

/// The t -> 0 limit of gamma_dirichlet_t_closed, which is the infimum.
GammaResult gamma_dirichlet_closed(double rho);

/// Ratio weighted by the coefficient a. Periodic and Neumann kernels only.
GammaResult gamma_star(const GreensKernel& kernel, const GammaOptions& opt = {});

/// Ratio with weight 1.
GammaResult gamma_delta(const GreensKernel& kernel, const GammaOptions& opt = {});

std::string_view to_string(GammaMethod method);
std::string_view to_string(WeightKind kind);

}  // namespace greensign
