#include "greensign/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "greensign/error.hpp"

namespace greensign {
namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dirichlet_range(double rho) {
  if (!(rho > pi && rho < 6 * pi)) fail(ErrorCode::OutOfRange, "closed Dirichlet ratio needs pi < rho < 6 pi");
  if (is_resonant(PotentialSpec::constant(rho, 1.0), BoundaryKind::Dirichlet)) {
    fail(ErrorCode::ResonantPotential, "rho is a multiple of pi");
  }
}

double sine_sum(double rho, int n) {
  double s = 0.0;
  for (int k = 1; k <= n; ++k) s += std::sin(k * pi * pi / rho);
  return s;
}

// int sin(rho s) sin(pi s) ds
double left_antiderivative(double rho, double s) {
  return 0.5 * (std::sin((rho - pi) * s) / (rho - pi) - std::sin((rho + pi) * s) / (rho + pi));
}

// int sin(rho (1 - s)) sin(pi s) ds
double right_antiderivative(double rho, double s) {
  return 0.5 * (std::sin(rho - (rho - pi) * s) / (rho - pi) - std::sin(rho - (rho + pi) * s) / (rho + pi));
}

void validate_weight(const ScalarFunction& weight, double T, int n) {
  double peak = 0.0;
  for (int i = 0; i <= 4 * n; ++i) {
    const double w = weight(T * i / (4.0 * n));
    if (!std::isfinite(w)) fail(ErrorCode::InvalidWeight, "weight is not finite");
    if (w < 0.0) fail(ErrorCode::InvalidWeight, "weight takes negative values");
    peak = std::max(peak, w);
  }
  if (!(peak > 0.0)) fail(ErrorCode::InvalidWeight, "weight vanishes on the whole sample grid");
}

}  // namespace

std::string_view to_string(GammaMethod method) {
  switch (method) {
    case GammaMethod::ClosedFormPeriodic:
      return "closed-form-periodic";
    case GammaMethod::ClosedFormDirichletT1:
      return "closed-form-dirichlet";
    case GammaMethod::Quadrature:
      return "quadrature";
  }
  return "?";
}

std::string_view to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::PrincipalEigenfunction:
      return "eigenfunction";
    case WeightKind::Coefficient:
      return "coefficient";
    case WeightKind::One:
      return "one";
  }
  return "?";
}

std::vector<RatioSample> gamma_profile(const GreensKernel& kernel, const ScalarFunction& weight,
                                       const GammaOptions& opt) {
  if (opt.t_grid < 9) fail(ErrorCode::InvalidArgument, "t-grid needs at least 9 nodes");
  const double T = kernel.T();
  const int n = opt.t_grid;
  const VanishingEnds ends = vanishing_ends(kernel.bc());
  std::vector<RatioSample> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    RatioSample& r = out[static_cast<std::size_t>(i)];
    r.t = i + 1 == n ? T : T * i / (n - 1);
    if ((i == 0 && ends.left) || (i + 1 == n && ends.right)) continue;
    const RowParts parts = integrate_kernel_parts(kernel, r.t, weight, opt.quadrature);
    r.positive = parts.positive;
    r.negative = parts.negative;
    r.ratio = parts.negative > 0.0 ? parts.positive / parts.negative : kInf;
  }
  // The 0/0 limit at a vanishing end comes from a quintic through six ratios on
  // a dedicated stencil. The stencil stays much finer than the t-grid so that
  // it does not straddle the first kink of the ratio (a kernel zero reaching
  // the end), which sits at distance T - pi/rho just above the first
  // Dirichlet resonance.
  const double step = std::min(T / (n - 1), T * 1e-3);
  auto extrapolate = [&](int end, int dir) {
    RatioSample& r = out[static_cast<std::size_t>(end)];
    constexpr double c[6] = {6.0, -15.0, 20.0, -15.0, 6.0, -1.0};
    double value = 0.0;
    for (int j = 0; j < 6; ++j) {
      const RowParts parts = integrate_kernel_parts(kernel, r.t + dir * step * (j + 1), weight, opt.quadrature);
      value += c[j] * (parts.negative > 0.0 ? parts.positive / parts.negative : kInf);
    }
    r.ratio = std::isnan(value) ? kInf : value;
    r.extrapolated = true;
  };
  if (ends.left) extrapolate(0, +1);
  if (ends.right) extrapolate(n - 1, -1);
  return out;
}

GammaResult gamma_quadrature(const GreensKernel& kernel, const ScalarFunction& weight, WeightKind kind,
                             const GammaOptions& opt) {
  validate_weight(weight, kernel.T(), opt.t_grid);
  const std::vector<RatioSample> profile = gamma_profile(kernel, weight, opt);

  bool nonnegative = true;
  for (const RatioSample& r : profile) {
    if (r.extrapolated) continue;
    if (!(r.positive - r.negative > 0.0)) {
      fail(ErrorCode::NonpositiveWeightedIntegral,
           "weighted kernel integral is not positive at t = " + std::to_string(r.t));
    }
    if (r.negative > opt.sentinel_ratio * r.positive) nonnegative = false;
  }

  GammaResult result;
  result.method = GammaMethod::Quadrature;
  result.weight = kind;
  if (nonnegative) {
    result.value = kInf;
    result.argmin_t = 0.0;
    result.note = "kernel has no negative part";
    return result;
  }
  const RatioSample* best = &profile.front();
  for (const RatioSample& r : profile) {
    const bool below = std::isinf(best->ratio) ? r.ratio < best->ratio
                                               : r.ratio < best->ratio - opt.tie_tol * std::abs(best->ratio);
    if (below) best = &r;
  }
  result.value = best->ratio;
  result.argmin_t = best->t;
  return result;
}

PeriodicGammaCase periodic_gamma_case(double rho, double T) {
  const double x = rho * T / pi;
  const int m = static_cast<int>(std::floor(x));
  switch (m % 4) {
    case 1:
      return {"2A", (m - 1) / 4};
    case 2:
      return {"2B", (m - 2) / 4};
    case 3:
      return {"1B", (m + 1) / 4};
    default:
      return {"1A", m / 4};
  }
}

GammaResult gamma_periodic_closed(double rho, double T) {
  Interval interval(T);
  if (!(rho * T > pi)) fail(ErrorCode::OutOfRange, "the periodic kernel is of one sign for rho <= pi/T");
  if (is_resonant(PotentialSpec::constant(rho, T), BoundaryKind::Periodic)) {
    fail(ErrorCode::ResonantPotential, "rho*T is a multiple of 2 pi");
  }
  const PeriodicGammaCase c = periodic_gamma_case(rho, T);
  const double s = std::sin(rho * T / 2);
  const double k = c.k;
  double value = 0.0;
  if (c.label == "2A") {
    value = (2 * k + 1) / (2 * k + 1 - s);
  } else if (c.label == "2B") {
    value = (2 * k + 1 - s) / (2 * k + 1);
  } else if (c.label == "1B") {
    value = 2 * k / (2 * k + s);
  } else {
    value = (2 * k + s) / (2 * k);
  }
  GammaResult r;
  r.value = value;
  r.argmin_t = 0.0;
  r.method = GammaMethod::ClosedFormPeriodic;
  r.weight = WeightKind::PrincipalEigenfunction;
  r.note = "case " + c.label + ", k=" + std::to_string(c.k);
  return r;
}

double gamma_dirichlet_t_exact(double t, double rho) {
  if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::OutOfRange, "t must lie in (0,1)");
  if (!(rho > pi)) fail(ErrorCode::OutOfRange, "rho must exceed pi");
  if (is_resonant(PotentialSpec::constant(rho, 1.0), BoundaryKind::Dirichlet)) {
    fail(ErrorCode::ResonantPotential, "rho is a multiple of pi");
  }
  const double denom = rho * std::sin(rho);
  const double c1 = -std::sin(rho * (1 - t)) / denom;  // G = c1 sin(rho s) on s <= t
  const double c2 = -std::sin(rho * t) / denom;        // G = c2 sin(rho (1-s)) on s >= t
  double positive = 0.0, negative = 0.0;
  auto add = [&](double v) { (v >= 0.0 ? positive : negative) += std::abs(v); };

  std::vector<double> cuts{0.0};
  for (int k = 1; k * pi / rho < t; ++k) cuts.push_back(k * pi / rho);
  cuts.push_back(t);
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    add(c1 * (left_antiderivative(rho, cuts[j + 1]) - left_antiderivative(rho, cuts[j])));
  }
  cuts.assign({t});
  std::vector<double> upper;
  for (int k = 1; 1 - k * pi / rho > t; ++k) upper.push_back(1 - k * pi / rho);
  cuts.insert(cuts.end(), upper.rbegin(), upper.rend());
  cuts.push_back(1.0);
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    add(c2 * (right_antiderivative(rho, cuts[j + 1]) - right_antiderivative(rho, cuts[j])));
  }
  return negative > 0.0 ? positive / negative : kInf;
}

double gamma_dirichlet_t_closed(double t, double rho) {
  require_dirichlet_range(rho);
  if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::OutOfRange, "t must lie in (0,1)");
  const int n = static_cast<int>(std::floor(rho / pi));
  const double edge = 1.0 - n * pi / rho;
  const double u = std::min(t, 1.0 - t);  // the ratio is symmetric about t = 1/2
  if (u > edge) return gamma_dirichlet_t_exact(t, rho);
  const double a = std::sin(rho * u) * sine_sum(rho, n);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return a / (a - sign * std::sin(rho) * std::sin(pi * u));
}

GammaResult gamma_dirichlet_closed(double rho) {
  require_dirichlet_range(rho);
  const int n = static_cast<int>(std::floor(rho / pi));
  const double q = pi * std::abs(std::sin(rho));
  GammaResult r;
  r.value = 1.0 + q / (rho * sine_sum(rho, n) - q);
  r.argmin_t = 0.0;
  r.method = GammaMethod::ClosedFormDirichletT1;
  r.weight = WeightKind::PrincipalEigenfunction;
  r.note = "n=" + std::to_string(n);
  return r;
}

GammaResult gamma_star(const GreensKernel& kernel, const GammaOptions& opt) {
  if (kernel.bc() != BoundaryKind::Periodic && kernel.bc() != BoundaryKind::Neumann) {
    fail(ErrorCode::UnsupportedBoundaryKind, "the coefficient-weighted ratio needs periodic or Neumann conditions");
  }
  const PotentialSpec& a = kernel.potential();
  if (a.min_value() < 0.0) fail(ErrorCode::InvalidWeight, "the coefficient takes negative values");
  return gamma_quadrature(kernel, [&a](double s) { return a(s); }, WeightKind::Coefficient, opt);
}

GammaResult gamma_delta(const GreensKernel& kernel, const GammaOptions& opt) {
  return gamma_quadrature(kernel, [](double) { return 1.0; }, WeightKind::One, opt);
}

}  // namespace greensign
