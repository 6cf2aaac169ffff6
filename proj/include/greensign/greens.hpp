#pragma once

#include <Eigen/Core>
#include <memory>
#include <span>
#include <utility>

#include "greensign/fundamental.hpp"
#include "greensign/potential.hpp"
#include "greensign/types.hpp"

namespace greensign {

inline constexpr int kDefaultGrid = 2001;
inline constexpr double kResonanceTolerance = 1e-9;

enum class KernelForm { ClosedForm, Numeric };

/// Boundary operator B [u(0), u'(0)]^T + C [u(T), u'(T)]^T = 0.
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> boundary_matrices(BoundaryKind bc);

/// Boundary determinant det(B + C Y(T)) relative to max(1, |Y(T)|_max).
double relative_boundary_determinant(const Eigen::Matrix2d& monodromy, BoundaryKind bc);

/// True when the homogeneous problem has a nontrivial solution, i.e. the
/// relative boundary determinant falls below `tolerance`. Constant potentials
/// use the exact monodromy; sampled ones integrate on `grid` nodes.
bool is_resonant(const PotentialSpec& potential, BoundaryKind bc, double tolerance = kResonanceTolerance,
                 int grid = kDefaultGrid);

/// Periodic Green's function of u'' + rho^2 u on [0, T].
double greens_periodic_constant(double rho, double T, double t, double s);
/// Dirichlet Green's function of u'' + rho^2 u on [0, T].
double greens_dirichlet_constant(double rho, double T, double t, double s);

/// Green's function G(t, s) of u'' + a(t)u = sigma under one boundary kind:
/// u(t) = int_0^T G(t, s) sigma(s) ds.
///
/// Immutable and cheap to copy (numeric data is shared); evaluation is
/// thread-safe.
class GreensKernel {
 public:
  double operator()(double t, double s) const;
  /// dG/dt, using the s < t branch when s < t and the t <= s branch otherwise.
  double dt(double t, double s) const;

  double T() const noexcept { return potential_.T(); }
  const PotentialSpec& potential() const noexcept { return potential_; }
  BoundaryKind bc() const noexcept { return bc_; }
  KernelForm form() const noexcept { return form_; }
  std::span<const double> breakpoints() const noexcept { return potential_.nodes(); }

  /// Numeric kernels only: the stored fundamental system and the coupling
  /// matrix P with G = phi(t)^T (P + [s <= t] I) psi(s).
  const FundamentalSystem* fundamental() const noexcept { return system_.get(); }
  const Eigen::Matrix2d& coupling() const noexcept { return coupling_; }

 private:
  GreensKernel(PotentialSpec potential, BoundaryKind bc, KernelForm form)
      : potential_(std::move(potential)), bc_(bc), form_(form) {}

  friend GreensKernel greens_closed_form(const PotentialSpec&, BoundaryKind);
  friend GreensKernel greens_numeric(const PotentialSpec&, BoundaryKind, int);

  PotentialSpec potential_;
  BoundaryKind bc_;
  KernelForm form_;
  double rho_ = 0.0;
  double denominator_ = 0.0;
  std::shared_ptr<const FundamentalSystem> system_;
  Eigen::Matrix2d coupling_ = Eigen::Matrix2d::Zero();
};

/// Closed-form kernel; only constant potentials with Periodic or Dirichlet
/// conditions have one.
GreensKernel greens_closed_form(const PotentialSpec& potential, BoundaryKind bc);

/// Kernel assembled from two fundamental solutions computed by RK4 on
/// `grid_size` uniform nodes.
GreensKernel greens_numeric(const PotentialSpec& potential, BoundaryKind bc, int grid_size = kDefaultGrid);

/// Closed form when available, numeric otherwise.
GreensKernel make_kernel(const PotentialSpec& potential, BoundaryKind bc, int grid_size = kDefaultGrid);

/// max(sign * G, 0): the positive (sign = +1) or negative (sign = -1) part.
class KernelPart {
 public:
  KernelPart(GreensKernel kernel, int sign) : kernel_(std::move(kernel)), sign_(sign) {}
  double operator()(double t, double s) const {
    const double v = sign_ * kernel_(t, s);
    return v > 0.0 ? v : 0.0;
  }
  double T() const noexcept { return kernel_.T(); }
  std::span<const double> breakpoints() const noexcept { return kernel_.breakpoints(); }

 private:
  GreensKernel kernel_;
  int sign_;
};

/// (G+, G-), both nonnegative with G = G+ - G-.
std::pair<KernelPart, KernelPart> kernel_parts(const GreensKernel& kernel);

}  // namespace greensign
