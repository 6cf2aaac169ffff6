#pragma once

#include <Eigen/Core>
#include <span>
#include <variant>

#include "greensign/types.hpp"

namespace greensign {

/// The coefficient a(t) of the Hill operator u'' + a(t)u.
///
/// Either a constant a = rho^2 (rho > 0) or a tabulated function on a
/// strictly increasing grid from 0 to T, interpolated piecewise-linearly.
class PotentialSpec {
 public:
  struct Constant {
    double rho;
  };
  struct Sampled {
    Eigen::VectorXd grid;
    Eigen::VectorXd values;
  };

  static PotentialSpec constant(double rho, double T);
  static PotentialSpec sampled(Eigen::VectorXd grid, Eigen::VectorXd values);
  /// Tabulates `a` on `nodes` uniform nodes over [0,T].
  static PotentialSpec sampled(const ScalarFunction& a, double T, int nodes);

  double T() const noexcept { return interval_.T(); }
  bool is_constant() const noexcept { return std::holds_alternative<Constant>(kind_); }
  /// Throws InvalidArgument for sampled potentials.
  double rho() const;

  double operator()(double t) const;
  double sup_norm() const;
  double max_value() const;
  double min_value() const;

  /// Interpolation nodes of a sampled potential (empty for constants). The
  /// coefficient is only piecewise smooth across them.
  std::span<const double> nodes() const noexcept;

  const std::variant<Constant, Sampled>& kind() const noexcept { return kind_; }

 private:
  PotentialSpec(std::variant<Constant, Sampled> kind, double T) : kind_(std::move(kind)), interval_(T) {}

  std::variant<Constant, Sampled> kind_;
  Interval interval_;
};

}  // namespace greensign
