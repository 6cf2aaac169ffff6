#pragma once

#include <Eigen/Core>
#include <utility>

#include "greensign/potential.hpp"

namespace greensign {

/// Fundamental matrix Y(t) = [[u1, u2], [u1', u2']] of
///   u'' + (a(t) + shift) u = 0,   Y(0) = I,
/// tabulated by fixed-step RK4 on a uniform grid of `nodes` points over
/// [0, T]. Off-grid values use cubic Hermite interpolation with the exact
/// nodal slopes (u'' = -(a + shift) u), so storage is O(nodes).
class FundamentalSystem {
 public:
  FundamentalSystem(const PotentialSpec& potential, double shift, int nodes);

  double T() const noexcept { return T_; }
  Eigen::Index nodes() const noexcept { return states_.cols(); }
  double step() const noexcept { return T_ / static_cast<double>(nodes() - 1); }

  /// Y at node i.
  Eigen::Matrix2d node(Eigen::Index i) const;
  /// Y(t) for t in [0, T].
  Eigen::Matrix2d at(double t) const;
  Eigen::Matrix2d monodromy() const { return node(nodes() - 1); }

 private:
  double T_;
  // Column i holds Y(t_i) in column-major order: u1, u1', u2, u2'.
  Eigen::Matrix<double, 4, Eigen::Dynamic> states_;
  Eigen::VectorXd coefficient_;  // a(t_i) + shift
};

/// Y(T) only, without tabulating the interior.
Eigen::Matrix2d monodromy(const PotentialSpec& potential, double shift, int nodes);

/// Y(T) together with dY(T)/d(shift), from the variational equation
/// Z' = A Z + dA Y with dA = [[0, 0], [-1, 0]].
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> monodromy_with_derivative(const PotentialSpec& potential, double shift,
                                                                      int nodes);

/// Closed-form Y(T) for a constant coefficient q = rho^2 + shift (any sign).
Eigen::Matrix2d constant_monodromy(double q, double T);

}  // namespace greensign
