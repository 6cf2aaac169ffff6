#include "greensign/fundamental.hpp"

#include <cmath>

#include "greensign/error.hpp"
#include "greensign/ode.hpp"

namespace greensign {
namespace {

void require_nodes(int nodes) {
  if (nodes < 3) fail(ErrorCode::InvalidArgument, "fundamental system needs at least 3 grid nodes");
}

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (!m.allFinite()) fail(ErrorCode::IntegratorFailure, "non-finite values in fundamental solutions");
}

}  // namespace

FundamentalSystem::FundamentalSystem(const PotentialSpec& potential, double shift, int nodes)
    : T_(potential.T()), states_(4, nodes), coefficient_(nodes) {
  require_nodes(nodes);
  auto rhs = [&](double t, const Eigen::Matrix2d& Y) -> Eigen::Matrix2d {
    Eigen::Matrix2d A;
    A << 0.0, 1.0, -(potential(t) + shift), 0.0;
    return A * Y;
  };
  integrate_rk4(rhs, Eigen::Matrix2d::Identity().eval(), 0.0, T_, nodes - 1,
                [&](int i, double t, const Eigen::Matrix2d& Y) {
                  states_.col(i) = Eigen::Map<const Eigen::Vector4d>(Y.data());
                  coefficient_(i) = potential(t) + shift;
                });
  require_finite(states_);
}

Eigen::Matrix2d FundamentalSystem::node(Eigen::Index i) const {
  return Eigen::Map<const Eigen::Matrix2d>(states_.col(i).data());
}

Eigen::Matrix2d FundamentalSystem::at(double t) const {
  const auto [i, theta] = locate_uniform(t, T_, nodes());
  if (theta == 0.0) return node(i);
  if (theta == 1.0) return node(i + 1);
  const double h = step();
  const auto y0 = states_.col(i);
  const auto y1 = states_.col(i + 1);
  const double q0 = coefficient_(i);
  const double q1 = coefficient_(i + 1);
  Eigen::Matrix2d Y;
  // Rows of the state: value (0, 2) with slope from row (1, 3); slope rows
  // with second derivative -q * value.
  for (int c = 0; c < 2; ++c) {
    const int v = 2 * c;
    const int d = v + 1;
    Y(0, c) = hermite_cubic(theta, h, y0(v), y1(v), y0(d), y1(d));
    Y(1, c) = hermite_cubic(theta, h, y0(d), y1(d), -q0 * y0(v), -q1 * y1(v));
  }
  return Y;
}

Eigen::Matrix2d monodromy(const PotentialSpec& potential, double shift, int nodes) {
  require_nodes(nodes);
  auto rhs = [&](double t, const Eigen::Matrix2d& Y) -> Eigen::Matrix2d {
    Eigen::Matrix2d A;
    A << 0.0, 1.0, -(potential(t) + shift), 0.0;
    return A * Y;
  };
  Eigen::Matrix2d Y = integrate_rk4(rhs, Eigen::Matrix2d::Identity().eval(), 0.0, potential.T(), nodes - 1);
  require_finite(Y);
  return Y;
}

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> monodromy_with_derivative(const PotentialSpec& potential, double shift,
                                                                      int nodes) {
  require_nodes(nodes);
  using State = Eigen::Matrix<double, 2, 4>;
  auto rhs = [&](double t, const State& X) -> State {
    Eigen::Matrix2d A;
    A << 0.0, 1.0, -(potential(t) + shift), 0.0;
    State out;
    out.leftCols<2>() = A * X.leftCols<2>();
    out.rightCols<2>() = A * X.rightCols<2>();
    out.block<1, 2>(1, 2) -= X.block<1, 2>(0, 0);
    return out;
  };
  State X = State::Zero();
  X.leftCols<2>().setIdentity();
  X = integrate_rk4(rhs, X, 0.0, potential.T(), nodes - 1);
  require_finite(X);
  return {X.leftCols<2>(), X.rightCols<2>()};
}

Eigen::Matrix2d constant_monodromy(double q, double T) {
  Eigen::Matrix2d Y;
  if (q > 0.0) {
    const double w = std::sqrt(q);
    Y << std::cos(w * T), std::sin(w * T) / w, -w * std::sin(w * T), std::cos(w * T);
  } else if (q < 0.0) {
    const double w = std::sqrt(-q);
    Y << std::cosh(w * T), std::sinh(w * T) / w, w * std::sinh(w * T), std::cosh(w * T);
  } else {
    Y << 1.0, T, 0.0, 1.0;
  }
  return Y;
}

}  // namespace greensign
