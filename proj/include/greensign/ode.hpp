#pragma once

#include <Eigen/Core>
#include <cmath>
#include <utility>

namespace greensign {

/// One classical fourth-order Runge-Kutta step for y' = f(t, y).
///
/// `State` is any fixed-size Eigen type; `f` returns something assignable to
/// it. Kept as a free template so the same step drives the fundamental
/// matrix, the lambda-variational system and the eigenfunction shooting.
template <typename Rhs, typename State>
State rk4_step(const Rhs& f, typename State::Scalar t, const State& y, typename State::Scalar h) {
  using Scalar = typename State::Scalar;
  const Scalar half = Scalar(0.5) * h;
  const State k1 = f(t, y);
  const State k2 = f(t + half, State(y + half * k1));
  const State k3 = f(t + half, State(y + half * k2));
  const State k4 = f(t + h, State(y + h * k3));
  return y + (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

/// Fixed-step RK4 over [t0, t1] with `steps` uniform steps. `observe(i, t, y)`
/// is called at every node, including the initial one.
template <typename Rhs, typename State, typename Observer>
State integrate_rk4(const Rhs& f, State y, typename State::Scalar t0, typename State::Scalar t1, int steps,
                    Observer&& observe) {
  using Scalar = typename State::Scalar;
  const Scalar h = (t1 - t0) / Scalar(steps);
  observe(0, t0, y);
  for (int i = 0; i < steps; ++i) {
    const Scalar t = t0 + Scalar(i) * h;
    y = rk4_step(f, t, y, h);
    observe(i + 1, i + 1 == steps ? t1 : t0 + Scalar(i + 1) * h, y);
  }
  return y;
}

template <typename Rhs, typename State>
State integrate_rk4(const Rhs& f, State y, typename State::Scalar t0, typename State::Scalar t1, int steps) {
  return integrate_rk4(f, std::move(y), t0, t1, steps, [](int, typename State::Scalar, const State&) {});
}

/// Cubic Hermite interpolation on [x0, x0 + h] from values and slopes at both
/// ends, evaluated at local coordinate x0 + theta*h.
template <typename Scalar>
Scalar hermite_cubic(Scalar theta, Scalar h, Scalar y0, Scalar y1, Scalar d0, Scalar d1) {
  const Scalar t2 = theta * theta;
  const Scalar t3 = t2 * theta;
  const Scalar h00 = Scalar(2) * t3 - Scalar(3) * t2 + Scalar(1);
  const Scalar h10 = t3 - Scalar(2) * t2 + theta;
  const Scalar h01 = Scalar(-2) * t3 + Scalar(3) * t2;
  const Scalar h11 = t3 - t2;
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

/// Locates `t` on a uniform grid of `nodes` points over [0, T]: returns the
/// left node index and the local coordinate in [0, 1].
template <typename Scalar>
std::pair<Eigen::Index, Scalar> locate_uniform(Scalar t, Scalar T, Eigen::Index nodes) {
  const Scalar h = T / Scalar(nodes - 1);
  Scalar x = t / h;
  if (!(x > Scalar(0))) return {0, Scalar(0)};
  auto i = static_cast<Eigen::Index>(std::floor(x));
  if (i >= nodes - 1) return {nodes - 2, Scalar(1)};
  return {i, x - Scalar(i)};
}

}  // namespace greensign
