#include "greensign/greens.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <string>

#include "greensign/error.hpp"

namespace greensign {
namespace {

void require_point(double T, double t, double s) {
  if (!(t >= 0.0 && t <= T && s >= 0.0 && s <= T)) {
    fail(ErrorCode::OutOfRange, "kernel evaluated outside [0,T]^2");
  }
}

Eigen::Matrix2d exact_or_integrated_monodromy(const PotentialSpec& potential, int grid) {
  if (potential.is_constant()) return constant_monodromy(potential.rho() * potential.rho(), potential.T());
  return monodromy(potential, 0.0, grid);
}

std::string resonance_message(const PotentialSpec& potential, BoundaryKind bc) {
  std::string msg = "potential is resonant for ";
  msg += to_string(bc);
  if (potential.is_constant()) msg += " conditions (rho*T/pi = " + std::to_string(potential.rho() * potential.T() / std::numbers::pi) + ")";
  return msg;
}

}  // namespace

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> boundary_matrices(BoundaryKind bc) {
  Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d C = Eigen::Matrix2d::Zero();
  switch (bc) {
    case BoundaryKind::Periodic:
      B.setIdentity();
      C = -Eigen::Matrix2d::Identity();
      break;
    case BoundaryKind::Antiperiodic:
      B.setIdentity();
      C.setIdentity();
      break;
    case BoundaryKind::Dirichlet:
      B(0, 0) = 1.0;
      C(1, 0) = 1.0;
      break;
    case BoundaryKind::Neumann:
      B(0, 1) = 1.0;
      C(1, 1) = 1.0;
      break;
    case BoundaryKind::Mixed1:
      B(0, 1) = 1.0;
      C(1, 0) = 1.0;
      break;
    case BoundaryKind::Mixed2:
      B(0, 0) = 1.0;
      C(1, 1) = 1.0;
      break;
  }
  return {B, C};
}

double relative_boundary_determinant(const Eigen::Matrix2d& monodromy, BoundaryKind bc) {
  const auto [B, C] = boundary_matrices(bc);
  const double scale = std::max(1.0, monodromy.cwiseAbs().maxCoeff());
  return std::abs((B + C * monodromy).determinant()) / scale;
}

bool is_resonant(const PotentialSpec& potential, BoundaryKind bc, double tolerance, int grid) {
  return relative_boundary_determinant(exact_or_integrated_monodromy(potential, grid), bc) < tolerance;
}

double greens_periodic_constant(double rho, double T, double t, double s) {
  const auto p = PotentialSpec::constant(rho, T);
  if (is_resonant(p, BoundaryKind::Periodic)) fail(ErrorCode::ResonantPotential, resonance_message(p, BoundaryKind::Periodic));
  require_point(T, t, s);
  const double d = 2.0 * rho * (1.0 - std::cos(rho * T));
  if (s <= t) return (std::sin(rho * (t - s)) + std::sin(rho * (T - t + s))) / d;
  return (std::sin(rho * (s - t)) + std::sin(rho * (T - s + t))) / d;
}

double greens_dirichlet_constant(double rho, double T, double t, double s) {
  const auto p = PotentialSpec::constant(rho, T);
  if (is_resonant(p, BoundaryKind::Dirichlet)) fail(ErrorCode::ResonantPotential, resonance_message(p, BoundaryKind::Dirichlet));
  require_point(T, t, s);
  const double d = rho * std::sin(rho * T);
  if (s <= t) return -std::sin(rho * s) * std::sin(rho * (T - t)) / d;
  return -std::sin(rho * t) * std::sin(rho * (T - s)) / d;
}

double GreensKernel::operator()(double t, double s) const {
  if (form_ == KernelForm::ClosedForm) {
    const double rho = rho_;
    const double T = potential_.T();
    if (bc_ == BoundaryKind::Periodic) {
      if (s <= t) return (std::sin(rho * (t - s)) + std::sin(rho * (T - t + s))) / denominator_;
      return (std::sin(rho * (s - t)) + std::sin(rho * (T - s + t))) / denominator_;
    }
    if (s <= t) return -std::sin(rho * s) * std::sin(rho * (T - t)) / denominator_;
    return -std::sin(rho * t) * std::sin(rho * (T - s)) / denominator_;
  }
  const Eigen::Matrix2d Yt = system_->at(t);
  const Eigen::Matrix2d Ys = system_->at(s);
  const Eigen::Vector2d phi = Yt.row(0).transpose();
  const Eigen::Vector2d psi(-Ys(0, 1), Ys(0, 0));
  double g = phi.dot(coupling_ * psi);
  if (s <= t) g += phi.dot(psi);
  return g;
}

double GreensKernel::dt(double t, double s) const {
  if (form_ == KernelForm::ClosedForm) {
    const double rho = rho_;
    const double T = potential_.T();
    if (bc_ == BoundaryKind::Periodic) {
      if (s < t) return rho * (std::cos(rho * (t - s)) - std::cos(rho * (T - t + s))) / denominator_;
      return rho * (std::cos(rho * (T - s + t)) - std::cos(rho * (s - t))) / denominator_;
    }
    if (s < t) return rho * std::sin(rho * s) * std::cos(rho * (T - t)) / denominator_;
    return -rho * std::cos(rho * t) * std::sin(rho * (T - s)) / denominator_;
  }
  const Eigen::Matrix2d Yt = system_->at(t);
  const Eigen::Matrix2d Ys = system_->at(s);
  const Eigen::Vector2d dphi = Yt.row(1).transpose();
  const Eigen::Vector2d psi(-Ys(0, 1), Ys(0, 0));
  double g = dphi.dot(coupling_ * psi);
  if (s < t) g += dphi.dot(psi);
  return g;
}

GreensKernel greens_closed_form(const PotentialSpec& potential, BoundaryKind bc) {
  if (!potential.is_constant()) fail(ErrorCode::InvalidArgument, "closed-form kernels need a constant potential");
  if (bc != BoundaryKind::Periodic && bc != BoundaryKind::Dirichlet) {
    fail(ErrorCode::UnsupportedBoundaryKind, "no closed-form kernel for " + std::string(to_string(bc)));
  }
  if (is_resonant(potential, bc)) fail(ErrorCode::ResonantPotential, resonance_message(potential, bc));
  GreensKernel k(potential, bc, KernelForm::ClosedForm);
  const double rho = potential.rho();
  const double T = potential.T();
  k.rho_ = rho;
  k.denominator_ = bc == BoundaryKind::Periodic ? 2.0 * rho * (1.0 - std::cos(rho * T)) : rho * std::sin(rho * T);
  return k;
}

GreensKernel greens_numeric(const PotentialSpec& potential, BoundaryKind bc, int grid_size) {
  auto system = std::make_shared<const FundamentalSystem>(potential, 0.0, grid_size);
  const Eigen::Matrix2d Y = system->monodromy();
  if (relative_boundary_determinant(Y, bc) < kResonanceTolerance) {
    fail(ErrorCode::ResonantPotential, resonance_message(potential, bc));
  }
  const auto [B, C] = boundary_matrices(bc);
  const Eigen::Matrix2d M = B + C * Y;
  GreensKernel k(potential, bc, KernelForm::Numeric);
  k.system_ = std::move(system);
  k.coupling_ = -M.inverse() * C * Y;
  return k;
}

GreensKernel make_kernel(const PotentialSpec& potential, BoundaryKind bc, int grid_size) {
  if (potential.is_constant() && (bc == BoundaryKind::Periodic || bc == BoundaryKind::Dirichlet)) {
    return greens_closed_form(potential, bc);
  }
  return greens_numeric(potential, bc, grid_size);
}

std::pair<KernelPart, KernelPart> kernel_parts(const GreensKernel& kernel) {
  return {KernelPart(kernel, +1), KernelPart(kernel, -1)};
}

}  // namespace greensign
