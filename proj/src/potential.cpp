#include "greensign/potential.hpp"

#include <algorithm>
#include <cmath>

#include "greensign/error.hpp"

namespace greensign {

PotentialSpec PotentialSpec::constant(double rho, double T) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    fail(ErrorCode::InvalidArgument, "constant potential needs rho > 0");
  }
  return PotentialSpec(Constant{rho}, T);
}

PotentialSpec PotentialSpec::sampled(Eigen::VectorXd grid, Eigen::VectorXd values) {
  if (grid.size() < 2 || grid.size() != values.size()) {
    fail(ErrorCode::InvalidArgument, "sampled potential needs >= 2 nodes and matching value count");
  }
  if (grid(0) != 0.0) fail(ErrorCode::InvalidArgument, "sampled potential grid must start at 0");
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    if (!(grid(i) > grid(i - 1))) {
      fail(ErrorCode::InvalidArgument, "sampled potential grid must be strictly increasing");
    }
  }
  if (!values.allFinite()) fail(ErrorCode::InvalidArgument, "sampled potential values must be finite");
  const double T = grid(grid.size() - 1);
  return PotentialSpec(Sampled{std::move(grid), std::move(values)}, T);
}

PotentialSpec PotentialSpec::sampled(const ScalarFunction& a, double T, int nodes) {
  if (nodes < 2) fail(ErrorCode::InvalidArgument, "need at least two potential nodes");
  Interval interval(T);
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(nodes, 0.0, interval.T());
  grid(nodes - 1) = T;
  Eigen::VectorXd values = grid.unaryExpr([&](double t) { return a(t); });
  return sampled(std::move(grid), std::move(values));
}

double PotentialSpec::rho() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->rho;
  fail(ErrorCode::InvalidArgument, "rho is only defined for constant potentials");
}

double PotentialSpec::operator()(double t) const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->rho * c->rho;
  const auto& s = std::get<Sampled>(kind_);
  const double* first = s.grid.data();
  const double* last = first + s.grid.size();
  if (t <= *first) return s.values(0);
  if (t >= *(last - 1)) return s.values(s.values.size() - 1);
  const auto hi = static_cast<Eigen::Index>(std::upper_bound(first, last, t) - first);
  const Eigen::Index lo = hi - 1;
  const double w = (t - s.grid(lo)) / (s.grid(hi) - s.grid(lo));
  return (1.0 - w) * s.values(lo) + w * s.values(hi);
}

double PotentialSpec::sup_norm() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->rho * c->rho;
  return std::get<Sampled>(kind_).values.cwiseAbs().maxCoeff();
}

double PotentialSpec::max_value() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->rho * c->rho;
  return std::get<Sampled>(kind_).values.maxCoeff();
}

double PotentialSpec::min_value() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->rho * c->rho;
  return std::get<Sampled>(kind_).values.minCoeff();
}

std::span<const double> PotentialSpec::nodes() const noexcept {
  if (const auto* s = std::get_if<Sampled>(&kind_)) {
    return {s->grid.data(), static_cast<std::size_t>(s->grid.size())};
  }
  return {};
}

}  // namespace greensign
