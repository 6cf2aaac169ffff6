#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "greensign/expression.hpp"
#include "greensign/gamma.hpp"
#include "greensign/greens.hpp"
#include "greensign/quadrature.hpp"

namespace greensign {

struct Subinterval {
  double c = 0.0;
  double d = 0.0;
};

struct ConeConstants {
  double eta = 0.0;    ///< min over s in [c,d] of int_c^d G(t,s) dt
  double sigma = 0.0;  ///< eta / max_G
  double max_G = 0.0;
  double max_t = 0.0;  ///< where max_G is attained
  double max_s = 0.0;
  Subinterval subinterval;
};

struct ConeOptions {
  int s_grid = 201;  ///< nodes for the column integrals over [0,T]
  int max_scan = 201;  ///< lattice size of the kernel-maximum scan
  int min_level = 6;   ///< narrowest searched width is T / 2^min_level
  double tolerance = 1e-10;
  QuadratureOptions quadrature;
};

/// Largest kernel value on [0,T]^2: lattice scan, then alternating
/// golden-section refinement in t and s around the best node.
double kernel_maximum(const GreensKernel& kernel, const ConeOptions& opt, double* at_t = nullptr,
                      double* at_s = nullptr);

/// NonpositiveEta when eta <= tolerance.
ConeConstants compute_cone_constants(const GreensKernel& kernel, Subinterval subinterval,
                                     const ConeOptions& opt = {});

/// Column integrals F(s) = int_c^d G(t,s) dt checked against
///   F(s) >= -tol for every s-grid node, F(s) > tol for nodes in [c,d].
struct H3Verdict {
  bool pass = false;
  Subinterval subinterval;
  double min_all = 0.0;     ///< min F over I
  double min_inside = 0.0;  ///< min F over [c,d]
  double witness_s = 0.0;   ///< worst node of the violated condition
  double witness_value = 0.0;
};

H3Verdict check_H3(const GreensKernel& kernel, Subinterval subinterval, const ConeOptions& opt = {});

struct SubintervalSearch {
  std::optional<Subinterval> found;
  double eta = 0.0;
  std::vector<H3Verdict> trace;  ///< every candidate examined, in order
};

/// Widths T, T/2, ..., T/2^min_level; at width w the candidates start at
/// multiples of w/2. The first width with a passing candidate wins, and among
/// those the largest min_inside.
SubintervalSearch find_subinterval(const GreensKernel& kernel, const ConeOptions& opt = {});

/// f(t, x) on t in [0,T], x >= 0.
struct Nonlinearity {
  std::function<double(double, double)> f;
  std::string text;

  double operator()(double t, double x) const { return f(t, x); }
  static Nonlinearity from_expression(const Expression& e, double T);
};

struct LatticePoint {
  double t = 0.0;
  double x = 0.0;
  double f = 0.0;
  double weight = 0.0;
};

struct H2Options {
  int t_samples = 201;
  std::vector<double> x_samples = {0.0, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  double zero_weight = 1e-12;  ///< weights below this fraction of the maximum count as zero
  double zero_value = 1e-12;   ///< |f| allowed where the weight is zero
  double limit_step = 1e-6;    ///< one-sided step (times T) for limit ratios at zero weight
  double tolerance = 1e-12;    ///< relative slack on M/m <= gamma
};

/// Sampled evidence for m w(t) <= f(t,x) <= M w(t) with M/m <= gamma.
struct H2Verdict {
  bool pass = false;
  double m = 0.0;
  double M = 0.0;
  double ratio = 0.0;
  double gamma = 0.0;
  std::optional<LatticePoint> witness;
  std::string reason;
};

/// EvaluationFailure on non-finite f.
H2Verdict check_H2(const Nonlinearity& f, const ScalarFunction& weight, double gamma, double T,
                   const H2Options& opt = {});

/// f finite and nonnegative on the lattice; measurability cannot be sampled.
struct H1Verdict {
  bool pass = false;
  std::optional<LatticePoint> witness;
  std::string note;
};

H1Verdict check_H1_surrogate(const Nonlinearity& f, double T, const H2Options& opt = {});

/// u >= -1e-10 on the grid and trapezoid(u) >= sigma max|u| - 1e-10.
bool cone_membership(const Eigen::Ref<const Eigen::VectorXd>& grid, const Eigen::Ref<const Eigen::VectorXd>& u,
                     const ConeConstants& cone);

struct HypothesisReport {
  BoundaryKind bc = BoundaryKind::Periodic;
  std::string nonlinearity;
  H1Verdict h1;
  H2Verdict h2;
  std::optional<H2Verdict> h2_star;
  std::string h2_star_note;
  GammaResult gamma_used;
  std::optional<GammaResult> gamma_star;
  H3Verdict h3;
  SubintervalSearch search;
  std::optional<ConeConstants> cone;
  bool pass = false;  ///< h1, h3 and one of h2 / h2_star
  std::string evidence = "sampled evidence";
};

struct HypothesisOptions {
  ConeOptions cone;
  H2Options h2;
  GammaOptions gamma;
  int eigen_grid = kDefaultGrid;
};

/// Runs every check for one kernel and nonlinearity. The eigenfunction weight
/// and gamma use the closed forms where they exist, quadrature otherwise.
HypothesisReport check_hypotheses(const GreensKernel& kernel, const Nonlinearity& f,
                                  const HypothesisOptions& opt = {});

}  // namespace greensign
