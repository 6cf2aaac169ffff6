#include "greensign/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "greensign/error.hpp"
#include "greensign/spectral.hpp"

namespace greensign {
namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section search for the maximum of h on [a, b].
template <typename F>
double golden_max(const F& h, double a, double b, double* best) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = h(x1);
    }
  }
  const double x = f1 > f2 ? x1 : x2;
  *best = std::max(f1, f2);
  return x;
}

std::vector<double> uniform(int n, double T) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = T * i / (n - 1);
  g.back() = T;
  return g;
}

void require_subinterval(Subinterval iv, double T) {
  if (!(iv.c >= 0.0 && iv.d <= T && iv.c <= iv.d)) {
    fail(ErrorCode::InvalidArgument, "subinterval must satisfy 0 <= c <= d <= T");
  }
}

double safe_eval(const Nonlinearity& f, double t, double x) {
  const double v = f(t, x);
  if (!std::isfinite(v)) {
    fail(ErrorCode::EvaluationFailure,
         "nonlinearity is not finite at t = " + std::to_string(t) + ", x = " + std::to_string(x));
  }
  return v;
}

}  // namespace

double kernel_maximum(const GreensKernel& kernel, const ConeOptions& opt, double* at_t, double* at_s) {
  const double T = kernel.T();
  const int n = std::max(opt.max_scan, 3);
  const std::vector<double> grid = uniform(n, T);
  double best = -std::numeric_limits<double>::infinity();
  double bt = 0.0, bs = 0.0;
  for (double t : grid) {
    for (double s : grid) {
      const double v = kernel(t, s);
      if (v > best) {
        best = v;
        bt = t;
        bs = s;
      }
    }
  }
  // Coordinate directions plus the diagonal, which follows ridges along the
  // kink at s = t.
  const double h = T / (n - 1);
  for (int round = 0; round < 6; ++round) {
    const double before = best;
    double v = 0.0;
    const double t = golden_max([&](double x) { return kernel(x, bs); }, std::max(0.0, bt - h), std::min(T, bt + h), &v);
    if (v > best) {
      best = v;
      bt = t;
    }
    const double s = golden_max([&](double x) { return kernel(bt, x); }, std::max(0.0, bs - h), std::min(T, bs + h), &v);
    if (v > best) {
      best = v;
      bs = s;
    }
    const double lo = std::max({-h, -bt, -bs});
    const double hi = std::min({h, T - bt, T - bs});
    const double d = golden_max([&](double x) { return kernel(bt + x, bs + x); }, lo, hi, &v);
    if (v > best) {
      best = v;
      bt += d;
      bs += d;
    }
    if (best - before <= 1e-16 * std::abs(best)) break;
  }
  if (at_t) *at_t = bt;
  if (at_s) *at_s = bs;
  return best;
}

H3Verdict check_H3(const GreensKernel& kernel, Subinterval iv, const ConeOptions& opt) {
  const double T = kernel.T();
  require_subinterval(iv, T);
  std::vector<double> nodes = uniform(std::max(opt.s_grid, 2), T);
  nodes.push_back(iv.c);
  nodes.push_back(iv.d);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  H3Verdict v;
  v.subinterval = iv;
  v.min_all = std::numeric_limits<double>::infinity();
  v.min_inside = std::numeric_limits<double>::infinity();
  double s_all = 0.0, s_inside = iv.c;
  for (double s : nodes) {
    const double F = integrate_kernel_column(kernel, s, iv.c, iv.d, opt.quadrature);
    // Near-equal values keep the smaller s.
    auto below = [](double x, double best) { return std::isinf(best) || x < best - 1e-12 * std::abs(best); };
    if (below(F, v.min_all)) {
      v.min_all = F;
      s_all = s;
    }
    if (s >= iv.c && s <= iv.d && below(F, v.min_inside)) {
      v.min_inside = F;
      s_inside = s;
    }
  }
  const bool all_ok = v.min_all >= -opt.tolerance;
  const bool inside_ok = v.min_inside > opt.tolerance;
  v.pass = all_ok && inside_ok;
  if (!all_ok) {
    v.witness_s = s_all;
    v.witness_value = v.min_all;
  } else {
    v.witness_s = s_inside;
    v.witness_value = v.min_inside;
  }
  return v;
}

ConeConstants compute_cone_constants(const GreensKernel& kernel, Subinterval iv, const ConeOptions& opt) {
  const double T = kernel.T();
  require_subinterval(iv, T);
  ConeConstants out;
  out.subinterval = iv;
  if (iv.d - iv.c <= 0.0) fail(ErrorCode::NonpositiveEta, "degenerate subinterval gives eta = 0");
  std::vector<double> nodes{iv.c, iv.d};
  for (double s : uniform(std::max(opt.s_grid, 2), T)) {
    if (s > iv.c && s < iv.d) nodes.push_back(s);
  }
  double eta = std::numeric_limits<double>::infinity();
  for (double s : nodes) eta = std::min(eta, integrate_kernel_column(kernel, s, iv.c, iv.d, opt.quadrature));
  out.eta = eta;
  if (!(eta > opt.tolerance)) {
    fail(ErrorCode::NonpositiveEta, "eta = " + std::to_string(eta) + " is not positive on [" + std::to_string(iv.c) +
                                        ", " + std::to_string(iv.d) + "]");
  }
  out.max_G = kernel_maximum(kernel, opt, &out.max_t, &out.max_s);
  if (!(out.max_G > 0.0)) fail(ErrorCode::NonpositiveEta, "kernel has no positive values");
  out.sigma = out.eta / out.max_G;
  return out;
}

SubintervalSearch find_subinterval(const GreensKernel& kernel, const ConeOptions& opt) {
  const double T = kernel.T();
  SubintervalSearch out;
  for (int level = 0; level <= opt.min_level; ++level) {
    const double width = T / std::ldexp(1.0, level);
    const int count = level == 0 ? 1 : (1 << (level + 1)) - 1;
    const H3Verdict* best = nullptr;
    const std::size_t first = out.trace.size();
    for (int j = 0; j < count; ++j) {
      const double c = j * width / 2;
      const double d = std::min(T, c + width);
      out.trace.push_back(check_H3(kernel, {c, d}, opt));
    }
    for (std::size_t i = first; i < out.trace.size(); ++i) {
      const H3Verdict& v = out.trace[i];
      if (v.pass && (!best || v.min_inside > best->min_inside)) best = &v;
    }
    if (best) {
      out.found = best->subinterval;
      out.eta = best->min_inside;
      return out;
    }
  }
  return out;
}

Nonlinearity Nonlinearity::from_expression(const Expression& e, double T) {
  return {[e, T](double t, double x) { return e(t, x, T); }, e.text()};
}

H2Verdict check_H2(const Nonlinearity& f, const ScalarFunction& weight, double gamma, double T, const H2Options& opt) {
  Interval interval(T);
  const int n = std::max(opt.t_samples, 2);
  std::vector<double> ts(static_cast<std::size_t>(n));
  std::vector<double> ws(static_cast<std::size_t>(n));
  double wmax = 0.0;
  for (int i = 0; i < n; ++i) {
    ts[static_cast<std::size_t>(i)] = i + 1 == n ? T : T * i / (n - 1);
    const double w = weight(ts[static_cast<std::size_t>(i)]);
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorCode::InvalidWeight, "weight must be finite and nonnegative");
    ws[static_cast<std::size_t>(i)] = w;
    wmax = std::max(wmax, w);
  }
  if (!(wmax > 0.0)) fail(ErrorCode::InvalidWeight, "weight vanishes on the sample grid");

  H2Verdict v;
  v.gamma = gamma;
  double lo = std::numeric_limits<double>::infinity(), hi = -std::numeric_limits<double>::infinity();
  LatticePoint at_lo, at_hi;
  auto record = [&](double r, const LatticePoint& p) {
    if (r < lo) {
      lo = r;
      at_lo = p;
    }
    if (r > hi) {
      hi = r;
      at_hi = p;
    }
  };

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double w = ws[i];
    for (double x : opt.x_samples) {
      const double fv = safe_eval(f, t, x);
      const LatticePoint p{t, x, fv, w};
      if (w > opt.zero_weight * wmax) {
        record(fv / w, p);
        continue;
      }
      if (std::abs(fv) > opt.zero_value) {
        v.witness = p;
        v.reason = "f does not vanish where the weight does";
        v.m = lo;
        v.M = hi;
        v.ratio = std::numeric_limits<double>::infinity();
        return v;
      }
      // Both vanish: use the one-sided limit of f/w, extrapolated in the step.
      const double dir = t < T ? 1.0 : -1.0;
      auto ratio_at = [&](double step) {
        const double tt = t + dir * step;
        return safe_eval(f, tt, x) / weight(tt);
      };
      const double delta = opt.limit_step * T;
      const double limit = 2.0 * ratio_at(delta) - ratio_at(2.0 * delta);
      if (!std::isfinite(limit)) {
        v.witness = p;
        v.reason = "f/w has no finite limit where the weight vanishes";
        v.ratio = std::numeric_limits<double>::infinity();
        return v;
      }
      record(limit, p);
    }
  }
  v.m = lo;
  v.M = hi;
  v.ratio = hi / lo;
  if (!(lo > 0.0)) {
    v.witness = at_lo;
    v.reason = "lower bound m is not positive";
    v.ratio = std::numeric_limits<double>::infinity();
    return v;
  }
  if (!std::isfinite(hi)) {
    v.witness = at_hi;
    v.reason = "upper bound M is not finite";
    return v;
  }
  if (v.ratio > gamma * (1.0 + opt.tolerance)) {
    v.witness = at_hi;
    v.reason = "M/m exceeds gamma";
    return v;
  }
  v.pass = true;
  return v;
}

H1Verdict check_H1_surrogate(const Nonlinearity& f, double T, const H2Options& opt) {
  const int n = std::max(opt.t_samples, 2);
  H1Verdict v;
  v.note = "finite and nonnegative on the sample lattice; measurability and integrability are not checked";
  for (int i = 0; i < n; ++i) {
    const double t = i + 1 == n ? T : T * i / (n - 1);
    for (double x : opt.x_samples) {
      const double fv = safe_eval(f, t, x);
      if (fv < 0.0) {
        v.witness = LatticePoint{t, x, fv, 0.0};
        return v;
      }
    }
  }
  v.pass = true;
  return v;
}

bool cone_membership(const Eigen::Ref<const Eigen::VectorXd>& grid, const Eigen::Ref<const Eigen::VectorXd>& u,
                     const ConeConstants& cone) {
  if (grid.size() != u.size() || u.size() == 0) fail(ErrorCode::InvalidArgument, "grid and samples differ in size");
  constexpr double tol = 1e-10;
  if (u.minCoeff() < -tol) return false;
  return trapezoid(grid, u) >= cone.sigma * u.cwiseAbs().maxCoeff() - tol;
}

HypothesisReport check_hypotheses(const GreensKernel& kernel, const Nonlinearity& f, const HypothesisOptions& opt) {
  const BoundaryKind bc = kernel.bc();
  const PotentialSpec& a = kernel.potential();
  const double T = kernel.T();
  if (bc == BoundaryKind::Antiperiodic) {
    fail(ErrorCode::UnsupportedBoundaryKind, "antiperiodic kernels have no positive eigenfunction weight");
  }
  HypothesisReport r;
  r.bc = bc;
  r.nonlinearity = f.text;

  const Eigenfunction v = principal_eigenfunction(a, bc, opt.eigen_grid);
  const ScalarFunction weight = [v](double s) { return v(s); };

  bool closed = false;
  if (a.is_constant() && bc == BoundaryKind::Periodic && a.rho() * T > std::numbers::pi) {
    r.gamma_used = gamma_periodic_closed(a.rho(), T);
    closed = true;
  } else if (a.is_constant() && bc == BoundaryKind::Dirichlet && T == 1.0 && a.rho() > std::numbers::pi &&
             a.rho() < 6 * std::numbers::pi) {
    r.gamma_used = gamma_dirichlet_closed(a.rho());
    closed = true;
  }
  if (!closed) r.gamma_used = gamma_quadrature(kernel, weight, WeightKind::PrincipalEigenfunction, opt.gamma);

  r.h2 = check_H2(f, weight, r.gamma_used.value, T, opt.h2);

  if (bc != BoundaryKind::Periodic && bc != BoundaryKind::Neumann) {
    r.h2_star_note = "coefficient weight applies to periodic and Neumann conditions only";
  } else if (a.min_value() < 0.0 || !(a.max_value() > 0.0)) {
    r.h2_star_note = "coefficient is not a nonnegative nonzero weight";
  } else {
    r.gamma_star = gamma_star(kernel, opt.gamma);
    r.h2_star = check_H2(f, [&a](double s) { return a(s); }, r.gamma_star->value, T, opt.h2);
  }

  r.search = find_subinterval(kernel, opt.cone);
  if (r.search.found) {
    r.h3 = check_H3(kernel, *r.search.found, opt.cone);
    r.cone = compute_cone_constants(kernel, *r.search.found, opt.cone);
  } else {
    r.h3 = check_H3(kernel, {0.0, T}, opt.cone);
  }
  r.h1 = check_H1_surrogate(f, T, opt.h2);
  r.pass = r.h1.pass && r.h3.pass && (r.h2.pass || (r.h2_star && r.h2_star->pass));
  return r;
}

}  // namespace greensign
