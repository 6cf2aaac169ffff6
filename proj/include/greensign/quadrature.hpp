#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "greensign/error.hpp"

namespace greensign {

/// Gauss-Legendre nodes and weights on [-1, 1].
template <typename Scalar = double>
struct GaussLegendre {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector nodes;
  Vector weights;

  explicit GaussLegendre(int order) : nodes(order), weights(order) {
    if (order < 1) fail(ErrorCode::InvalidArgument, "Gauss-Legendre order must be >= 1");
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = 0; i < (order + 1) / 2; ++i) {
      // Newton on P_n from the Chebyshev-like initial guess.
      Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(order) + Scalar(0.5)));
      Scalar dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= order; ++k) {
          const Scalar p2 = ((Scalar(2 * k - 1)) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
          p0 = p1;
          p1 = p2;
        }
        dp = Scalar(order) * (x * p1 - p0) / (x * x - Scalar(1));
        const Scalar dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon() * Scalar(4)) break;
      }
      const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
      nodes(i) = -x;
      nodes(order - 1 - i) = x;
      weights(i) = weights(order - 1 - i) = w;
    }
  }
};

/// Shared, lazily built rule of the given order.
inline const GaussLegendre<double>& gauss_legendre_rule(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre<double>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, GaussLegendre<double>(order)).first;
  return it->second;
}

struct QuadratureOptions {
  int order = 10;       ///< Gauss-Legendre points per panel
  int panels = 32;      ///< panels per unit of T; segments get a proportional share
  int root_scan = 512;  ///< sign-scan panels used to locate kernel zeros
  double root_tol = 1e-12;
};

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
template <typename F>
double integrate_panels(const F& f, double a, double b, int panels, const GaussLegendre<double>& rule) {
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) sum += rule.weights(k) * f(mid + 0.5 * width * rule.nodes(k));
    total += 0.5 * width * sum;
  }
  return total;
}

/// Integral over one smooth segment of a function living on [0, T]; the
/// panel count scales with the segment length.
template <typename F>
double integrate_segment(const F& f, double a, double b, double T, const QuadratureOptions& opt) {
  if (!(b > a)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(opt.panels * (b - a) / T - 1e-9)));
  const double value = integrate_panels(f, a, b, panels, gauss_legendre_rule(opt.order));
  if (!std::isfinite(value)) fail(ErrorCode::QuadratureFailure, "non-finite quadrature panel");
  return value;
}

/// What the quadrature needs from a Green's kernel: pointwise evaluation, the
/// interval length and the points where it is only piecewise smooth in s
/// (besides s = t).
template <typename K>
concept KernelLike = requires(const K& k, double t, double s) {
  { k(t, s) } -> std::convertible_to<double>;
  { k.T() } -> std::convertible_to<double>;
  { k.breakpoints() } -> std::convertible_to<std::span<const double>>;
};

namespace detail {

inline void sort_unique(std::vector<double>& pts, double T) {
  std::sort(pts.begin(), pts.end());
  const double eps = 1e-14 * T;
  std::vector<double> out;
  out.reserve(pts.size());
  for (double p : pts) {
    if (out.empty() || p - out.back() > eps) out.push_back(p);
  }
  pts.swap(out);
}

template <typename F>
double bisect_root(const F& f, double a, double b, double fa, double tol) {
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Zeros of s -> g(t, s) on (0, T), located by a sign scan over
/// `opt.root_scan` panels (plus the diagonal s = t) and refined by bisection.
template <KernelLike Kernel>
std::vector<double> kernel_row_zeros(const Kernel& g, double t, const QuadratureOptions& opt) {
  const double T = g.T();
  std::vector<double> scan;
  scan.reserve(static_cast<std::size_t>(opt.root_scan) + 2);
  for (int j = 0; j <= opt.root_scan; ++j) scan.push_back(T * j / opt.root_scan);
  scan.back() = T;
  if (t > 0.0 && t < T) scan.push_back(t);
  detail::sort_unique(scan, T);

  auto row = [&](double s) { return static_cast<double>(g(t, s)); };
  std::vector<double> values(scan.size());
  for (std::size_t j = 0; j < scan.size(); ++j) values[j] = row(scan[j]);

  std::vector<double> zeros;
  for (std::size_t j = 0; j + 1 < scan.size(); ++j) {
    const double a = scan[j], b = scan[j + 1];
    const double fa = values[j], fb = values[j + 1];
    if (j > 0 && fa == 0.0) zeros.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      zeros.push_back(detail::bisect_root(row, a, b, fa, opt.root_tol * T));
    }
  }
  return zeros;
}

/// Integrals of the positive and negative parts of a kernel row against a
/// nonnegative weight.
struct RowParts {
  double positive = 0.0;  ///< int G+(t,s) w(s) ds
  double negative = 0.0;  ///< int G-(t,s) w(s) ds
  double net() const noexcept { return positive - negative; }
};

/// Splits [0, T] at s = t, at the kernel's own breakpoints and at the zeros of
/// g(t, .), so that every Gauss panel sees a smooth integrand of one sign.
template <KernelLike Kernel, typename Weight>
RowParts integrate_kernel_parts(const Kernel& g, double t, const Weight& w, const QuadratureOptions& opt) {
  const double T = g.T();
  std::vector<double> cuts = kernel_row_zeros(g, t, opt);
  cuts.push_back(0.0);
  cuts.push_back(T);
  if (t > 0.0 && t < T) cuts.push_back(t);
  for (double b : g.breakpoints()) cuts.push_back(b);
  detail::sort_unique(cuts, T);

  RowParts parts;
  auto integrand = [&](double s) { return static_cast<double>(g(t, s)) * static_cast<double>(w(s)); };
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double v = integrate_segment(integrand, cuts[j], cuts[j + 1], T, opt);
    if (v >= 0.0) {
      parts.positive += v;
    } else {
      parts.negative -= v;
    }
  }
  return parts;
}

/// int_0^T g(t, s) f(s) ds, split only where the integrand loses smoothness.
template <KernelLike Kernel, typename F>
double integrate_kernel_row(const Kernel& g, double t, const F& f, const QuadratureOptions& opt) {
  const double T = g.T();
  std::vector<double> cuts{0.0, T};
  if (t > 0.0 && t < T) cuts.push_back(t);
  for (double b : g.breakpoints()) cuts.push_back(b);
  detail::sort_unique(cuts, T);
  auto integrand = [&](double s) { return static_cast<double>(g(t, s)) * static_cast<double>(f(s)); };
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) total += integrate_segment(integrand, cuts[j], cuts[j + 1], T, opt);
  return total;
}

/// int_c^d g(t, s) dt for fixed s (integration in the first argument).
template <KernelLike Kernel>
double integrate_kernel_column(const Kernel& g, double s, double c, double d, const QuadratureOptions& opt) {
  const double T = g.T();
  std::vector<double> cuts{c, d};
  if (s > c && s < d) cuts.push_back(s);
  for (double b : g.breakpoints()) {
    if (b > c && b < d) cuts.push_back(b);
  }
  detail::sort_unique(cuts, T);
  auto integrand = [&](double t) { return static_cast<double>(g(t, s)); };
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) total += integrate_segment(integrand, cuts[j], cuts[j + 1], T, opt);
  return total;
}

/// Trapezoidal rule on arbitrary nodes.
inline double trapezoid(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) total += 0.5 * (x(i + 1) - x(i)) * (y(i) + y(i + 1));
  return total;
}

}  // namespace greensign
