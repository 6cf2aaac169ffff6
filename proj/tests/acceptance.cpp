// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "greensign/cone.hpp"
#include "greensign/error.hpp"
#include "greensign/gamma.hpp"
#include "greensign/greens.hpp"
#include "greensign/solver.hpp"
#include "greensign/spectral.hpp"

using namespace greensign;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double sine(double t) { return std::sin(pi * t); }

Outcome dirichlet_gamma() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const double rho = std::sqrt(60.0);
  const GammaResult closed = gamma_dirichlet_closed(rho);
  const GreensKernel g = make_kernel(PotentialSpec::constant(rho, 1), BoundaryKind::Dirichlet);
  const GammaResult quad = gamma_quadrature(g, sine);
  const double elapsed = seconds_since(start);
  o.require(std::abs(closed.value - 1.3629) <= 0.005, "closed value outside 1.3629 +- 0.005");
  o.require(closed.value > 4.0 / 3.0, "closed value not above 4/3");
  o.require(std::abs(closed.value - quad.value) <= 1e-5, "quadrature disagrees");
  o.require(elapsed < 5, "too slow");
  o.detail = fmt("gamma = %.6f, quadrature %.6f, |diff| %.1e, %.2f s", closed.value, quad.value,
                 std::abs(closed.value - quad.value), elapsed) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

Outcome dirichlet_examples() {
  Outcome o;
  const double rho = std::sqrt(60.0);
  const PotentialSpec pot = PotentialSpec::constant(rho, 1);
  const GreensKernel g = make_kernel(pot, BoundaryKind::Dirichlet);
  SolverOptions opt;
  opt.grid = 2001;

  auto start = std::chrono::steady_clock::now();
  const auto rhs1 = [](double t, double) { return t * (1 - t); };
  const SolutionProfile p1 = solve_linear(g, [&](double t) { return rhs1(t, 0); }, opt);
  const Verification v1 = verify_solution(p1, pot, BoundaryKind::Dirichlet, rhs1);
  const double t1 = seconds_since(start);
  const double interior_min = p1.values.segment(1, p1.values.size() - 2).minCoeff();
  o.require(interior_min > 0, "t(1-t) profile not positive inside");
  o.require(v1.bc_error <= 1e-9, "boundary error");
  o.require(v1.residual_norm <= 1e-5, "ODE residual");
  o.require(t1 < 5, "t(1-t) solve too slow");

  start = std::chrono::steady_clock::now();
  const SolutionProfile p2 = solve_linear(g, [](double t) { return t; }, opt);
  const double t2 = seconds_since(start);
  o.require(p2.values.minCoeff() < 0 && p2.values.maxCoeff() > 0, "rhs t profile does not change sign");
  o.require(t2 < 5, "rhs t solve too slow");

  o.detail = fmt("t(1-t): min interior %.3e, bc %.1e, residual %.1e, %.2f s; t: range [%.3e, %.3e], %.2f s",
                 interior_min, v1.bc_error, v1.residual_norm, t1, p2.values.minCoeff(), p2.values.maxCoeff(), t2) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

// Composite Simpson rule on [a, b] with n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * f(a + i * h);
  return sum * h / 3;
}

Outcome periodic_normalization() {
  Outcome o;
  double worst = 0;
  for (double rho : {1.0, 1.5 * pi, 5.0, 11.0}) {
    const PotentialSpec pot = PotentialSpec::constant(rho, 1);
    for (const GreensKernel& g : {greens_closed_form(pot, BoundaryKind::Periodic),
                                  greens_numeric(pot, BoundaryKind::Periodic)}) {
      for (int i = 0; i < 20; ++i) {
        const double t = (i + 0.5) / 20;
        const auto row = [&](double s) { return g(t, s); };
        const double integral = simpson(row, 0, t, 4000) + simpson(row, t, 1, 4000);
        worst = std::max(worst, std::abs(integral - 1 / (rho * rho)));
      }
    }
  }
  o.require(worst <= 1e-8, "row integral off");
  o.detail = fmt("max |int G ds - 1/rho^2| = %.1e over 4 rho x 20 nodes, closed and numeric kernels", worst) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

Outcome unit_solution() {
  Outcome o;
  double worst = 0;
  for (const PotentialSpec& pot :
       {PotentialSpec::constant(1.5 * pi, 1),
        PotentialSpec::sampled([](double t) { return 60 + 10 * std::sin(2 * pi * t) + 5 * t * (1 - t); }, 1, 101)}) {
    const GreensKernel g = make_kernel(pot, BoundaryKind::Periodic);
    const SolutionProfile p = solve_linear(g, [&](double t) { return pot(t); });
    worst = std::max(worst, (p.values.array() - 1).abs().maxCoeff());
  }
  o.require(worst <= 1e-7, "u differs from 1");
  o.detail = fmt("max |u - 1| = %.1e (constant and sampled coefficient)", worst) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

Outcome periodic_gamma_cases() {
  Outcome o;
  // Two values of rho/pi in each quarter-period case, two periods deep.
  const double xs[12] = {1.3, 1.7, 2.3, 2.7, 3.3, 3.7, 4.3, 4.7, 5.5, 6.5, 7.5, 8.5};
  double worst = 0, smallest = INFINITY;
  std::string cases;
  for (double x : xs) {
    const double rho = x * pi;
    const GreensKernel g = make_kernel(PotentialSpec::constant(rho, 1), BoundaryKind::Periodic);
    GammaOptions opt;
    opt.t_grid = 51;
    const GammaResult quad = gamma_quadrature(g, [](double) { return 1.0; }, WeightKind::PrincipalEigenfunction, opt);
    const GammaResult closed = gamma_periodic_closed(rho, 1);
    worst = std::max(worst, std::abs(closed.value - quad.value));
    smallest = std::min(smallest, quad.value);
    const std::string label = periodic_gamma_case(rho, 1).label;
    if (cases.find(label) == std::string::npos) cases += (cases.empty() ? "" : ",") + label;
  }
  o.require(worst <= 1e-6, "closed form and quadrature disagree");
  o.require(smallest > 1, "quadrature gamma not above 1");
  o.require(cases.size() == 11, "not all four cases covered");
  o.detail = fmt("12 rho, cases {%s}, max |closed - quadrature| = %.1e, min gamma %.4f", cases.c_str(), worst,
                 smallest) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

SignVerdict scanned_sign(const GreensKernel& g, int n) {
  bool pos = false, neg = false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = g(g.T() * (i + 0.5) / n, g.T() * (j + 0.5) / n);
      pos = pos || v > 1e-9;
      neg = neg || v < -1e-9;
    }
  }
  if (pos && neg) return SignVerdict::ChangesSign;
  return pos ? SignVerdict::NonNegative : SignVerdict::NonPositive;
}

Outcome eigenvalues_and_signs() {
  Outcome o;
  double worst = 0;
  for (double rho : {1.0, 5.0, 9.0}) {
    const PotentialSpec flat = PotentialSpec::sampled([rho](double) { return rho * rho; }, 1, 101);
    const double r2 = rho * rho;
    for (BoundaryKind bc : kAllBoundaryKinds) {
      double exact = -r2;
      if (bc == BoundaryKind::Antiperiodic || bc == BoundaryKind::Dirichlet) exact = pi * pi - r2;
      if (bc == BoundaryKind::Mixed1 || bc == BoundaryKind::Mixed2) exact = pi * pi / 4 - r2;
      const EigenResult r = smallest_eigenvalue(flat, bc);
      if (r.method != EigenMethod::Shooting) o.require(false, "sampled potential did not use shooting");
      worst = std::max(worst, std::abs(r.lambda - exact));
    }
  }
  o.require(worst <= 1e-6, "shooting eigenvalue off");

  struct Case {
    PotentialSpec p;
    BoundaryKind bc;
  };
  const auto sampled = [](auto a) { return PotentialSpec::sampled(a, 1, 101); };
  const std::vector<Case> cases = {
      {sampled([](double t) { return 0.5 + 0.3 * std::cos(2 * pi * t); }), BoundaryKind::Periodic},
      {sampled([](double t) { return 22 + 3 * std::sin(2 * pi * t); }), BoundaryKind::Periodic},
      {sampled([](double t) { return -1 + t; }), BoundaryKind::Periodic},
      {sampled([](double t) { return 5 * t; }), BoundaryKind::Dirichlet},
      {sampled([](double t) { return 60 + 10 * t * (1 - t); }), BoundaryKind::Dirichlet},
      {sampled([](double t) { return 2 + t; }), BoundaryKind::Neumann},
      {sampled([](double t) { return -3 + std::cos(3 * t); }), BoundaryKind::Neumann},
      {sampled([](double t) { return 1 + t * t; }), BoundaryKind::Mixed1},
      {sampled([](double t) { return 16 + 2 * t; }), BoundaryKind::Mixed1},
      {sampled([](double t) { return 20 * t * t; }), BoundaryKind::Mixed2},
  };
  int agree = 0;
  int seen[3] = {0, 0, 0};
  for (const Case& c : cases) {
    const SignClass cls = classify_sign(c.p, c.bc);
    ++seen[static_cast<int>(cls.verdict)];
    if (cls.verdict == scanned_sign(greens_numeric(c.p, c.bc), 100)) ++agree;
  }
  o.require(agree == 10, "classification disagrees with the kernel scan");
  o.detail = fmt("max eigenvalue error %.1e (3 rho x 6 kinds); classification %d/10 agree (%d nonpositive, %d "
                 "nonnegative, %d sign-changing)",
                 worst, agree, seen[0], seen[1], seen[2]) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

Outcome numeric_kernels() {
  Outcome o;
  double worst = 0;
  for (const auto& [rho, bc] : {std::pair{1.5 * pi, BoundaryKind::Periodic},
                                std::pair{std::sqrt(60.0), BoundaryKind::Dirichlet}}) {
    const PotentialSpec pot = PotentialSpec::constant(rho, 1);
    const GreensKernel closed = greens_closed_form(pot, bc);
    const GreensKernel numeric = greens_numeric(pot, bc);
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const double t = i / 49.0, s = j / 49.0;
        worst = std::max(worst, std::abs(closed(t, s) - numeric(t, s)));
      }
    }
  }
  o.require(worst <= 1e-8, "numeric kernel off");
  o.detail = fmt("sup |numeric - closed| = %.1e on 50x50, periodic and Dirichlet", worst) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

Outcome sandwich_certificate() {
  Outcome o;
  const double gamma = gamma_dirichlet_closed(std::sqrt(60.0)).value;
  const auto f1 = Nonlinearity::from_expression(Expression::parse("t*(1-t)"), 1);
  const H2Verdict good = check_H2(f1, sine, gamma, 1);
  o.require(good.pass, "t(1-t) rejected");
  o.require(good.ratio <= 4.0 / 3.0 + 1e-9, "ratio above 4/3");
  const auto f2 = Nonlinearity::from_expression(Expression::parse("t"), 1);
  const H2Verdict bad = check_H2(f2, sine, gamma, 1);
  o.require(!bad.pass, "f = t accepted");
  const bool boundary = bad.witness && (bad.witness->t == 0 || bad.witness->t == 1);
  o.require(boundary, "witness not at the boundary");
  o.detail = fmt("t(1-t): m %.6f, M %.6f, ratio %.6f <= %.6f; t: fails at t = %g (%s)", good.m, good.M, good.ratio,
                 gamma, bad.witness ? bad.witness->t : NAN, bad.reason.c_str()) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);

  double invariance = 0;
  for (double rho : {1.0, 1.5 * pi, 5.0, 11.0}) {
    const GreensKernel g = greens_closed_form(PotentialSpec::constant(rho, 1), BoundaryKind::Periodic);
    for (int k = 0; k < 400; ++k) {
      const double t = u(rng), s = u(rng), h = u(rng);
      const double tt = std::fmod(t + h, 1.0), ss = std::fmod(s + h, 1.0);
      invariance = std::max(invariance, std::abs(g(tt, ss) - g(t, s)));
      invariance = std::max(invariance, std::abs(g(1 - t, 1 - s) - g(t, s)));
    }
  }
  o.require(invariance <= 1e-10, "translation/reflection invariance");

  double scaling = 0;
  {
    const GreensKernel g = make_kernel(PotentialSpec::constant(std::sqrt(60.0), 1), BoundaryKind::Dirichlet);
    GammaOptions opt;
    opt.t_grid = 201;
    const double base = gamma_quadrature(g, sine, WeightKind::PrincipalEigenfunction, opt).value;
    for (double c : {1e-3, 0.5, 7.0, 1e4}) {
      const double scaled = gamma_quadrature(
          g, [c](double t) { return c * sine(t); }, WeightKind::PrincipalEigenfunction, opt).value;
      scaling = std::max(scaling, std::abs(scaled - base) / base);
    }
  }
  o.require(scaling <= 1e-12, "gamma weight scaling");

  double linearity = 0;
  {
    const PotentialSpec pot = PotentialSpec::sampled([](double t) { return 20 + 5 * std::cos(3 * t); }, 1, 51);
    SolverOptions opt;
    opt.grid = 401;
    for (BoundaryKind bc : {BoundaryKind::Periodic, BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
      const GreensKernel g = make_kernel(pot, bc);
      const double a = 2.5, b = -1.5;
      auto s1 = [](double t) { return t * t; };
      auto s2 = [](double t) { return std::cos(3 * t); };
      const auto p1 = solve_linear(g, s1, opt);
      const auto p2 = solve_linear(g, s2, opt);
      const auto p12 = solve_linear(g, [&](double t) { return a * s1(t) + b * s2(t); }, opt);
      linearity = std::max(linearity, (p12.values - a * p1.values - b * p2.values).cwiseAbs().maxCoeff());
    }
  }
  o.require(linearity <= 1e-9, "linearity");

  double worst_factor = INFINITY;
  std::string errors;
  {
    const PotentialSpec pot = PotentialSpec::sampled([](double t) { return 40 + 15 * std::cos(2 * pi * t); }, 1, 51);
    SolverOptions opt;
    opt.grid = 11;
    double previous = 0;
    for (int nodes : {51, 101, 201, 401}) {
      const GreensKernel g = greens_numeric(pot, BoundaryKind::Periodic, nodes);
      const auto p = solve_linear(g, [&](double t) { return pot(t); }, opt);
      const double err = (p.values.array() - 1).abs().maxCoeff();
      errors += fmt("%s%.1e", errors.empty() ? "" : " ", err);
      if (previous > 0) worst_factor = std::min(worst_factor, previous / err);
      previous = err;
    }
  }
  o.require(worst_factor >= 8, "grid convergence");

  o.detail = fmt("invariance %.1e, weight scaling %.1e, linearity %.1e, u=1 errors %s (min factor %.1f)", invariance,
                 scaling, linearity, errors.c_str(), worst_factor) +
             (o.detail.empty() ? "" : " [" + o.detail + "]");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"Dirichlet gamma for rho = sqrt(60)", dirichlet_gamma},
      {"Dirichlet examples with forcing t(1-t) and t", dirichlet_examples},
      {"periodic row integrals equal 1/rho^2", periodic_normalization},
      {"coefficient as forcing gives u = 1", unit_solution},
      {"periodic gamma closed form against quadrature", periodic_gamma_cases},
      {"eigenvalues and sign classification", eigenvalues_and_signs},
      {"numeric against closed-form kernels", numeric_kernels},
      {"sandwich certificate for the Dirichlet example", sandwich_certificate},
      {"property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
