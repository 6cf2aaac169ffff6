#include "greensign/figures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "greensign/error.hpp"
#include "greensign/expression.hpp"
#include "greensign/gamma.hpp"
#include "greensign/greens.hpp"
#include "greensign/solver.hpp"

namespace greensign::figures {

namespace {

constexpr double pi = std::numbers::pi;

// rho/pi = first/50, ..., last/50, skipping multiples of `skip`/50.
template <class Row>
void sweep(int first, int last, int skip, Row&& row) {
  for (int k = first; k <= last; ++k) {
    if (k % skip == 0) continue;
    row(pi * k / 50.0);
  }
}

}  // namespace

report::Table periodic_gamma_sweep(const FigureOptions& opt) {
  report::Table table;
  table.header = {"rho", "gamma_closed", "gamma_quadrature"};
  GammaOptions gopt;
  gopt.t_grid = opt.periodic_t_grid;
  gopt.quadrature = opt.quadrature;
  const ScalarFunction one = [](double) { return 1.0; };
  sweep(51, 400, 100, [&](double rho) {
    const GreensKernel kernel = greens_closed_form(PotentialSpec::constant(rho, 1.0), BoundaryKind::Periodic);
    const double closed = gamma_periodic_closed(rho, 1.0).value;
    const double quad = gamma_quadrature(kernel, one, WeightKind::PrincipalEigenfunction, gopt).value;
    table.add({rho, closed, quad});
  });
  return table;
}

report::Table dirichlet_gamma_profile(const FigureOptions& opt) {
  constexpr double rho = 10.8;
  report::Table table;
  table.header = {"t", "gamma_closed", "gamma_quadrature"};
  GammaOptions gopt;
  gopt.t_grid = opt.profile_t_grid;
  gopt.quadrature = opt.quadrature;
  const GreensKernel kernel = greens_closed_form(PotentialSpec::constant(rho, 1.0), BoundaryKind::Dirichlet);
  const auto samples = gamma_profile(kernel, [](double t) { return std::sin(pi * t); }, gopt);
  for (const auto& s : samples) {
    if (s.t <= 0.0 || s.t >= 1.0) continue;
    table.add({s.t, gamma_dirichlet_t_closed(s.t, rho), s.ratio});
  }
  return table;
}

report::Table dirichlet_gamma_sweep(const FigureOptions& opt) {
  report::Table table;
  table.header = {"rho", "gamma_closed", "gamma_quadrature"};
  GammaOptions gopt;
  gopt.t_grid = opt.sweep_t_grid;
  gopt.quadrature = opt.quadrature;
  const ScalarFunction weight = [](double t) { return std::sin(pi * t); };
  sweep(51, 299, 50, [&](double rho) {
    const GreensKernel kernel = greens_closed_form(PotentialSpec::constant(rho, 1.0), BoundaryKind::Dirichlet);
    const double closed = gamma_dirichlet_closed(rho).value;
    const double quad = gamma_quadrature(kernel, weight, WeightKind::PrincipalEigenfunction, gopt).value;
    table.add({rho, closed, quad});
  });
  return table;
}

report::Table dirichlet_example_profile(const char* rhs_text, const FigureOptions& opt) {
  const Expression rhs = Expression::parse(rhs_text);
  const GreensKernel kernel =
      greens_closed_form(PotentialSpec::constant(std::sqrt(60.0), 1.0), BoundaryKind::Dirichlet);
  SolverOptions sopt;
  sopt.grid = opt.solve_grid;
  sopt.quadrature = opt.quadrature;
  const SolutionProfile profile = solve_linear(kernel, [&](double t) { return rhs(t, 0.0, 1.0); }, sopt);
  report::Table table;
  table.header = {"t", "u"};
  for (Eigen::Index i = 0; i < profile.grid.size(); ++i) table.add({profile.grid(i), profile.values(i)});
  return table;
}

report::Table figure(int number, const FigureOptions& opt) {
  switch (number) {
    case 1:
      return periodic_gamma_sweep(opt);
    case 2:
      return dirichlet_gamma_profile(opt);
    case 3:
      return dirichlet_gamma_sweep(opt);
    case 4:
      return dirichlet_example_profile("t*(1-t)", opt);
    case 5:
      return dirichlet_example_profile("t", opt);
    default:
      fail(ErrorCode::InvalidArgument, "figure number must be 1 to 5, got " + std::to_string(number));
  }
}

}  // namespace greensign::figures
