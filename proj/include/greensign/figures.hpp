#pragma once

#include "greensign/quadrature.hpp"
#include "greensign/report.hpp"

namespace greensign::figures {

struct FigureOptions {
  int sweep_t_grid = 201;    ///< t-nodes per quadrature gamma in the Dirichlet sweep
  int periodic_t_grid = 11;  ///< the periodic ratio does not depend on t, a few nodes suffice
  int profile_t_grid = 201;  ///< t-nodes of the gamma(t, 10.8) curve
  int solve_grid = 2001;
  QuadratureOptions quadrature;
};

inline constexpr int kFigureCount = 5;

/// rho, gamma_closed, gamma_quadrature for the periodic problem with T = 1,
/// rho/pi from 1.02 to 8 in steps of 0.02 (even multiples are resonant and skipped).
report::Table periodic_gamma_sweep(const FigureOptions& opt = {});

/// t, gamma_closed, gamma_quadrature for the Dirichlet problem, T = 1, rho = 10.8.
report::Table dirichlet_gamma_profile(const FigureOptions& opt = {});

/// rho, gamma_closed, gamma_quadrature for the Dirichlet problem with T = 1,
/// rho/pi from 1.02 to 5.98 in steps of 0.02 (integers skipped).
report::Table dirichlet_gamma_sweep(const FigureOptions& opt = {});

/// t, u for u'' + 60u = rhs, u(0) = u(1) = 0.
report::Table dirichlet_example_profile(const char* rhs_text, const FigureOptions& opt = {});

/// Dispatches 1..5; throws InvalidArgument otherwise.
report::Table figure(int number, const FigureOptions& opt = {});

}  // namespace greensign::figures
