#include "greensign/spectral.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "greensign/error.hpp"
#include "greensign/fundamental.hpp"
#include "greensign/ode.hpp"

namespace greensign {
namespace {

using std::numbers::pi;

double closed_form_eigenvalue(double rho, double T, BoundaryKind bc) {
  const double base = pi / T;
  switch (bc) {
    case BoundaryKind::Periodic:
    case BoundaryKind::Neumann:
      return -rho * rho;
    case BoundaryKind::Antiperiodic:
    case BoundaryKind::Dirichlet:
      return base * base - rho * rho;
    case BoundaryKind::Mixed1:
    case BoundaryKind::Mixed2:
      return 0.25 * base * base - rho * rho;
  }
  return 0.0;
}

// Entry of Y(T) that vanishes exactly at the eigenvalues of a separated
// boundary kind; it is positive for lambda below the spectrum.
double separated_entry(const Eigen::Matrix2d& Y, BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::Dirichlet:
      return Y(0, 1);
    case BoundaryKind::Neumann:
      return Y(1, 0);
    case BoundaryKind::Mixed1:
      return Y(0, 0);
    case BoundaryKind::Mixed2:
      return Y(1, 1);
    default:
      return 0.0;
  }
}

template <typename F>
double bisect(const F& f, double lo, double hi, double flo, double tol) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol || hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Window {
  double lo;
  double hi;
  double step;
};

// Every eigenvalue lies above -max a (Rayleigh quotient), and the first one
// lies below -min a + (pi/T)^2.
Window search_window(const PotentialSpec& potential, const SpectralOptions& opt) {
  const double base = pi / potential.T();
  const double norm = potential.sup_norm();
  return {-norm - 1.0, norm + base * base + 1.0, std::min(opt.scan_step, 0.25 * base * base)};
}

double shoot_separated(const PotentialSpec& potential, BoundaryKind bc, const SpectralOptions& opt) {
  auto f = [&](double lambda) { return separated_entry(monodromy(potential, lambda, opt.grid), bc); };
  const Window w = search_window(potential, opt);
  double lo = w.lo;
  double flo = f(lo);
  while (lo < w.hi) {
    const double hi = lo + w.step;
    const double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((fhi > 0.0) != (flo > 0.0)) return bisect(f, lo, hi, flo, opt.root_tol);
    lo = hi;
    flo = fhi;
  }
  fail(ErrorCode::BracketingFailure, "no eigenvalue bracket for " + std::string(to_string(bc)) + " conditions");
}

double shoot_periodic(const PotentialSpec& potential, const SpectralOptions& opt) {
  auto f = [&](double lambda) { return monodromy(potential, lambda, opt.grid).trace() - 2.0; };
  const Window w = search_window(potential, opt);
  double lo = w.lo;
  double flo = f(lo);
  while (lo < w.hi) {
    const double hi = lo + w.step;
    const double fhi = f(hi);
    if (fhi <= 0.0) return fhi == 0.0 ? hi : bisect(f, lo, hi, flo, opt.root_tol);
    lo = hi;
    flo = fhi;
  }
  fail(ErrorCode::BracketingFailure, "no periodic eigenvalue bracket");
}

// Past the first periodic eigenvalue the discriminant decreases to -2; when
// the first antiperiodic pair coincides it only touches -2, so its minimum is
// located through the lambda-derivative.
double shoot_antiperiodic(const PotentialSpec& potential, const SpectralOptions& opt) {
  auto both = [&](double lambda) {
    const auto [Y, Z] = monodromy_with_derivative(potential, lambda, opt.grid);
    return std::pair{Y.trace() + 2.0, Z.trace()};
  };
  auto value = [&](double lambda) { return both(lambda).first; };
  auto slope = [&](double lambda) { return both(lambda).second; };

  const Window w = search_window(potential, opt);
  double lo = shoot_periodic(potential, opt);
  double flo = value(lo);
  double slo = slope(lo);
  while (lo < w.hi) {
    const double hi = lo + w.step;
    const auto [fhi, shi] = both(hi);
    if (shi < 0.0) {
      if (fhi <= 0.0) return fhi == 0.0 ? hi : bisect(value, lo, hi, flo, opt.root_tol);
    } else {
      const double m = bisect(slope, lo, hi, slo, 0.0);
      const double fm = value(m);
      if (fm <= 0.0) return bisect(value, lo, m, flo, opt.root_tol);
      if (fm <= opt.double_root_tol) return m;
      fail(ErrorCode::BracketingFailure, "antiperiodic discriminant turned before reaching -2");
    }
    lo = hi;
    flo = fhi;
    slo = shi;
  }
  fail(ErrorCode::BracketingFailure, "no antiperiodic eigenvalue bracket");
}

}  // namespace

std::string_view to_string(SignVerdict verdict) {
  switch (verdict) {
    case SignVerdict::NonPositive:
      return "NonPositive";
    case SignVerdict::NonNegative:
      return "NonNegative";
    case SignVerdict::ChangesSign:
      return "ChangesSign";
  }
  return "?";
}

std::string_view to_string(EigenMethod method) {
  return method == EigenMethod::ClosedForm ? "closed-form" : "shooting";
}

EigenResult smallest_eigenvalue(const PotentialSpec& potential, BoundaryKind bc, const SpectralOptions& opt) {
  if (potential.is_constant()) {
    return {closed_form_eigenvalue(potential.rho(), potential.T(), bc), bc, EigenMethod::ClosedForm};
  }
  double lambda = 0.0;
  switch (bc) {
    case BoundaryKind::Periodic:
      lambda = shoot_periodic(potential, opt);
      break;
    case BoundaryKind::Antiperiodic:
      lambda = shoot_antiperiodic(potential, opt);
      break;
    default:
      lambda = shoot_separated(potential, bc, opt);
      break;
  }
  return {lambda, bc, EigenMethod::Shooting};
}

SignClass classify_sign(const PotentialSpec& potential, BoundaryKind bc, const SpectralOptions& opt) {
  if (bc == BoundaryKind::Antiperiodic) {
    fail(ErrorCode::UnsupportedBoundaryKind, "no eigenvalue sign rule for antiperiodic kernels");
  }
  if (is_resonant(potential, bc, kResonanceTolerance, opt.grid)) {
    fail(ErrorCode::ResonantPotential, "cannot classify the sign of a resonant problem");
  }
  SignClass out;
  out.bc = bc;
  auto eig = [&](BoundaryKind kind) {
    const EigenResult r = smallest_eigenvalue(potential, kind, opt);
    out.witnesses.push_back(r);
    if (std::abs(r.lambda) < opt.zero_tol) {
      fail(ErrorCode::Undetermined, "smallest " + std::string(to_string(kind)) + " eigenvalue is zero within tolerance");
    }
    return r.lambda;
  };

  switch (bc) {
    case BoundaryKind::Periodic: {
      const double lp = eig(BoundaryKind::Periodic);
      if (lp > 0.0) {
        out.verdict = SignVerdict::NonPositive;
        out.rule = "lambda_periodic > 0";
        break;
      }
      const double la = eig(BoundaryKind::Antiperiodic);
      out.verdict = la > 0.0 ? SignVerdict::NonNegative : SignVerdict::ChangesSign;
      out.rule = la > 0.0 ? "lambda_periodic < 0 <= lambda_antiperiodic" : "lambda_antiperiodic < 0";
      break;
    }
    case BoundaryKind::Neumann: {
      const double ln = eig(BoundaryKind::Neumann);
      if (ln > 0.0) {
        out.verdict = SignVerdict::NonPositive;
        out.rule = "lambda_neumann > 0";
        break;
      }
      const double m1 = eig(BoundaryKind::Mixed1);
      const double m2 = eig(BoundaryKind::Mixed2);
      const bool nonnegative = m1 > 0.0 && m2 > 0.0;
      out.verdict = nonnegative ? SignVerdict::NonNegative : SignVerdict::ChangesSign;
      out.rule = nonnegative ? "lambda_neumann < 0, lambda_mixed1 >= 0, lambda_mixed2 >= 0"
                             : "min(lambda_mixed1, lambda_mixed2) < 0";
      break;
    }
    case BoundaryKind::Dirichlet:
    case BoundaryKind::Mixed1:
    case BoundaryKind::Mixed2: {
      const double l = eig(bc);
      const std::string name = "lambda_" + std::string(to_string(bc));
      out.verdict = l > 0.0 ? SignVerdict::NonPositive : SignVerdict::ChangesSign;
      out.rule = l > 0.0 ? name + " > 0" : name + " < 0";
      break;
    }
    case BoundaryKind::Antiperiodic:
      break;
  }
  return out;
}

double Eigenfunction::operator()(double t) const {
  const double T = grid(grid.size() - 1);
  const auto [i, theta] = locate_uniform(t, T, grid.size());
  const double h = grid(i + 1) - grid(i);
  return hermite_cubic(theta, h, values(i), values(i + 1), slopes(i), slopes(i + 1));
}

Eigenfunction principal_eigenfunction(const PotentialSpec& potential, BoundaryKind bc, int grid_size,
                                      const SpectralOptions& opt) {
  if (grid_size < 3) fail(ErrorCode::InvalidArgument, "eigenfunction grid needs at least 3 nodes");
  const double T = potential.T();
  Eigenfunction v;
  v.bc = bc;
  v.grid = Eigen::VectorXd::LinSpaced(grid_size, 0.0, T);
  v.grid(grid_size - 1) = T;
  v.values.resize(grid_size);
  v.slopes.resize(grid_size);

  if (bc == BoundaryKind::Antiperiodic) {
    fail(ErrorCode::UnsupportedBoundaryKind, "the antiperiodic principal eigenfunction changes sign");
  }
  const EigenResult eig = smallest_eigenvalue(potential, bc, opt);
  v.lambda = eig.lambda;

  if (potential.is_constant()) {
    const double k = bc == BoundaryKind::Dirichlet ? pi / T : 0.5 * pi / T;
    for (int i = 0; i < grid_size; ++i) {
      const double t = v.grid(i);
      switch (bc) {
        case BoundaryKind::Periodic:
        case BoundaryKind::Neumann:
          v.values(i) = 1.0;
          v.slopes(i) = 0.0;
          break;
        case BoundaryKind::Dirichlet:
        case BoundaryKind::Mixed2:
          v.values(i) = std::sin(k * t);
          v.slopes(i) = k * std::cos(k * t);
          break;
        case BoundaryKind::Mixed1:
          v.values(i) = std::cos(k * t);
          v.slopes(i) = -k * std::sin(k * t);
          break;
        case BoundaryKind::Antiperiodic:
          break;
      }
    }
  } else {
    const FundamentalSystem system(potential, eig.lambda, grid_size);
    Eigen::Vector2d c;
    switch (bc) {
      case BoundaryKind::Periodic: {
        // Null vector of Y(T) - I: the row with the larger entries fixes it.
        const Eigen::Matrix2d A = system.monodromy() - Eigen::Matrix2d::Identity();
        const Eigen::Index r = A.row(0).norm() >= A.row(1).norm() ? 0 : 1;
        c = Eigen::Vector2d(-A(r, 1), A(r, 0));
        break;
      }
      case BoundaryKind::Neumann:
      case BoundaryKind::Mixed1:
        c = Eigen::Vector2d(1.0, 0.0);
        break;
      default:
        c = Eigen::Vector2d(0.0, 1.0);
        break;
    }
    for (int i = 0; i < grid_size; ++i) {
      const Eigen::Vector2d y = system.node(i) * c;
      v.values(i) = y(0);
      v.slopes(i) = y(1);
    }
    const Eigen::Index mid = grid_size / 2;
    const double peak = v.values.cwiseAbs().maxCoeff();
    const double scale = (v.values(mid) < 0.0 ? -1.0 : 1.0) / peak;
    v.values *= scale;
    v.slopes *= scale;
  }

  for (int i = 1; i + 1 < grid_size; ++i) {
    if (!(v.values(i) > 0.0)) {
      fail(ErrorCode::NotPositive, "principal eigenfunction is not positive at t = " + std::to_string(v.grid(i)));
    }
  }
  return v;
}

}  // namespace greensign
