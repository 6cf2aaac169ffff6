#include "doctest.h"

#include <cmath>
#include <numbers>

#include "greensign/error.hpp"
#include "greensign/greens.hpp"
#include "greensign/spectral.hpp"

using namespace greensign;
using std::numbers::pi;

namespace {

PotentialSpec flat(double rho, double T = 1.0, int nodes = 101) {
  return PotentialSpec::sampled([rho](double) { return rho * rho; }, T, nodes);
}

// Sign pattern of the kernel from a plain lattice scan.
SignVerdict scanned_sign(const GreensKernel& g, int n) {
  bool pos = false, neg = false;
  const double scale = 1e-9;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = g(g.T() * (i + 0.5) / n, g.T() * (j + 0.5) / n);
      pos = pos || v > scale;
      neg = neg || v < -scale;
    }
  }
  if (pos && neg) return SignVerdict::ChangesSign;
  return pos ? SignVerdict::NonNegative : SignVerdict::NonPositive;
}

double error_code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return static_cast<double>(e.code());
  }
  return -1;
}

}  // namespace

TEST_CASE("constant-potential eigenvalues") {
  const auto p = PotentialSpec::constant(std::sqrt(60.0), 1);
  CHECK(smallest_eigenvalue(p, BoundaryKind::Dirichlet).lambda == doctest::Approx(pi * pi - 60));
  CHECK(smallest_eigenvalue(PotentialSpec::constant(1.5 * pi, 1), BoundaryKind::Periodic).lambda ==
        doctest::Approx(-2.25 * pi * pi));
  CHECK(smallest_eigenvalue(p, BoundaryKind::Dirichlet).method == EigenMethod::ClosedForm);
}

TEST_CASE("shooting matches the constant closed forms") {
  for (double rho : {1.0, 5.0, 9.0}) {
    for (BoundaryKind bc : kAllBoundaryKinds) {
      const double exact = smallest_eigenvalue(PotentialSpec::constant(rho, 1), bc).lambda;
      const EigenResult shot = smallest_eigenvalue(flat(rho), bc);
      CHECK(shot.method == EigenMethod::Shooting);
      CHECK(std::abs(shot.lambda - exact) <= 1e-6);
    }
  }
  const auto longer = flat(2.0, 3.0, 61);
  CHECK(std::abs(smallest_eigenvalue(longer, BoundaryKind::Dirichlet).lambda - ((pi / 3) * (pi / 3) - 4)) <= 1e-6);
  CHECK(std::abs(smallest_eigenvalue(longer, BoundaryKind::Mixed1).lambda - ((pi / 6) * (pi / 6) - 4)) <= 1e-6);
}

TEST_CASE("periodic eigenvalue lies below the antiperiodic one") {
  const auto pots = {flat(3.0), PotentialSpec::sampled([](double t) { return 60 + 10 * std::sin(2 * pi * t); }, 1, 101),
                     PotentialSpec::sampled([](double t) { return -1 + 4 * t; }, 1, 51),
                     PotentialSpec::sampled([](double t) { return t < 0.5 ? 30.0 : 5.0; }, 1, 201)};
  for (const auto& p : pots) {
    CHECK(smallest_eigenvalue(p, BoundaryKind::Periodic).lambda <
          smallest_eigenvalue(p, BoundaryKind::Antiperiodic).lambda);
  }
}

TEST_CASE("classification examples") {
  CHECK(classify_sign(PotentialSpec::constant(std::sqrt(60.0), 1), BoundaryKind::Dirichlet).verdict ==
        SignVerdict::ChangesSign);
  const auto half = classify_sign(PotentialSpec::constant(0.5, 1), BoundaryKind::Periodic);
  CHECK(half.verdict == SignVerdict::NonNegative);
  REQUIRE(half.witnesses.size() == 2);
  CHECK(half.witnesses[1].lambda == doctest::Approx(pi * pi - 0.25));

  const auto minus_one = PotentialSpec::sampled([](double) { return -1.0; }, 1, 51);
  const auto verdict = classify_sign(minus_one, BoundaryKind::Periodic);
  CHECK(verdict.verdict == SignVerdict::NonPositive);
  CHECK(verdict.witnesses[0].lambda == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(scanned_sign(greens_numeric(minus_one, BoundaryKind::Periodic), 100) == SignVerdict::NonPositive);

  CHECK(error_code_of([] { classify_sign(PotentialSpec::constant(0.5, 1), BoundaryKind::Antiperiodic); }) ==
        static_cast<double>(ErrorCode::UnsupportedBoundaryKind));
  CHECK(error_code_of([] { classify_sign(PotentialSpec::constant(2 * pi, 1), BoundaryKind::Periodic); }) ==
        static_cast<double>(ErrorCode::ResonantPotential));
  // lambda_antiperiodic = 0 exactly at rho = pi while the periodic problem is
  // still uniquely solvable.
  CHECK(error_code_of([] { classify_sign(PotentialSpec::constant(pi, 1), BoundaryKind::Periodic); }) ==
        static_cast<double>(ErrorCode::Undetermined));
}

TEST_CASE("classification agrees with a lattice scan of the kernel") {
  struct Case {
    PotentialSpec p;
    BoundaryKind bc;
  };
  const std::vector<Case> cases = {
      {PotentialSpec::constant(0.5, 1), BoundaryKind::Periodic},
      {PotentialSpec::constant(1.5 * pi, 1), BoundaryKind::Periodic},
      {PotentialSpec::constant(std::sqrt(60.0), 1), BoundaryKind::Dirichlet},
      {PotentialSpec::constant(2.0, 1), BoundaryKind::Dirichlet},
      {PotentialSpec::constant(1.0, 1), BoundaryKind::Neumann},
      {PotentialSpec::constant(2.0, 1), BoundaryKind::Neumann},
      {PotentialSpec::constant(1.0, 1), BoundaryKind::Mixed1},
      {PotentialSpec::constant(2.0, 1), BoundaryKind::Mixed2},
      {PotentialSpec::constant(4.0, 1), BoundaryKind::Mixed1},
      {PotentialSpec::constant(3.5, 1), BoundaryKind::Periodic},
      {PotentialSpec::sampled([](double) { return -1.0; }, 1, 51), BoundaryKind::Periodic},
      {PotentialSpec::sampled([](double t) { return 60 + 10 * std::sin(2 * pi * t); }, 1, 101), BoundaryKind::Periodic},
      {PotentialSpec::sampled([](double t) { return 2 + t; }, 1, 51), BoundaryKind::Neumann},
      {PotentialSpec::sampled([](double t) { return 5 * t; }, 1, 51), BoundaryKind::Dirichlet},
      {PotentialSpec::sampled([](double t) { return 20 * t * t; }, 1, 51), BoundaryKind::Mixed2},
  };
  int verdicts[3] = {0, 0, 0};
  for (const auto& c : cases) {
    const SignClass cls = classify_sign(c.p, c.bc);
    ++verdicts[static_cast<int>(cls.verdict)];
    CHECK_MESSAGE(cls.verdict == scanned_sign(greens_numeric(c.p, c.bc), 100), to_string(c.bc), " ", cls.rule);
  }
  CHECK(verdicts[0] > 0);
  CHECK(verdicts[1] > 0);
  CHECK(verdicts[2] > 0);
}

TEST_CASE("principal eigenfunctions") {
  const auto v = principal_eigenfunction(PotentialSpec::constant(1.5 * pi, 1), BoundaryKind::Periodic);
  CHECK(v.values.minCoeff() == 1.0);
  CHECK(v.values.maxCoeff() == 1.0);

  const auto vd = principal_eigenfunction(PotentialSpec::constant(3.0, 1), BoundaryKind::Dirichlet);
  double err = 0;
  for (Eigen::Index i = 0; i < vd.grid.size(); ++i) err = std::max(err, std::abs(vd.values(i) - std::sin(pi * vd.grid(i))));
  CHECK(err <= 1e-8);

  const auto vs = principal_eigenfunction(flat(3.0), BoundaryKind::Dirichlet);
  err = 0;
  for (Eigen::Index i = 0; i < vs.grid.size(); ++i) err = std::max(err, std::abs(vs.values(i) - std::sin(pi * vs.grid(i))));
  CHECK(err <= 1e-6);
  CHECK(vs(0.25) == doctest::Approx(std::sin(pi / 4)).epsilon(1e-6));
}

TEST_CASE("shooting eigenfunctions solve their problems") {
  const auto p = PotentialSpec::sampled([](double t) { return 6 + 4 * std::cos(2 * pi * t) + 3 * t; }, 1, 101);
  for (BoundaryKind bc : {BoundaryKind::Periodic, BoundaryKind::Dirichlet, BoundaryKind::Neumann, BoundaryKind::Mixed1,
                          BoundaryKind::Mixed2}) {
    const auto v = principal_eigenfunction(p, bc);
    const Eigen::Index n = v.grid.size();
    const double h = v.grid(1) - v.grid(0);
    double residual = 0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      if (i % 20 == 0) continue;  // stencil straddles a kink of the sampled potential
      const double d2 = (v.values(i + 1) - 2 * v.values(i) + v.values(i - 1)) / (h * h);
      residual = std::max(residual, std::abs(d2 + (p(v.grid(i)) + v.lambda) * v.values(i)));
    }
    CHECK_MESSAGE(residual <= 1e-5, to_string(bc));
    const auto [B, C] = boundary_matrices(bc);
    const Eigen::Vector2d left(v.values(0), v.slopes(0)), right(v.values(n - 1), v.slopes(n - 1));
    CHECK_MESSAGE((B * left + C * right).cwiseAbs().maxCoeff() <= 1e-7, to_string(bc));
    CHECK(v.values.maxCoeff() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(principal_eigenfunction(p, BoundaryKind::Antiperiodic), Error);
}
