#include "greensign/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "greensign/cone.hpp"
#include "greensign/error.hpp"
#include "greensign/expression.hpp"
#include "greensign/figures.hpp"
#include "greensign/gamma.hpp"
#include "greensign/greens.hpp"
#include "greensign/report.hpp"
#include "greensign/solver.hpp"
#include "greensign/spectral.hpp"

namespace greensign::cli {

namespace {

using report::json;

struct Config {
  std::string bc = "periodic";
  std::string rho;
  std::string potential;
  std::string samples;
  int potential_nodes = 101;
  double T = 1.0;
  int grid = kDefaultGrid;
  std::string format;
  std::string output;

  QuadratureOptions quadrature;
  SpectralOptions spectral;
  int t_grid = 1001;
  double agree_tol = 1e-6;
  std::string weight = "eigenfunction";
  ConeOptions cone;
  H2Options h2;
  SolverOptions solver;

  int points = 51;
  std::string f;
  bool strict = false;
  std::string rhs;
  bool cone_check = false;
  int figure = 0;
};

int default_grid() {
  if (const char* env = std::getenv("GREENSIGN_GRID")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 3 && v <= 1000000) return static_cast<int>(v);
  }
  return kDefaultGrid;
}

void add_problem_options(CLI::App* app, Config& c) {
  app->add_option("--bc", c.bc, "periodic, antiperiodic, dirichlet, neumann, mixed1 or mixed2")
      ->capture_default_str();
  app->add_option("--rho", c.rho, "constant potential a = rho^2 (expression)");
  app->add_option("--potential", c.potential, "potential a(t) as an expression in t and T");
  app->add_option("--potential-nodes", c.potential_nodes, "nodes used to tabulate --potential")
      ->capture_default_str();
  app->add_option("--samples", c.samples, "file of t,a rows describing a sampled potential");
  app->add_option("--T", c.T, "right endpoint of [0,T]")->capture_default_str();
}

void add_output_options(CLI::App* app, Config& c, const std::string& default_format) {
  app->add_option("--grid", c.grid, "grid size (GREENSIGN_GRID overrides the default)")->capture_default_str();
  app->add_option("--format", c.format, "csv or json (default " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output,-o", c.output, "write to this file instead of standard output");
  app->add_option("--quad-order", c.quadrature.order, "Gauss-Legendre points per panel")->capture_default_str();
  app->add_option("--quad-panels", c.quadrature.panels, "quadrature panels per unit length")->capture_default_str();
  app->add_option("--root-scan", c.quadrature.root_scan, "sign-scan panels for kernel zeros")->capture_default_str();
  app->add_option("--root-tol", c.quadrature.root_tol, "kernel-zero bisection tolerance")->capture_default_str();
}

void add_spectral_options(CLI::App* app, Config& c) {
  app->add_option("--scan-step", c.spectral.scan_step, "eigenvalue bracketing step")->capture_default_str();
  app->add_option("--eigen-tol", c.spectral.root_tol, "eigenvalue root tolerance")->capture_default_str();
  app->add_option("--zero-tol", c.spectral.zero_tol, "eigenvalues below this are treated as zero")
      ->capture_default_str();
}

void add_gamma_options(CLI::App* app, Config& c) {
  app->add_option("--t-grid", c.t_grid, "t-nodes of the gamma ratio scan")->capture_default_str();
}

void add_solver_options(CLI::App* app, Config& c) {
  app->add_option("--sign-tol", c.solver.sign_tol, "tolerance of the positivity classification")
      ->capture_default_str();
  app->add_option("--tol", c.solver.tol, "fixed-point stopping tolerance")->capture_default_str();
  app->add_option("--damping", c.solver.damping, "Picard damping in (0,1]")->capture_default_str();
  app->add_option("--max-iter", c.solver.max_iter, "Picard iteration limit")->capture_default_str();
}

PotentialSpec read_samples(const std::string& path, double& T) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open samples file " + path);
  std::vector<double> ts, as;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
    }
    std::istringstream row(line);
    double t = 0.0, a = 0.0;
    if (!(row >> t)) continue;  // blank or header line
    if (!(row >> a)) fail(ErrorCode::InvalidArgument, "samples row without a value: " + line);
    ts.push_back(t);
    as.push_back(a);
  }
  if (ts.size() < 2) fail(ErrorCode::InvalidArgument, "samples file needs at least two rows");
  T = ts.back();
  return PotentialSpec::sampled(Eigen::Map<Eigen::VectorXd>(ts.data(), static_cast<Eigen::Index>(ts.size())),
                                Eigen::Map<Eigen::VectorXd>(as.data(), static_cast<Eigen::Index>(as.size())));
}

PotentialSpec build_potential(Config& c) {
  const int given = !c.rho.empty() + !c.potential.empty() + !c.samples.empty();
  if (given != 1) fail(ErrorCode::InvalidArgument, "give exactly one of --rho, --potential, --samples");
  if (!c.samples.empty()) return read_samples(c.samples, c.T);
  if (!c.rho.empty()) return PotentialSpec::constant(Expression::parse(c.rho).constant(), c.T);
  const Expression a = Expression::parse(c.potential);
  if (a.uses_x()) fail(ErrorCode::ParseError, "the potential may depend on t and T only");
  const double T = c.T;
  return PotentialSpec::sampled([&a, T](double t) { return a(t, 0.0, T); }, T, c.potential_nodes);
}

bool fits_dirichlet_closed(const PotentialSpec& p, BoundaryKind bc) {
  return bc == BoundaryKind::Dirichlet && p.is_constant() && p.T() == 1.0 && p.rho() > std::numbers::pi &&
         p.rho() < 6 * std::numbers::pi;
}

bool fits_periodic_closed(const PotentialSpec& p, BoundaryKind bc) {
  return bc == BoundaryKind::Periodic && p.is_constant() && p.rho() * p.T() > std::numbers::pi;
}

class Emitter {
 public:
  Emitter(const Config& c, std::ostream& out) : format_(c.format), out_(&out) {
    if (!c.output.empty()) {
      file_.open(c.output, std::ios::binary);
      if (!file_) fail(ErrorCode::InvalidArgument, "cannot write " + c.output);
      out_ = &file_;
    }
  }

  void table(const report::Table& t) {
    if (format_ == "json") {
      *out_ << t.to_json().dump(2) << '\n';
    } else {
      t.write_csv(*out_);
    }
  }

  void document(const json& j) {
    if (format_ == "json") {
      *out_ << j.dump(2) << '\n';
    } else {
      report::flatten(j).write_csv(*out_);
    }
  }

 private:
  std::string format_;
  std::ostream* out_;
  std::ofstream file_;
};

int cmd_green(Config& c, std::ostream& out) {
  const PotentialSpec p = build_potential(c);
  const BoundaryKind bc = parse_boundary_kind(c.bc);
  const GreensKernel kernel = make_kernel(p, bc, c.grid);
  if (c.points < 2) fail(ErrorCode::InvalidArgument, "--points must be at least 2");
  report::Table t;
  t.header = {"t", "s", "value"};
  for (int i = 0; i < c.points; ++i) {
    const double ti = p.T() * i / (c.points - 1);
    for (int j = 0; j < c.points; ++j) {
      const double sj = p.T() * j / (c.points - 1);
      t.add({ti, sj, kernel(ti, sj)});
    }
  }
  Emitter(c, out).table(t);
  return kExitOk;
}

int cmd_eigen(Config& c, std::ostream& out) {
  const PotentialSpec p = build_potential(c);
  SpectralOptions opt = c.spectral;
  opt.grid = c.grid;
  report::Table t;
  t.header = {"bc", "lambda", "method"};
  for (BoundaryKind bc : kAllBoundaryKinds) {
    const EigenResult r = smallest_eigenvalue(p, bc, opt);
    t.add_text({std::string(to_string(bc)), report::format_double(r.lambda), std::string(to_string(r.method))});
  }
  Emitter(c, out).table(t);
  return kExitOk;
}

int cmd_classify(Config& c, std::ostream& out) {
  const PotentialSpec p = build_potential(c);
  SpectralOptions opt = c.spectral;
  opt.grid = c.grid;
  Emitter(c, out).document(report::to_json(classify_sign(p, parse_boundary_kind(c.bc), opt)));
  return kExitOk;
}

int cmd_gamma(Config& c, std::ostream& out) {
  const PotentialSpec p = build_potential(c);
  const BoundaryKind bc = parse_boundary_kind(c.bc);
  const GreensKernel kernel = make_kernel(p, bc, c.grid);
  SpectralOptions sopt = c.spectral;
  sopt.grid = c.grid;
  GammaOptions gopt;
  gopt.t_grid = c.t_grid;
  gopt.quadrature = c.quadrature;

  json doc;
  doc["bc"] = to_string(bc);
  doc["T"] = p.T();
  doc["potential"] = p.is_constant() ? json{{"rho", report::number(p.rho())}} : json{{"sampled", p.nodes().size()}};
  try {
    doc["classification"] = to_string(classify_sign(p, bc, sopt).verdict);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ResonantPotential) throw;
    doc["classification"] = std::string("undetermined: ") + e.what();
  }

  std::optional<GammaResult> closed;
  GammaResult quad;
  if (c.weight == "eigenfunction") {
    const Eigenfunction v = principal_eigenfunction(p, bc, c.grid, sopt);
    quad = gamma_quadrature(kernel, [&v](double t) { return v(t); }, WeightKind::PrincipalEigenfunction, gopt);
    if (fits_periodic_closed(p, bc)) closed = gamma_periodic_closed(p.rho(), p.T());
    if (fits_dirichlet_closed(p, bc)) closed = gamma_dirichlet_closed(p.rho());
  } else if (c.weight == "coefficient") {
    quad = gamma_star(kernel, gopt);
  } else {
    quad = gamma_delta(kernel, gopt);
  }
  doc["weight"] = to_string(quad.weight);
  doc["quadrature"] = report::to_json(quad);
  doc["closed_form"] = closed ? report::to_json(*closed) : json(nullptr);
  doc["value"] = report::number(quad.value);
  if (closed) {
    const double diff = (closed->is_infinite() && quad.is_infinite()) ? 0.0 : std::abs(closed->value - quad.value);
    doc["difference"] = report::number(diff);
    doc["agreement"] = diff <= c.agree_tol * std::max(1.0, std::abs(quad.value)) ? "agree" : "mismatch";
  } else {
    doc["difference"] = nullptr;
    doc["agreement"] = "quadrature only";
  }
  Emitter(c, out).document(doc);
  return kExitOk;
}

HypothesisOptions hypothesis_options(const Config& c) {
  HypothesisOptions opt;
  opt.cone = c.cone;
  opt.cone.quadrature = c.quadrature;
  opt.h2 = c.h2;
  opt.gamma.t_grid = c.t_grid;
  opt.gamma.quadrature = c.quadrature;
  opt.eigen_grid = c.grid;
  return opt;
}

int cmd_check(Config& c, std::ostream& out) {
  const PotentialSpec p = build_potential(c);
  const BoundaryKind bc = parse_boundary_kind(c.bc);
  const GreensKernel kernel = make_kernel(p, bc, c.grid);
  const Nonlinearity f = Nonlinearity::from_expression(Expression::parse(c.f), p.T());
  const HypothesisReport r = check_hypotheses(kernel, f, hypothesis_options(c));
  Emitter(c, out).document(report::to_json(r));
  return (c.strict && !r.pass) ? kExitHypothesis : kExitOk;
}

int cmd_solve(Config& c, std::ostream& out, std::ostream& err) {
  const PotentialSpec p = build_potential(c);
  const BoundaryKind bc = parse_boundary_kind(c.bc);
  const GreensKernel kernel = make_kernel(p, bc, c.grid);
  const Expression e = Expression::parse(c.rhs);
  const Nonlinearity f = Nonlinearity::from_expression(e, p.T());
  SolverOptions opt = c.solver;
  opt.grid = c.grid;
  opt.quadrature = c.quadrature;

  const SolutionProfile profile =
      e.uses_x() ? solve_nonlinear(kernel, f, opt) : solve_linear(kernel, [&f](double t) { return f(t, 0.0); }, opt);

  std::optional<HypothesisReport> hyp;
  if (c.cone_check) hyp = check_hypotheses(kernel, f, hypothesis_options(c));
  const ConeConstants* cone = (hyp && hyp->pass && hyp->cone) ? &*hyp->cone : nullptr;
  const Verification v = verify_solution(profile, p, bc, f.f, cone, opt.sign_tol);

  if (!profile.converged) {
    err << json{{"warning", "NoConvergence"},
                {"message", "fixed-point iteration stopped without converging"},
                {"iterations", profile.iterations},
                {"last_update", report::number(profile.last_update)}}
               .dump()
        << '\n';
  }

  Emitter emit(c, out);
  if (c.format == "json") {
    json doc = report::to_json(profile);
    doc["bc"] = to_string(bc);
    doc["rhs"] = e.text();
    doc["mode"] = e.uses_x() ? "nonlinear" : "linear";
    doc["verification"] = {{"residual_norm", report::number(v.residual_norm)},
                           {"bc_error", report::number(v.bc_error)},
                           {"positivity", to_string(v.positivity)}};
    doc["verification"]["in_cone"] = v.in_cone ? json(*v.in_cone) : json(nullptr);
    doc["hypotheses"] = hyp ? report::to_json(*hyp) : json(nullptr);
    emit.document(doc);
  } else {
    report::Table t;
    t.header = {"t", "u"};
    for (Eigen::Index i = 0; i < profile.grid.size(); ++i) t.add({profile.grid(i), profile.values(i)});
    emit.table(t);
  }
  return kExitOk;
}

int cmd_figure(Config& c, std::ostream& out) {
  figures::FigureOptions opt;
  opt.quadrature = c.quadrature;
  Emitter(c, out).table(figures::figure(c.figure, opt));
  return kExitOk;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ResonantPotential:
      return kExitResonance;
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

void error_line(std::ostream& err, std::string_view code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  c.grid = default_grid();

  CLI::App app{"Green's functions, sign classification, gamma constants and positive solutions for u'' + a(t)u"};
  app.name("greensign");
  app.require_subcommand(1);

  auto* green = app.add_subcommand("green", "tabulate G(t,s) on a lattice");
  add_problem_options(green, c);
  add_output_options(green, c, "csv");
  green->add_option("--points", c.points, "lattice points per axis")->capture_default_str();

  auto* eigen = app.add_subcommand("eigen", "smallest eigenvalue for each boundary kind");
  add_problem_options(eigen, c);
  add_output_options(eigen, c, "csv");
  add_spectral_options(eigen, c);

  auto* classify = app.add_subcommand("classify", "sign of the Green's function from eigenvalues");
  add_problem_options(classify, c);
  add_output_options(classify, c, "json");
  add_spectral_options(classify, c);

  auto* gamma = app.add_subcommand("gamma", "sign-ratio constant, closed form and quadrature");
  add_problem_options(gamma, c);
  add_output_options(gamma, c, "json");
  add_spectral_options(gamma, c);
  add_gamma_options(gamma, c);
  gamma->add_option("--weight", c.weight, "eigenfunction, coefficient or one")
      ->check(CLI::IsMember({"eigenfunction", "coefficient", "one"}))
      ->capture_default_str();
  gamma->add_option("--agree-tol", c.agree_tol, "relative closed-form/quadrature agreement tolerance")
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "verify the existence hypotheses for f(t,x)");
  add_problem_options(check, c);
  add_output_options(check, c, "json");
  add_gamma_options(check, c);
  check->add_option("--f", c.f, "nonlinearity f(t,x)")->required();
  check->add_flag("--strict", c.strict, "exit with status 4 when a hypothesis fails");
  check->add_option("--s-grid", c.cone.s_grid, "s-nodes of the subinterval test")->capture_default_str();
  check->add_option("--t-samples", c.h2.t_samples, "t-nodes of the sandwich lattice")->capture_default_str();
  check->add_option("--x-samples", c.h2.x_samples, "x-values of the sandwich lattice")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "solve u'' + a u = rhs (nonlinear when rhs uses x)");
  add_problem_options(solve, c);
  add_output_options(solve, c, "csv");
  add_solver_options(solve, c);
  add_gamma_options(solve, c);
  solve->add_option("--rhs", c.rhs, "right-hand side sigma(t) or f(t,x)")->required();
  solve->add_flag("--cone", c.cone_check, "also check the hypotheses and test cone membership");

  auto* figure = app.add_subcommand("figure", "regenerate figure data 1 to 5 as CSV");
  add_output_options(figure, c, "csv");
  figure->add_option("number", c.figure, "figure number")->required()->check(CLI::Range(1, figures::kFigureCount));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "UsageError", e.what());
    return kExitUsage;
  }

  if (c.format.empty()) c.format = (*classify || *gamma || *check) ? "json" : "csv";

  try {
    if (*green) return cmd_green(c, out);
    if (*eigen) return cmd_eigen(c, out);
    if (*classify) return cmd_classify(c, out);
    if (*gamma) return cmd_gamma(c, out);
    if (*check) return cmd_check(c, out);
    if (*solve) return cmd_solve(c, out, err);
    return cmd_figure(c, out);
  } catch (const Error& e) {
    error_line(err, to_string(e.code()), e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    error_line(err, "InternalError", e.what());
    return kExitFailure;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace greensign::cli
