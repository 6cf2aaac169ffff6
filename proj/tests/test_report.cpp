#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "greensign/report.hpp"

using namespace greensign;
using std::numbers::pi;

namespace {

std::string csv(const report::Table& t) {
  std::ostringstream os;
  t.write_csv(os);
  return os.str();
}

}  // namespace

TEST_CASE("non-finite numbers become strings") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(report::number(inf) == "+inf");
  CHECK(report::number(-inf) == "-inf");
  CHECK(report::number(std::nan("")) == "nan");
  CHECK(report::number(0.5).get<double>() == 0.5);
  CHECK(report::format_double(-inf) == "-inf");
}

TEST_CASE("formatted doubles read back exactly") {
  for (double v : {0.1, 1.0 / 3.0, pi, 1e-300, -2.5e17, 4.9e-324}) {
    CHECK(std::strtod(report::format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("csv quoting") {
  CHECK(report::csv_field("plain") == "plain");
  CHECK(report::csv_field("a,b") == "\"a,b\"");
  CHECK(report::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(report::csv_field("two\nlines") == "\"two\nlines\"");

  report::Table t;
  t.header = {"field", "value"};
  t.add_text({"note", "case 2A, k=0"});
  t.add({0.25, 2.0});
  CHECK(csv(t) == "field,value\r\nnote,\"case 2A, k=0\"\r\n0.25,2\r\n");
}

TEST_CASE("table json keeps numbers numeric") {
  report::Table t;
  t.header = {"rho", "gamma"};
  t.add({1.5, std::numeric_limits<double>::infinity()});
  const auto j = t.to_json();
  CHECK(j["columns"][1] == "gamma");
  CHECK(j["rows"][0][0].get<double>() == 1.5);
  CHECK(j["rows"][0][1] == "+inf");
}

TEST_CASE("flattening nested reports") {
  const report::json j = {{"a", {{"b", 1}, {"c", {true, nullptr}}}}, {"d", "x,y"}, {"e", 0.1}};
  const auto t = report::flatten(j);
  CHECK(csv(t) == "field,value\r\na.b,1\r\na.c.0,true\r\na.c.1,null\r\nd,\"x,y\"\r\ne,0.10000000000000001\r\n");
}

TEST_CASE("structured reports round-trip byte for byte") {
  HypothesisReport r;
  r.bc = BoundaryKind::Dirichlet;
  r.nonlinearity = "t*(1-t)";
  r.h2 = {true, 0.25, 1 / pi, 4 / pi, 1.3625414739229997, std::nullopt, ""};
  r.h3.pass = true;
  r.h3.subinterval = {0.25, 0.75};
  r.h3.min_inside = 0.0086585927849559506;
  r.gamma_used.value = 1.3625414739229997;
  r.gamma_star = GammaResult{};  // infinite value
  r.cone = ConeConstants{0.0086, 0.066, 0.13, 0.2, 0.39, {0.25, 0.75}};
  r.pass = true;

  const std::string once = report::to_json(r).dump(2);
  const std::string twice = report::json::parse(once).dump(2);
  CHECK(once == twice);
  CHECK(report::json::parse(once)["gamma_star"]["value"] == "+inf");

  SolutionProfile p;
  p.grid = Eigen::VectorXd::LinSpaced(5, 0, 1);
  p.values = p.grid.array() * (1 - p.grid.array());
  p.fixed_point_residual = 1e-13;
  const std::string s = report::to_json(p).dump();
  CHECK(report::json::parse(s).dump() == s);
}
