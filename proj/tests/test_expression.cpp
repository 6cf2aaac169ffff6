#include "doctest.h"

#include <cmath>
#include <numbers>

#include "greensign/error.hpp"
#include "greensign/expression.hpp"

using greensign::Error;
using greensign::Expression;

TEST_CASE("arithmetic and precedence") {
  CHECK(Expression::parse("1+2*3").constant() == 7);
  CHECK(Expression::parse("(1+2)*3").constant() == 9);
  CHECK(Expression::parse("2^3^2").constant() == 512);
  CHECK(Expression::parse("-2^2").constant() == -4);
  CHECK(Expression::parse("8/4/2").constant() == 1);
  CHECK(Expression::parse("1 - 2 - 3").constant() == -4);
  CHECK(Expression::parse("2.5e-1 * 4").constant() == 1);
  CHECK(Expression::parse(".5").constant() == 0.5);
  CHECK(Expression::parse("2*-3").constant() == -6);
}

TEST_CASE("functions and constants") {
  CHECK(Expression::parse("sqrt(60)").constant() == doctest::Approx(std::sqrt(60.0)));
  CHECK(Expression::parse("3*pi/2").constant() == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(Expression::parse("pow(2, 10)").constant() == 1024);
  CHECK(Expression::parse("abs(-3) + exp(0) + cos(0) + sin(0)").constant() == 5);
}

TEST_CASE("variables") {
  const auto f = Expression::parse("t*(1-t)");
  CHECK(f.uses_t());
  CHECK_FALSE(f.uses_x());
  CHECK(f(0.5, 9, 1) == 0.25);
  const auto g = Expression::parse("sin(pi*t/T)*(2+sin(x))/3");
  CHECK(g.uses_x());
  CHECK(g.uses_T());
  CHECK(g(1, 0, 2) == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(f.constant(), Error);
  CHECK(f.text() == "t*(1-t)");
}

TEST_CASE("malformed input") {
  for (const char* bad : {"", "1+", "(1", "1)", "foo(2)", "sin 2", "pow(1)", "2**3", "1 2", "y", "#"}) {
    CHECK_THROWS_WITH_AS(Expression::parse(bad), doctest::Contains("column"), Error);
  }
  try {
    Expression::parse("1 + ?");
  } catch (const Error& e) {
    CHECK(e.code() == greensign::ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("column 5") != std::string::npos);
  }
}
