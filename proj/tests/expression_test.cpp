#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "manapprox/errors.hpp"
#include "manapprox/expression.hpp"

using namespace manapprox;

namespace {

double eval(const char* text, std::vector<double> x = {}) {
  return Expression::parse(text, x.size()).evaluate(x);
}

std::size_t error_offset(const char* text, std::size_t vars = 2) {
  try {
    Expression::parse(text, vars);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("no parse error for " << text);
  return 0;
}

// Random expression text over x1..x3 with explicit grouping.
std::string random_expression(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  switch (pick(rng)) {
    case 0:
      return "x" + std::to_string(std::uniform_int_distribution<int>(1, 3)(rng));
    case 1: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", std::uniform_real_distribution<double>(0, 50)(rng));
      return buf;
    }
    case 2:
      return "pi";
    case 3:
      return random_expression(rng, depth - 1) + " + " + random_expression(rng, depth - 1);
    case 4:
      return random_expression(rng, depth - 1) + " - " + random_expression(rng, depth - 1);
    case 5:
      return random_expression(rng, depth - 1) + "*" + random_expression(rng, depth - 1);
    case 6:
      return "(" + random_expression(rng, depth - 1) + ")/" + random_expression(rng, depth - 1);
    case 7:
      return random_expression(rng, depth - 1) + "^" + random_expression(rng, depth - 1);
    case 8:
      return "-" + random_expression(rng, depth - 1);
    default: {
      const char* fns[] = {"sin", "cos", "exp", "sqrt"};
      return std::string(fns[std::uniform_int_distribution<int>(0, 3)(rng)]) + "(" +
             random_expression(rng, depth - 1) + ")";
    }
  }
}

}  // namespace

TEST_CASE("precedence and associativity corpus") {
  CHECK(eval("x1^2 + 3*x2", {2.0, 1.0}) == 7.0);
  CHECK(eval("2^3^2") == 512.0);
  CHECK(eval("sin(0)") == 0.0);
  CHECK(eval("-2^2") == -4.0);
  CHECK(eval("(-2)^2") == 4.0);
  CHECK(eval("2^-1") == 0.5);
  CHECK(eval("1 - 2 - 3") == -4.0);
  CHECK(eval("24 / 4 / 2") == 3.0);
  CHECK(eval("2 + 3 * 4") == 14.0);
  CHECK(eval("(2 + 3) * 4") == 20.0);
  CHECK(eval("2 * 3 ^ 2") == 18.0);
  CHECK(eval("-3 * -2") == 6.0);
  CHECK(eval("--3") == 3.0);
  CHECK(eval("1e2 + .5") == 100.5);
  CHECK(eval("2.5e-1") == 0.25);
  CHECK(eval("sqrt(16) + exp(0)") == 5.0);
  CHECK(eval("cos(pi)") == -1.0);
  CHECK(eval("x1 / x2 * x3", {6.0, 3.0, 2.0}) == 4.0);
  CHECK(eval("-x1^2", {3.0}) == -9.0);
  CHECK(eval("  4 -( 1+1 )^ 2 ") == 0.0);
}

TEST_CASE("malformed inputs carry offsets") {
  CHECK(error_offset("1 +") == 3);
  CHECK(error_offset("(1 + 2") == 6);
  CHECK(error_offset("1 + * 2") == 4);
  CHECK(error_offset("x3 + 1") == 0);
  CHECK(error_offset("2 * y") == 4);
  CHECK(error_offset("tan(1)") == 0);
  CHECK(error_offset("1 + sin(1, 2)") == 4);
  CHECK(error_offset("sin()") == 0);
  CHECK(error_offset("sin 1") == 4);
  CHECK(error_offset("1 2") == 2);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("x0") == 0);
  CHECK(error_offset("3 $ 4") == 2);
  try {
    Expression::parse("1 + sin(1, 2)", 1);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("argument") != std::string::npos);
  }
}

TEST_CASE("pretty print round trip") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 100; ++t) {
    std::string text = random_expression(rng, 4);
    CAPTURE(text);
    Expression e = Expression::parse(text, 3);
    Expression back = Expression::parse(e.to_string(), 3);
    CHECK(back == e);
    CHECK(back.to_string() == e.to_string());
  }
  CHECK_FALSE(Expression::parse("x1 + x2", 2) == Expression::parse("x2 + x1", 2));
  CHECK(Expression::parse("0.1", 1).to_string() == "0.10000000000000001");
}

TEST_CASE("enclosures contain sampled values") {
  Box box({Interval(-1.0, 1.0), Interval(0.5, 2.0)});
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const char* text : {"x1^2 + x2^2", "sin(pi*x1)*x2", "exp(x1) / x2", "sqrt(x2) - x1^3",
                           "cos(3*x1 + x2)", "x2^x1"}) {
    Expression e = Expression::parse(text, 2);
    Interval r = e.enclose(box);
    for (int t = 0; t < 500; ++t) {
      double x[] = {-1.0 + 2.0 * u(rng), 0.5 + 1.5 * u(rng)};
      CHECK(r.contains(e.evaluate(x)));
    }
  }
}

TEST_CASE("functions need bounded enclosures") {
  Box box({Interval(-1.0, 1.0)});
  CHECK_THROWS_AS(function_from_expressions({Expression::parse("1 / x1", 1)}, box),
                  std::invalid_argument);
  ContinuousFunction f = function_from_expressions({Expression::parse("x1^2 / 4", 1)}, box);
  CHECK(f.ranges()[0] == Interval(0.0, 0.25));
}
