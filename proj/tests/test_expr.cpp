#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hyperkin/expr.hpp"
#include "hyperkin/jet.hpp"
#include "support/fd.hpp"

using namespace hyperkin;
using expr::parse;

namespace {

double eval_at(const std::string& src, const std::map<std::string, double>& env) {
  return expr::eval_scalar(*parse(src), env);
}

}  // namespace

TEST_CASE("worked example: t*sin(2*v) value and v-derivative") {
  auto e = parse("t*sin(2*v)");
  auto vars = VariableSet::make({"v", "t"});
  std::map<std::string, Jet> env{
      {"v", Jet::variable(vars, 0, std::numbers::pi / 8.0)},
      {"t", Jet::variable(vars, 1, 1.0)},
  };
  Jet j = expr::eval_jet(*e, vars, env);
  CHECK(j.value() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(j.deriv({0}) == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(j.deriv({1}) == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(j.deriv({0, 0}) == doctest::Approx(-4.0 * 0.7071067811865476).epsilon(1e-14));
}

TEST_CASE("scalar evaluation corpus") {
  CHECK(eval_at("1 + 2*3", {}) == 7.0);
  CHECK(eval_at("2^3", {}) == 8.0);
  CHECK(eval_at("-2^2", {}) == -4.0);        // unary minus binds looser than ^
  CHECK(eval_at("2^-2", {}) == 0.25);        // literal negative exponent
  CHECK(eval_at("(1+1)^3", {}) == 8.0);
  CHECK(eval_at("6/4/2", {}) == 0.75);       // left associative
  CHECK(eval_at("2 - 3 - 4", {}) == -5.0);
  CHECK(eval_at("pi", {}) == doctest::Approx(std::numbers::pi).epsilon(1e-16));
  CHECK(eval_at("cos(pi)", {}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(eval_at("sqrt(2)", {}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
  CHECK(eval_at("exp(log(3))", {}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(eval_at("x^2 + y", {{"x", 3.0}, {"y", 1.0}}) == 10.0);
  CHECK(eval_at("1e2 + .5", {}) == 100.5);
  CHECK(eval_at("2.5e-1", {}) == 0.25);
  CHECK(eval_at("--1", {}) == 1.0);
  CHECK(eval_at("tan(0.5)", {}) == doctest::Approx(std::tan(0.5)).epsilon(1e-16));
}

TEST_CASE("parse errors carry offsets") {
  struct Case {
    const char* src;
    std::size_t offset;
  };
  // offset points at the offending token
  const Case cases[] = {
      {"1 +", 3},       // unexpected end
      {"(1 + 2", 6},    // missing ')'
      {"1 + 2)", 5},    // stray ')'
      {"2 x", 2},       // implicit multiplication rejected
      {"x^y", 2},       // exponent must be literal
      {"2^3^2", 3},     // chained ^ rejected
      {"foo(1)", 0},    // unknown function
      {"sin 1", 4},     // function requires parentheses -> unexpected token
      {"1..2", 2},      // malformed number: offset of the missing digits
      {"1.", 2},        // digits required after '.'
      {"3e", 1},        // incomplete exponent: offset of the 'e'
      {"a $ b", 2},     // illegal character
      {"", 0},          // empty input
      {"sin()", 4},     // empty argument list
      {"*3", 0},        // operator with no left operand
  };
  for (const auto& c : cases) {
    CAPTURE(c.src);
    try {
      (void)parse(c.src);
      FAIL_CHECK("expected ParseError for: " << c.src);
    } catch (const ParseError& err) {
      CHECK(err.offset() == c.offset);
    }
  }
}

TEST_CASE("accepted corpus parses and round-trips through the printer") {
  const char* cases[] = {
      "1",
      "-1",
      "x",
      "pi",
      "1 + 2",
      "1 - 2 - 3",
      "2*x + 1",
      "x*y*z",
      "x/y/z",
      "x^2",
      "x^-2",
      "x^0.5",
      "-x^2",
      "(x + y)^3",
      "(x^2)^3",
      "sin(x)",
      "cos(2*x)",
      "tan(x/2)",
      "exp(-x)",
      "log(x + 1)",
      "sqrt(x^2 + 1)",
      "sin(cos(exp(x)))",
      "t*cos(u)*sin(2*v)",
      "2*t*sin(v)^2",
      "1/(1 + x^2)",
      "-(x + y)",
      "x - (y - z)",
      "x/(y*z)",
      "(x + y)*(x - y)",
      "0.3*sin(u)*cos(v) + 0.2*(t - 1)*sin(v)",
      "2 + (1.5 - t)*sin(u)",
      "cos(u + t)*sin(v)",
      "1e-3*x + 2.5E2",
      "x*-y",  // unary minus as right factor
  };
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> dist(0.2, 1.3);
  for (const char* src : cases) {
    CAPTURE(src);
    auto e = parse(src);
    std::string printed = expr::to_string(*e);
    auto reparsed = parse(printed);
    CHECK(expr::equal(*e, *reparsed));
    // printed form evaluates identically
    std::map<std::string, double> env;
    for (const auto& name : expr::free_vars(*e)) env[name] = dist(rng);
    CHECK(expr::eval_scalar(*e, env) ==
          doctest::Approx(expr::eval_scalar(*reparsed, env)).epsilon(1e-15));
  }
}

TEST_CASE("printer output is canonical") {
  CHECK(expr::to_string(*parse("x+y")) == "x + y");
  CHECK(expr::to_string(*parse("2 * x")) == "2*x");
  CHECK(expr::to_string(*parse("-(x+y)")) == "-(x + y)");
  CHECK(expr::to_string(*parse("(x*y)*z")) == "x*y*z");
  CHECK(expr::to_string(*parse("x/(y*z)")) == "x/(y*z)");
  CHECK(expr::to_string(*parse("x^-2")) == "x^-2");
  CHECK(expr::to_string(*parse("(x + 1)^2")) == "(x + 1)^2");
  CHECK(expr::to_string(*parse("sin(x)^2")) == "sin(x)^2");
  CHECK(expr::to_string(*parse("x - (y - z)")) == "x - (y - z)");
  CHECK(expr::to_string(*parse("x - y - z")) == "x - y - z");
}

TEST_CASE("free variable collection") {
  auto e = parse("t*cos(u)*sin(2*v) + pi");
  auto fv = expr::free_vars(*e);
  CHECK(fv == std::set<std::string>{"t", "u", "v"});
  CHECK(expr::free_vars(*parse("pi + 2")).empty());
}

TEST_CASE("domain errors during evaluation") {
  CHECK_THROWS_AS((void)eval_at("1/0", {}), DomainError);
  CHECK_THROWS_AS((void)eval_at("log(0)", {}), DomainError);
  CHECK_THROWS_AS((void)eval_at("sqrt(-1)", {}), DomainError);
  CHECK_THROWS_AS((void)eval_at("(-2)^0.5", {}), DomainError);
  CHECK_THROWS_AS((void)eval_at("x/y", {{"x", 1.0}, {"y", 0.0}}), DomainError);
  CHECK_THROWS_AS((void)eval_at("x", {}), EvalError);  // unbound variable
}

TEST_CASE("fold_constants preserves value and leaves domain edges alone") {
  struct Case {
    const char* src;
    std::map<std::string, double> env;
  };
  const Case cases[] = {
      {"2*3 + x", {{"x", 1.0}}},
      {"sin(pi/2)*x", {{"x", 2.0}}},
      {"(1 + 2)^2 - x^2", {{"x", 0.5}}},
      {"sqrt(2)*sqrt(2)", {}},
      {"x + 0*3", {{"x", 4.0}}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.src);
    auto e = parse(c.src);
    auto folded = expr::fold_constants(e);
    CHECK(expr::eval_scalar(*e, c.env) ==
          doctest::Approx(expr::eval_scalar(*folded, c.env)).epsilon(1e-13));
  }
  // folding must not turn a parseable expression with a domain-edge constant
  // subtree into a throw at fold time
  CHECK_NOTHROW((void)expr::fold_constants(parse("x*log(0 + y)")));
  CHECK_NOTHROW((void)expr::fold_constants(parse("x + 1/(y - y)")));
}

TEST_CASE("jet evaluation of random expressions matches finite differences") {
  // moderately deep random expressions over u, v with safe ranges
  const char* pool[] = {
      "sin(u)*cos(v) + 0.3*u^2",
      "exp(0.2*u - 0.1*v)*(u + 2)",
      "log(u + 3)/sqrt(v + 2)",
      "tan(0.3*u)*v + u/(v + 4)",
      "(u - v)^3 + cos(2*u)^2",
      "sqrt(u^2 + v^2 + 1)",
  };
  auto vars = VariableSet::make({"u", "v"});
  std::mt19937 rng(99u);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  for (const char* src : pool) {
    CAPTURE(src);
    auto e = parse(src);
    for (int rep = 0; rep < 4; ++rep) {
      const std::vector<double> x0{dist(rng), dist(rng)};
      std::map<std::string, Jet> env{
          {"u", Jet::variable(vars, 0, x0[0])},
          {"v", Jet::variable(vars, 1, x0[1])},
      };
      Jet j = expr::eval_jet(*e, vars, env);
      auto f = [&](std::vector<double> x) {
        return eval_at(src, {{"u", x[0]}, {"v", x[1]}});
      };
      CHECK(j.value() == doctest::Approx(f(x0)).epsilon(1e-13));
      for (int a = 0; a < 2; ++a) {
        CHECK(j.deriv({a}) ==
              doctest::Approx(testsupport::fd_partial(f, x0, a)).epsilon(5e-8));
        for (int b = a; b < 2; ++b)
          CHECK(j.deriv({a, b}) ==
                doctest::Approx(testsupport::fd_partial2(f, x0, a, b))
                    .epsilon(5e-6)
                    .scale(1.0 + std::abs(j.deriv({a, b}))));
      }
    }
  }
}
