#include <doctest.h>

#include <random>

#include "lojet/expr.hpp"

using namespace lojet;

namespace {

Eigen::VectorXd fd_gradient(const Expression& e, const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (e.evaluate(xp) - e.evaluate(xm)) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const Expression& e, const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::MatrixXd m(x.size(), x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    m.col(i) = (fd_gradient(e, xp, h) - fd_gradient(e, xm, h)) / (2.0 * h);
  }
  return m;
}

}  // namespace

TEST_CASE("parse and print round-trip") {
  const char* texts[] = {
      "x1^2 + x2^2",
      "exp(x1)*sin(x2) - 3.5",
      "flat(x1) + x1^3*flat(x2)",
      "(x1 - x2)^4 / (1 + x1^2)",
      "sqrt(1 + x1^2) * cos(x2)",
      "-x1 + 2e-3*x2",
  };
  for (const char* t : texts) {
    Expression e = parse_expression(t, 2);
    const std::string printed = e.to_string();
    Expression e2 = parse_expression(printed, 2);
    CHECK(e2.to_string() == printed);
    // Same function, spot check: identical trees evaluate bitwise equal.
    Eigen::VectorXd x(2);
    x << 0.37, -0.81;
    CHECK(e.evaluate(x) == e2.evaluate(x));
  }
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_expression("x1 + ", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("x1 ** 2", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("foo(x1)", 1), ParseError);
  try {
    parse_expression("x1 + @", 1);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.position() >= 4);
    CHECK(err.position() <= 6);
  }
  // Variable out of declared range.
  CHECK_THROWS_AS(parse_expression("x3 + 1", 2), ParseError);
  // Exponent must be a nonnegative integer literal.
  CHECK_THROWS_AS(parse_expression("x1^x2", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("x1^(-2)", 1), ParseError);
}

TEST_CASE("evaluation basics") {
  Expression e = parse_expression("2*x1^3 - x2/4 + exp(0)", 2);
  Eigen::VectorXd x(2);
  x << 2.0, 8.0;
  CHECK(e.evaluate(x) == doctest::Approx(16.0 - 2.0 + 1.0));
}

TEST_CASE("evaluation errors name the failing subexpression") {
  Expression e = parse_expression("1 + log(x1)", 1);
  Eigen::VectorXd x(1);
  x << -1.0;
  try {
    e.evaluate(x);
    FAIL("expected EvalError");
  } catch (const EvalError& err) {
    CHECK(err.has_node());
    CHECK(std::string(err.what()).find("log") != std::string::npos);
  }
  Expression d = parse_expression("x1 / (x1 - x1)", 1);
  Eigen::VectorXd z(1);
  z << 1.0;
  CHECK_THROWS_AS(d.evaluate(z), EvalError);
}

TEST_CASE("gradient and hessian match finite differences") {
  const char* texts[] = {
      "x1^2*x2 + sin(x1*x2)",
      "exp(x1 - x2^2) + x2^4",
      "sqrt(4 + x1^2 + x2^2)",
      "cos(x1)*cos(x2) + x1^3",
      "flat(x1) + x1^2*x2^2",
      "log(2 + x1) * (1 + x2^2)",
      "(x1 + x2)^3 / (2 + cos(x1))",
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  for (const char* t : texts) {
    Expression e = parse_expression(t, 2);
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd x(2);
      x << unif(rng), unif(rng);
      const Eigen::VectorXd g = e.gradient(x);
      const Eigen::VectorXd gfd = fd_gradient(e, x);
      CHECK((g - gfd).norm() <= 1e-6 * std::max(1.0, gfd.norm()));
      const Eigen::MatrixXd h = e.hessian(x);
      const Eigen::MatrixXd hfd = fd_hessian(e, x);
      CHECK((h - hfd).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, hfd.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("hessian is bitwise symmetric") {
  Expression e = parse_expression("exp(x1*x2)*sin(x1 - x2^3) + x1^4*x2", 2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(2);
    x << unif(rng), unif(rng);
    const Eigen::MatrixXd h = e.hessian(x);
    CHECK(h(0, 1) == h(1, 0));
  }
}

TEST_CASE("flat vanishes identically at zero") {
  Expression e = parse_expression("flat(x1)", 1);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(1);
  CHECK(e.evaluate(z) == 0.0);
  CHECK(e.gradient(z)[0] == 0.0);
  CHECK(e.hessian(z)(0, 0) == 0.0);
  // And stays numerically flat nearby.
  Eigen::VectorXd x(1);
  x << 0.05;
  CHECK(e.evaluate(x) < 1e-170);
}
