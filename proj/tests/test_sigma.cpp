#include <doctest.h>

#include <random>

#include "lojet/sampler.hpp"
#include "lojet/sigma.hpp"

using namespace lojet;

TEST_CASE("sampler validates its configuration") {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(ShellSampler(c, {}, 8, 1), DimensionError);
  CHECK_THROWS_AS(ShellSampler(c, {0.1, 0.2}, 8, 1), DimensionError);
  CHECK_THROWS_AS(ShellSampler(c, {0.1, -0.01}, 8, 1), DimensionError);
  CHECK_THROWS_AS(ShellSampler(c, {0.1}, 0, 1), DimensionError);
}

TEST_CASE("sampler is deterministic and respects the annulus") {
  Eigen::VectorXd c(2);
  c << 1.0, -2.0;
  ShellSampler a(c, {1e-1, 1e-2}, 128, 99);
  ShellSampler b(c, {1e-1, 1e-2}, 128, 99);
  for (std::size_t shell = 0; shell < 2; ++shell) {
    auto sa = a.sample_annulus(shell);
    auto sb = b.sample_annulus(shell);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i) CHECK(sa[i] == sb[i]);
    const double rho = a.radii()[shell];
    for (const auto& x : sa) {
      const double d = (x - c).norm();
      CHECK(d >= 0.5 * rho * (1.0 - 1e-12));
      CHECK(d <= rho * (1.0 + 1e-12));
    }
    for (const auto& x : a.sample_sphere(shell))
      CHECK((x - c).norm() == doctest::Approx(rho).epsilon(1e-12));
  }
  ShellSampler other_seed(c, {1e-1, 1e-2}, 128, 100);
  CHECK(other_seed.sample_annulus(0)[0] != a.sample_annulus(0)[0]);
}

TEST_CASE("singleton and one-point cloud agree") {
  Eigen::VectorXd p(2);
  p << 0.5, -0.25;
  SigmaSet s = SigmaSet::singleton(p);
  SigmaSet cl = SigmaSet::point_cloud({p});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd x(2);
    x << unif(rng), unif(rng);
    CHECK(std::abs(s.distance(x) - cl.distance(x)) <= 1e-12);
  }
}

TEST_CASE("affine distance equals the projection residual") {
  // Sigma = {x1 = 0} in R^2: distance is |x1|.
  Eigen::MatrixXd basis(2, 1);
  basis << 0.0, 1.0;
  SigmaSet s = SigmaSet::affine(Eigen::VectorXd::Zero(2), basis);
  Eigen::VectorXd x(2);
  x << -0.3, 5.0;
  CHECK(s.distance(x) == doctest::Approx(0.3).epsilon(1e-14));

  // A rotated line: distance must be bounded by the distance to any point
  // on the line and match the orthogonal residual.
  Eigen::MatrixXd tilted(2, 1);
  tilted << std::sqrt(0.5), std::sqrt(0.5);
  SigmaSet t = SigmaSet::affine(Eigen::VectorXd::Zero(2), tilted);
  Eigen::VectorXd y(2);
  y << 1.0, 0.0;
  CHECK(t.distance(y) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  for (double c : {-2.0, -0.5, 0.0, 0.7, 3.0})
    CHECK(t.distance(y) <= (y - Eigen::VectorXd(c * tilted.col(0))).norm() + 1e-14);

  CHECK_THROWS_AS(SigmaSet::affine(Eigen::VectorXd::Zero(2),
                                   Eigen::MatrixXd::Constant(2, 1, 1.0)),
                  DimensionError);
}

TEST_CASE("distance satisfies the triangle inequality") {
  std::vector<Eigen::VectorXd> pts;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    Eigen::VectorXd p(2);
    p << unif(rng), unif(rng);
    pts.push_back(p);
  }
  SigmaSet s = SigmaSet::point_cloud(pts);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd x(2), y(2);
    x << unif(rng), unif(rng);
    y << unif(rng), unif(rng);
    CHECK(std::abs(s.distance(x) - s.distance(y)) <= (x - y).norm() + 1e-12);
  }
}

TEST_CASE("critical set of a strongly convex function is its minimizer") {
  Expression e = parse_expression("x1^2 + x2^2 + x1*x2", 2);
  SigmaSet s = SigmaSet::critical_set(e, Eigen::VectorXd::Zero(2), 0.5);
  CHECK_THROWS_AS(s.distance(Eigen::VectorXd::Zero(2)), DimensionError);  // unresolved
  s.resolve();
  REQUIRE(s.cloud().size() == 1);
  CHECK(s.cloud()[0].norm() <= 1e-9);
  for (const auto& p : s.cloud()) CHECK(e.gradient(p).norm() <= 1e-10);
}

TEST_CASE("critical set finds multiple and degenerate roots") {
  // (x^2 - 1)^2 / 4 has critical points -1, 0, 1.
  Expression e = parse_expression("(x1^2 - 1)^2 / 4", 1);
  SigmaSet s = SigmaSet::critical_set(e, Eigen::VectorXd::Zero(1), 2.0);
  s.resolve();
  CHECK(s.cloud().size() == 3);
  for (double root : {-1.0, 0.0, 1.0}) {
    Eigen::VectorXd p(1);
    p << root;
    CHECK(s.distance(p) <= 1e-8);
  }

  // x^6: the root is degenerate; the solver must still land on it.
  Expression deg = parse_expression("x1^6", 1);
  SigmaSet d = SigmaSet::critical_set(deg, Eigen::VectorXd::Zero(1), 0.5);
  d.resolve();
  REQUIRE_FALSE(d.cloud().empty());
  for (const auto& p : d.cloud()) CHECK(p.norm() <= 1e-9);
}

TEST_CASE("coverage validation flags uncovered critical points") {
  Expression e = parse_expression("(x1^2 - 1)^2 / 4", 1);
  SigmaSet zero_only = SigmaSet::singleton(Eigen::VectorXd::Zero(1));
  SigmaCoverage cov = validate_sigma_covers_critical(e, zero_only,
                                                     Eigen::VectorXd::Zero(1), 2.0, 64);
  CHECK_FALSE(cov.covered);
  CHECK_FALSE(cov.violations.empty());

  Expression conv = parse_expression("x1^2", 1);
  SigmaCoverage ok = validate_sigma_covers_critical(conv, zero_only,
                                                    Eigen::VectorXd::Zero(1), 0.5, 64);
  CHECK(ok.covered);
}

TEST_CASE("sample_near returns Sigma points inside the ball") {
  Eigen::MatrixXd basis(2, 1);
  basis << 0.0, 1.0;
  SigmaSet s = SigmaSet::affine(Eigen::VectorXd::Zero(2), basis);
  Eigen::VectorXd x(2);
  x << 0.01, 0.0;
  auto pts = s.sample_near(x, 0.1, 25);
  CHECK(pts.size() >= 5);
  for (const auto& p : pts) {
    CHECK(std::abs(p[0]) <= 1e-14);       // on Sigma
    CHECK((p - x).norm() <= 0.1 + 1e-12); // inside the ball
  }
}
