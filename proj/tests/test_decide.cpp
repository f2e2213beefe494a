#include <doctest.h>

#include <Eigen/QR>
#include <random>

#include "lojet/decide.hpp"

using namespace lojet;

namespace {

Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(2, 2);
  m << normal(rng), normal(rng), normal(rng), normal(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
}

}  // namespace

TEST_CASE("quadratic verdicts from the spectrum") {
  Eigen::MatrixXd pd(2, 2);
  pd << 2.0, 0.5, 0.5, 1.0;
  Verdict vmin = decide_quadratic(pd);
  CHECK(vmin.status == VerdictStatus::certified_min);
  REQUIRE(vmin.certificate.has_value());
  CHECK(vmin.certificate->method == "eigenvalue");

  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 0.0, 0.0, -3.0;
  Verdict vnot = decide_quadratic(indef);
  CHECK(vnot.status == VerdictStatus::certified_not_min);
  REQUIRE_FALSE(vnot.witnesses.empty());
  // Witness is the eigen-direction of the negative eigenvalue.
  CHECK(std::abs(vnot.witnesses[0].x[1]) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXd singular(2, 2);
  singular << 1.0, 0.0, 0.0, 0.0;
  CHECK(decide_quadratic(singular).status == VerdictStatus::undecided);

  Eigen::MatrixXd nonsym(2, 2);
  nonsym << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(decide_quadratic(nonsym), DimensionError);
  CHECK_THROWS_AS(decide_quadratic(Eigen::MatrixXd::Zero(2, 3)), DimensionError);
}

TEST_CASE("quadratic verdict is invariant under orthogonal conjugation") {
  std::mt19937_64 rng(23);
  Eigen::MatrixXd a(2, 2);
  a << 1.5, 0.2, 0.2, -0.7;
  const Verdict base = decide_quadratic(a);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::MatrixXd q = random_orthogonal(rng);
    Eigen::MatrixXd conj = q.transpose() * a * q;
    conj = 0.5 * (conj + conj.transpose());  // kill rounding asymmetry
    CHECK(decide_quadratic(conj).status == base.status);
  }
}

TEST_CASE("polynomial decisions: invariance and basic shapes") {
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);
  SparsePolynomial round(2);
  round.set_coefficient(MultiIndex({2, 0}), 1.0);
  round.set_coefficient(MultiIndex({0, 2}), 1.0);
  Verdict v = decide_poly_min(round, origin);
  CHECK(v.status == VerdictStatus::certified_min);
  // Adding a constant changes nothing.
  SparsePolynomial shifted = round;
  shifted.add_term(MultiIndex::zero(2), 5.0);
  Verdict vs = decide_poly_min(shifted, origin);
  CHECK(vs.status == v.status);
  CHECK(vs.path == v.path);

  // Nonzero linear part: certified descent.
  SparsePolynomial lin(2);
  lin.set_coefficient(MultiIndex({1, 0}), 1.0);
  lin.set_coefficient(MultiIndex({2, 0}), 1.0);
  CHECK(decide_poly_min(lin, origin).status == VerdictStatus::certified_not_min);

  // Constant-only polynomial: weak minimum everywhere.
  SparsePolynomial c(2);
  c.set_coefficient(MultiIndex::zero(2), 3.0);
  CHECK(decide_poly_min(c, origin).is_min());
}

TEST_CASE("odd and even pure powers in one variable are certified") {
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(1);
  for (int r = 2; r <= 6; ++r) {
    SparsePolynomial p(1);
    p.set_coefficient(MultiIndex({r}), 1.0);
    Verdict v = decide_poly_min(p, origin);
    if (r % 2 == 0) {
      CHECK(v.status == VerdictStatus::certified_min);
    } else {
      CHECK(v.status == VerdictStatus::certified_not_min);
      CHECK_FALSE(v.witnesses.empty());
    }
  }
}

TEST_CASE("degenerate directions fall back to the sampling oracle") {
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);
  SparsePolynomial cyl(2);  // x^2 in R^2: weak minimum, degenerate
  cyl.set_coefficient(MultiIndex({2, 0}), 1.0);
  Verdict v = decide_poly_min(cyl, origin);
  CHECK(v.status == VerdictStatus::empirical_min);

  SparsePolynomial kuo(2);  // x^3 - 3 x y^3: no minimum
  kuo.set_coefficient(MultiIndex({3, 0}), 1.0);
  kuo.set_coefficient(MultiIndex({1, 3}), -3.0);
  Verdict w = decide_poly_min(kuo, origin);
  CHECK(w.status == VerdictStatus::empirical_not_min);
  CHECK(w.witnesses.size() >= 3);
}

TEST_CASE("witness search needs three consecutive shells") {
  Expression desc = parse_expression("-(x1^2 + x2^2)", 2);
  auto ws = witness_search(desc, Eigen::VectorXd::Zero(2), {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}, 64);
  CHECK(ws.size() >= 3);
  for (const auto& w : ws) CHECK(w.f_value < -1e-14);

  Expression pos = parse_expression("x1^2 + x2^2", 2);
  CHECK(witness_search(pos, Eigen::VectorXd::Zero(2), {1e-1, 3e-2, 1e-2}, 64).empty());
}

TEST_CASE("certified minimality plus witnesses is a contradiction") {
  Verdict base;
  base.status = VerdictStatus::certified_min;
  WitnessPoint w;
  w.x = Eigen::VectorXd::Zero(2);
  w.f_value = -1.0;
  CHECK_THROWS_AS(combine_with_witnesses(base, {w}), InconsistencyError);

  Verdict empirical;
  empirical.status = VerdictStatus::empirical_min;
  Verdict flipped = combine_with_witnesses(empirical, {w});
  CHECK(flipped.status == VerdictStatus::empirical_not_min);
  CHECK(flipped.path == VerdictPath::witness);
}

TEST_CASE("hq3 certificate for a nondegenerate analytic function") {
  Expression e = parse_expression("0.5*(x1^2 + 3*x2^2) + flat(x1)", 2);
  auto cert = certify_hq3(e, Eigen::VectorXd::Zero(2), 2);
  REQUIRE(cert.has_value());
  CHECK(cert->c > 0.0);
  CHECK(cert->delta_hat > 0.0);
  // The gradient bound is half of min ||grad T|| / ||x|| = 1.
  CHECK(cert->c == doctest::Approx(0.5).epsilon(1e-6));

  // Low-order terms present: no certificate.
  Expression cubic = parse_expression("x1^3 + x1^2", 1);
  CHECK_FALSE(certify_hq3(cubic, Eigen::VectorXd::Zero(1), 3).has_value());
}

TEST_CASE("full pipeline handles the one-dimensional model family") {
  for (int r = 2; r <= 3; ++r) {
    Expression e = parse_expression("x1^" + std::to_string(r) + " + flat(x1)", 1);
    SigmaSet sigma = SigmaSet::singleton(Eigen::VectorXd::Zero(1));
    Verdict v = decide_local_min(e, Eigen::VectorXd::Zero(1), r, sigma);
    if (r % 2 == 0)
      CHECK(v.is_min());
    else
      CHECK(v.is_not_min());
    CHECK(v.certified());
  }
  Expression e = parse_expression("x1^2", 1);
  SigmaSet sigma = SigmaSet::singleton(Eigen::VectorXd::Zero(1));
  CHECK_THROWS_AS(decide_local_min(e, Eigen::VectorXd::Zero(1), 1, sigma), DimensionError);
}

TEST_CASE("uncovered critical points stop the pipeline") {
  Expression e = parse_expression("(x1^2 - 1)^2 / 4", 1);
  SigmaSet sigma = SigmaSet::singleton(Eigen::VectorXd::Zero(1));
  DecideConfig config;
  config.sigma_ball_radius = 2.0;
  Verdict v = decide_local_min(e, Eigen::VectorXd::Zero(1), 2, sigma, config);
  CHECK(v.status == VerdictStatus::undecided);
  REQUIRE_FALSE(v.notes.empty());
  CHECK(v.notes[0].find("Sigma") != std::string::npos);
}

TEST_CASE("admissible epsilon is half the growth constant") {
  Expression e = parse_expression("x1^2 + x2^2", 2);
  SigmaSet sigma = SigmaSet::singleton(Eigen::VectorXd::Zero(2));
  ShellSampler sampler(Eigen::VectorXd::Zero(2), {1e-1, 1e-2, 1e-3}, 128, 42);
  LojaEstimate growth = estimate_condition(e, Eigen::VectorXd::Zero(2), sigma, 2,
                                           ConditionTag::growth_ii, sampler);
  CHECK(admissible_epsilon(growth) == doctest::Approx(0.5).epsilon(1e-12));
  LojaEstimate wrong = estimate_condition(e, Eigen::VectorXd::Zero(2), sigma, 2,
                                          ConditionTag::gradient_iii, sampler);
  CHECK_THROWS_AS(admissible_epsilon(wrong), DimensionError);
}

TEST_CASE("perturbation stability in both modes") {
  Expression f = parse_expression("x1^2 + x2^2", 2);
  Expression h = parse_expression("0.4*(x1^2 + x2^2)*cos(x1)", 2);
  SigmaSet sigma = SigmaSet::singleton(Eigen::VectorXd::Zero(2));
  ShellSampler sampler(Eigen::VectorXd::Zero(2), {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}, 256, 42);
  PerturbationReport rep = check_perturbation_stability(f, h, Eigen::VectorXd::Zero(2), sigma, 2,
                                                        0.4, sampler, PerturbMode::dist_bound);
  CHECK(rep.applicable);
  CHECK(rep.h_bound_ok);
  CHECK(rep.combined_min_empirical);
  CHECK(rep.samples_checked > 0);

  PerturbationReport grad = check_perturbation_stability(f, h, Eigen::VectorXd::Zero(2), sigma,
                                                         2, 0.4, sampler,
                                                         PerturbMode::gradient_bound);
  CHECK(grad.L_hat == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(grad.h_bound_ok);

  // Too large an epsilon is flagged as not applicable.
  PerturbationReport big = check_perturbation_stability(f, h, Eigen::VectorXd::Zero(2), sigma, 2,
                                                        5.0, sampler, PerturbMode::dist_bound);
  CHECK_FALSE(big.applicable);
}
