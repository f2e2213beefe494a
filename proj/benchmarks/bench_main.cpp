#include <benchmark/benchmark.h>

#include "lojet/bnb.hpp"
#include "lojet/jet.hpp"

namespace {

using namespace lojet;

void BM_TaylorJet(benchmark::State& state) {
  Expression e = parse_expression("exp(x1)*sin(x2) + x1^2*x2 + flat(x1)", 2);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(taylor_jet(e, z, r));
}
BENCHMARK(BM_TaylorJet)->Arg(2)->Arg(4)->Arg(6);

void BM_PolynomialEvaluate(benchmark::State& state) {
  Expression e = parse_expression("x1^4 + 3*x1^2*x2^2 + x2^4 - x1*x2^3", 2);
  Jet jet = taylor_jet(e, Eigen::VectorXd::Zero(2), 4);
  Eigen::VectorXd x(2);
  x << 0.3, -0.7;
  for (auto _ : state) benchmark::DoNotOptimize(jet.poly.evaluate(x));
}
BENCHMARK(BM_PolynomialEvaluate);

void BM_QuadraticCertificate(benchmark::State& state) {
  SparsePolynomial q(2);
  q.set_coefficient(MultiIndex({2, 0}), 1.0);
  q.set_coefficient(MultiIndex({0, 2}), 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(certified_gradient_lower_bound(q, 2, 1.0, 0.5, BnbConfig{}));
}
BENCHMARK(BM_QuadraticCertificate);

}  // namespace

BENCHMARK_MAIN();
