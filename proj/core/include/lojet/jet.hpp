#ifndef LOJET_JET_HPP
#define LOJET_JET_HPP

#include <vector>

#include "lojet/expr.hpp"
#include "lojet/polynomial.hpp"
#include "lojet/sampler.hpp"
#include "lojet/sigma.hpp"

namespace lojet {

// Degree-r Taylor data of e at z. For n <= 3 the truncated multivariate
// series is propagated directly through the tree; for larger n the
// coefficients are recovered degree by degree from univariate expansions
// along a deterministic set of directions.
Jet taylor_jet(const Expression& e, const Eigen::VectorXd& z, int r);

struct RemainderShell {
  double radius = 0.0;
  double max_value_ratio = 0.0;     // sup |R(x)| / ||x-z||^r
  double max_gradient_ratio = 0.0;  // sup ||grad R(x)|| / ||x-z||^{r-1}
  int samples = 0;
};

// Sampled sup of the Taylor remainder ratios on spheres of the given radii.
std::vector<RemainderShell> remainder_ratio(const Expression& e, const Jet& jet,
                                            const std::vector<double>& radii,
                                            int samples_per_shell,
                                            std::uint64_t seed = 42);

struct FlatnessShell {
  double radius = 0.0;
  double sup_value_ratio = 0.0;     // sup |g(x)| / dist(x,Sigma)^r
  double sup_gradient_ratio = 0.0;  // sup ||grad g(x)|| / dist^{r-1}
  bool empty = false;               // no sample had positive distance
};

struct FlatnessReport {
  bool in_class = false;  // empirical: jets vanish at every tested Sigma point
  std::vector<Eigen::VectorXd> tested_sigma_points;
  std::vector<FlatnessShell> shells;
  double max_jet_coefficient = 0.0;
  std::vector<bool> sigma_empty_in_shell;
};

// Empirical membership test for the relative flat class: jets of g up to
// order r vanish at sampled Sigma points (tolerance `coeff_tol`), with the
// bounded-ratio diagnostics per shell.
FlatnessReport flatness_check(const Expression& g, const SigmaSet& sigma,
                              const Eigen::VectorXd& x_bar, int r,
                              const std::vector<double>& radii, int samples_per_shell,
                              std::uint64_t seed = 42, double coeff_tol = 1e-9);

}  // namespace lojet

#endif  // LOJET_JET_HPP
