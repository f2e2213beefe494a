#ifndef LOJET_LOJA_HPP
#define LOJET_LOJA_HPP

#include <optional>
#include <string>
#include <vector>

#include "lojet/expr.hpp"
#include "lojet/sampler.hpp"
#include "lojet/sigma.hpp"

namespace lojet {

// Which of the four testable inequality forms is being estimated:
//   growth_ii    (f(x) - f(xbar)) / dist^r
//   gradient_iii ||grad f|| / dist^{r-1}
//   mixed_iv     (dist * ||grad f|| + |f - f(xbar)|) / dist^r
//   horn_v       as gradient_iii, restricted to horn members
enum class ConditionTag { growth_ii, gradient_iii, mixed_iv, horn_v };

std::string condition_name(ConditionTag tag);

struct HornParams {
  int r = 2;
  double w_bar = 1.0;
};

bool in_horn(const Expression& e, const Eigen::VectorXd& x_bar, const SigmaSet& sigma,
             const HornParams& hp, const Eigen::VectorXd& x);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;  // log c
  double max_residual = 0.0;
  bool valid = false;
};

// Least-squares fit of log(value) against log(dist).
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& pairs);

struct ShellEstimate {
  double radius = 0.0;
  double infimum = std::numeric_limits<double>::infinity();
  int used_samples = 0;
  bool empty = false;
  // Sample attaining the infimum: its distance to Sigma and the fitted
  // quantity (the ratio numerator) there.
  double argmin_dist = 0.0;
  double argmin_value = 0.0;
};

struct LojaEstimate {
  ConditionTag tag = ConditionTag::gradient_iii;
  int r = 2;
  std::optional<double> w_bar;
  std::vector<ShellEstimate> shells;
  double c_hat = std::numeric_limits<double>::infinity();
  ExponentFit fit;
  bool holds_empirically = false;
  bool vacuous = false;  // horn condition with no horn members anywhere
  std::uint64_t seed = 0;
  double c_floor = 1e-8;
};

// Per-shell infima of the chosen condition ratio over annulus samples,
// c_hat = min over shells, and a log-log exponent fit through the per-shell
// minimizing samples.
LojaEstimate estimate_condition(const Expression& e, const Eigen::VectorXd& x_bar,
                                const SigmaSet& sigma, int r, ConditionTag tag,
                                const ShellSampler& sampler,
                                const std::optional<HornParams>& hp = std::nullopt,
                                double c_floor = 1e-8);

}  // namespace lojet

#endif  // LOJET_LOJA_HPP
