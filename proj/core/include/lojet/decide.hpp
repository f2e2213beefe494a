#ifndef LOJET_DECIDE_HPP
#define LOJET_DECIDE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lojet/bnb.hpp"
#include "lojet/expr.hpp"
#include "lojet/jet.hpp"
#include "lojet/loja.hpp"
#include "lojet/sigma.hpp"

namespace lojet {

enum class VerdictStatus {
  certified_min,
  certified_not_min,
  empirical_min,
  empirical_not_min,
  undecided,
};

enum class VerdictPath { quadratic, hq3_reduction, growth_ii, witness, oracle };

std::string status_name(VerdictStatus s);
std::string path_name(VerdictPath p);

struct Certificate {
  double c = 0.0;
  double radius = 0.0;
  std::string method;
};

struct WitnessPoint {
  Eigen::VectorXd x;
  double f_value = 0.0;
  double radius = 0.0;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::undecided;
  VerdictPath path = VerdictPath::oracle;
  std::optional<Certificate> certificate;
  std::vector<WitnessPoint> witnesses;
  std::vector<LojaEstimate> estimates;
  std::vector<std::string> notes;

  bool is_min() const {
    return status == VerdictStatus::certified_min || status == VerdictStatus::empirical_min;
  }
  bool is_not_min() const {
    return status == VerdictStatus::certified_not_min ||
           status == VerdictStatus::empirical_not_min;
  }
  bool certified() const {
    return status == VerdictStatus::certified_min || status == VerdictStatus::certified_not_min;
  }
};

// Eigenvalue decision for a nondegenerate quadratic model. Eigenvalues in
// (-lambda_floor, lambda_floor) make the matrix effectively singular and
// the verdict undecided.
Verdict decide_quadratic(const Eigen::MatrixXd& A, double lambda_floor = 1e-10);

struct Hq3Certificate {
  double c = 0.0;           // already halved against the remainder gradient
  double delta_hat = 0.0;   // largest sampled radius with ||grad R|| / ||x||^{r-1} <= c
  bool fully_certified = false;  // polynomial input of degree <= r
  GradientLowerBound bound;
  Jet jet;
};

struct Hq3Config {
  double outer_radius = 0.1;
  double inner_fraction = 0.5;
  BnbConfig bnb;
  double coeff_tol = 1e-9;
  std::vector<double> remainder_radii = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  int remainder_samples = 256;
  std::uint64_t seed = 42;
};

// Gradient certificate via the nonvanishing jet gradient: requires all jet
// coefficients of order < r to vanish and a certified positive lower bound
// for the jet gradient on the annulus.
std::optional<Hq3Certificate> certify_hq3(const Expression& e, const Eigen::VectorXd& x_bar,
                                          int r, const Hq3Config& config = {});

// Desk-scale local-minimality decision for a polynomial in displacement
// coordinates around x_bar.
Verdict decide_poly_min(const SparsePolynomial& T, const Eigen::VectorXd& x_bar,
                        const BnbConfig& bnb = {}, std::uint64_t seed = 42);

// Per-shell best descent samples; a witness sequence needs f below
// f(x_bar) - 1e-14 on at least 3 consecutive shells.
std::vector<WitnessPoint> witness_search(const Expression& e, const Eigen::VectorXd& x_bar,
                                         const std::vector<double>& radii,
                                         int samples_per_shell, std::uint64_t seed = 42);

// Largest perturbation level for which strict growth survives: c_hat / 2.
double admissible_epsilon(const LojaEstimate& growth);

enum class PerturbMode { dist_bound, gradient_bound };

struct PerturbationReport {
  bool h_bound_ok = false;
  bool combined_min_empirical = false;
  bool applicable = true;  // false when epsilon >= c_hat
  double c_hat = 0.0;
  double L_hat = 0.0;  // only in gradient_bound mode
  int samples_checked = 0;
  std::vector<std::string> notes;
};

PerturbationReport check_perturbation_stability(const Expression& f, const Expression& h,
                                                const Eigen::VectorXd& x_bar,
                                                const SigmaSet& sigma, int r, double epsilon,
                                                const ShellSampler& sampler, PerturbMode mode);

struct DecideConfig {
  std::vector<double> radii = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  int samples_per_shell = 512;
  std::uint64_t seed = 42;
  double w_bar = 1.0;
  Hq3Config hq3;
  BnbConfig bnb;
  bool check_sigma_coverage = true;  // HQ1's reverse direction needs less; kept on by default
  double sigma_ball_radius = 0.5;
  int sigma_starts = 64;
  double critical_tol = 1e-10;
};

// Full pipeline: HQ3 certificate with transfer to the jet polynomial, then
// the empirically supported jet reduction, with an independent witness
// search that can only push towards "not a minimum".
Verdict decide_local_min(const Expression& e, const Eigen::VectorXd& x_bar, int r,
                         SigmaSet& sigma, const DecideConfig& config = {});

// Merges an established verdict with independently found witnesses.
// A certificate of minimality together with a witness sequence is a
// contradiction and throws.
Verdict combine_with_witnesses(Verdict base, std::vector<WitnessPoint> witnesses);

}  // namespace lojet

#endif  // LOJET_DECIDE_HPP
