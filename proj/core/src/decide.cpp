#include "lojet/decide.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace lojet {

namespace {

constexpr double kCoeffNoise = 1e-11;   // structural zero threshold for jet tables
constexpr double kWitnessDrop = 1e-14;  // required descent below f(x_bar)

// Degree bound if the tree is polynomial, -1 otherwise.
int polynomial_degree_bound(const ExprNode& node) {
  switch (node.kind) {
    case NodeKind::Constant: return 0;
    case NodeKind::Variable: return 1;
    case NodeKind::Neg: return polynomial_degree_bound(*node.a);
    case NodeKind::Add:
    case NodeKind::Sub: {
      const int a = polynomial_degree_bound(*node.a);
      const int b = polynomial_degree_bound(*node.b);
      return (a < 0 || b < 0) ? -1 : std::max(a, b);
    }
    case NodeKind::Mul: {
      const int a = polynomial_degree_bound(*node.a);
      const int b = polynomial_degree_bound(*node.b);
      return (a < 0 || b < 0) ? -1 : a + b;
    }
    case NodeKind::Pow: {
      const int a = polynomial_degree_bound(*node.a);
      return a < 0 ? -1 : a * node.exponent;
    }
    case NodeKind::Div:
    case NodeKind::Func:
      return -1;
  }
  return -1;
}

SparsePolynomial drop_noise(const SparsePolynomial& p, double tol) {
  SparsePolynomial out(p.n_vars());
  for (const auto& [alpha, c] : p.terms())
    if (std::abs(c) > tol) out.set_coefficient(alpha, c);
  return out;
}

// p(x - center) expanded in absolute coordinates.
SparsePolynomial shift_polynomial(const SparsePolynomial& p, const Eigen::VectorXd& center) {
  const int n = p.n_vars();
  SparsePolynomial out(n);
  for (const auto& [alpha, c] : p.terms()) {
    SparsePolynomial term(n);
    term.set_coefficient(MultiIndex::zero(n), c);
    for (int i = 0; i < n; ++i) {
      SparsePolynomial lin(n);  // (x_i - z_i)
      lin.set_coefficient(MultiIndex::unit(n, i), 1.0);
      lin.set_coefficient(MultiIndex::zero(n), -center[i]);
      for (int q = 0; q < alpha[i]; ++q) term = term.multiply(lin);
    }
    out += term;
  }
  return out;
}

}  // namespace

std::string status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::certified_min: return "certified_min";
    case VerdictStatus::certified_not_min: return "certified_not_min";
    case VerdictStatus::empirical_min: return "empirical_min";
    case VerdictStatus::empirical_not_min: return "empirical_not_min";
    case VerdictStatus::undecided: return "undecided";
  }
  return "?";
}

std::string path_name(VerdictPath p) {
  switch (p) {
    case VerdictPath::quadratic: return "quadratic";
    case VerdictPath::hq3_reduction: return "hq3_reduction";
    case VerdictPath::growth_ii: return "growth_ii";
    case VerdictPath::witness: return "witness";
    case VerdictPath::oracle: return "oracle";
  }
  return "?";
}

Verdict decide_quadratic(const Eigen::MatrixXd& A, double lambda_floor) {
  if (A.rows() != A.cols()) throw DimensionError("matrix must be square");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()))
    throw DimensionError("matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  const Eigen::VectorXd& lambda = eig.eigenvalues();

  Verdict v;
  v.path = VerdictPath::quadratic;
  const double lmin = lambda.minCoeff();
  if (lmin <= -lambda_floor) {
    // A descent direction exists regardless of the remaining spectrum.
    v.status = VerdictStatus::certified_not_min;
    int idx = 0;
    lambda.minCoeff(&idx);
    WitnessPoint w;
    w.x = eig.eigenvectors().col(idx);
    w.f_value = lmin;
    v.witnesses.push_back(std::move(w));
    v.certificate = Certificate{-lmin, 0.0, "eigenvalue"};
    return v;
  }
  if (lambda.cwiseAbs().minCoeff() < lambda_floor) {
    v.status = VerdictStatus::undecided;
    v.notes.push_back("quadratic form is singular; the nondegenerate reduction does not apply");
    return v;
  }
  v.status = VerdictStatus::certified_min;
  v.certificate = Certificate{lmin, 0.0, "eigenvalue"};
  return v;
}

std::optional<Hq3Certificate> certify_hq3(const Expression& e, const Eigen::VectorXd& x_bar,
                                          int r, const Hq3Config& config) {
  Jet jet = taylor_jet(e, x_bar, r);
  if (jet.poly.slice(1, r - 1).max_abs_coefficient() > config.coeff_tol)
    return std::nullopt;  // lower-order jet must vanish
  const SparsePolynomial top = drop_noise(jet.poly.slice(r, r), 0.0);
  if (top.empty()) return std::nullopt;

  GradientLowerBound bound =
      certified_gradient_lower_bound(top, r, config.outer_radius, config.inner_fraction,
                                     config.bnb);
  if (!bound.certified) return std::nullopt;

  Hq3Certificate cert;
  cert.bound = bound;
  cert.jet = jet;
  cert.c = 0.5 * bound.c;  // half absorbs the remainder gradient

  const int poly_deg = polynomial_degree_bound(*e.root());
  if (poly_deg >= 0 && poly_deg <= r) {
    cert.fully_certified = true;
    cert.delta_hat = config.outer_radius;
    return cert;
  }

  // Validate empirically the radius where the sampled remainder gradient
  // stays below the retained half of the bound.
  Jet top_jet = jet;
  top_jet.poly = top;
  auto shells = remainder_ratio(e, top_jet, config.remainder_radii, config.remainder_samples,
                                config.seed);
  double delta = 0.0;
  for (std::size_t i = shells.size(); i-- > 0;) {
    if (shells[i].max_gradient_ratio <= cert.c)
      delta = shells[i].radius;
    else
      break;
  }
  if (delta == 0.0) return std::nullopt;
  cert.delta_hat = delta;
  return cert;
}

std::vector<WitnessPoint> witness_search(const Expression& e, const Eigen::VectorXd& x_bar,
                                         const std::vector<double>& radii,
                                         int samples_per_shell, std::uint64_t seed) {
  ShellSampler sampler(x_bar, radii, samples_per_shell, seed);
  const double f_bar = e.evaluate(x_bar);
  std::vector<std::optional<WitnessPoint>> per_shell(radii.size());
  for (std::size_t shell = 0; shell < radii.size(); ++shell) {
    double best = f_bar;
    std::optional<WitnessPoint> w;
    for (const auto& x : sampler.sample_annulus(shell)) {
      double fx;
      try {
        fx = e.evaluate(x);
      } catch (const EvalError&) {
        continue;
      }
      if (fx < best && fx < f_bar - kWitnessDrop) {
        best = fx;
        w = WitnessPoint{x, fx, radii[shell]};
      }
    }
    per_shell[shell] = w;
  }
  // Require a run of at least 3 consecutive shells to discount noise.
  int run = 0, best_run = 0, best_end = -1;
  for (std::size_t i = 0; i < per_shell.size(); ++i) {
    run = per_shell[i] ? run + 1 : 0;
    if (run > best_run) {
      best_run = run;
      best_end = static_cast<int>(i);
    }
  }
  std::vector<WitnessPoint> out;
  if (best_run >= 3) {
    for (int i = best_end - best_run + 1; i <= best_end; ++i)
      out.push_back(*per_shell[static_cast<std::size_t>(i)]);
  }
  return out;
}

Verdict decide_poly_min(const SparsePolynomial& T, const Eigen::VectorXd& x_bar,
                        const BnbConfig& bnb, std::uint64_t seed) {
  const int n = T.n_vars();
  Verdict v;
  // Minimality is invariant to the constant term.
  SparsePolynomial body = drop_noise(T.slice(1, std::max(T.degree(), 1)), kCoeffNoise);

  if (body.empty()) {
    v.status = VerdictStatus::empirical_min;
    v.path = VerdictPath::oracle;
    v.notes.push_back("polynomial is constant; every point is a (weak) local minimum");
    return v;
  }

  // Nonzero gradient at the center: certified descent along minus gradient.
  const SparsePolynomial linear = body.slice(1, 1);
  if (!linear.empty()) {
    v.status = VerdictStatus::certified_not_min;
    v.path = VerdictPath::quadratic;
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
    for (const auto& [alpha, c] : linear.terms())
      for (int i = 0; i < n; ++i)
        if (alpha[i] == 1) dir[i] = -c;
    WitnessPoint w;
    w.x = dir.normalized();
    w.f_value = -dir.norm();
    v.witnesses.push_back(std::move(w));
    v.certificate = Certificate{dir.norm(), 0.0, "gradient-at-center"};
    v.notes.push_back("nonzero gradient at the center");
    return v;
  }

  // Nondegenerate quadratic part decides outright.
  const SparsePolynomial quad = body.slice(2, 2);
  if (!quad.empty()) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [alpha, c] : quad.terms()) {
      int i = -1, j = -1;
      for (int k = 0; k < n; ++k) {
        if (alpha[k] == 2) i = j = k;
        if (alpha[k] == 1) (i < 0 ? i : j) = k;
      }
      if (i == j) {
        H(i, i) = 2.0 * c;
      } else {
        H(i, j) = c;
        H(j, i) = c;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
    if (eig.eigenvalues().cwiseAbs().minCoeff() >= 1e-10) {
      Verdict q = decide_quadratic(H);
      q.notes.push_back("nondegenerate quadratic part dominates higher-order terms");
      return q;
    }
  }

  // Jet reduction applied to the polynomial itself: if the gradient of the
  // lowest-order homogeneous part vanishes only at the center, the sign of
  // that part on the unit sphere settles the question.
  const int r0 = body.min_degree();
  const SparsePolynomial head = body.homogeneous_part(r0);
  GradientLowerBound gb = certified_gradient_lower_bound(head, r0, 1.0, 0.5, bnb);
  if (gb.certified) {
    // Rigorous reduction radius: the tail gradient is bounded by
    // M * ||x||^{r0} for ||x|| <= 1, so below c/M the head dominates.
    const SparsePolynomial tail = body - head;
    double tail_coeff_mass = 0.0;
    for (const auto& [alpha, c] : tail.terms()) tail_coeff_mass += std::abs(c) * alpha.order();
    const double radius =
        tail_coeff_mass > 0.0 ? std::min(1.0, 0.5 * gb.c / tail_coeff_mass) : 1.0;

    SphereRange range = homogeneous_sphere_min(head, bnb);
    if (range.min_lower > 0.0) {
      v.status = VerdictStatus::certified_min;
      v.path = VerdictPath::hq3_reduction;
      v.certificate = Certificate{range.min_lower, radius, "jet-reduction+sphere-interval"};
      return v;
    }
    if (range.min_upper < 0.0) {
      v.status = VerdictStatus::certified_not_min;
      v.path = VerdictPath::hq3_reduction;
      v.certificate = Certificate{-range.min_upper, radius, "jet-reduction+sphere-interval"};
      for (double rho : {radius, radius / 2, radius / 4}) {
        WitnessPoint w;
        w.x = x_bar + rho * range.witness;
        w.f_value = T.evaluate(w.x - x_bar);
        w.radius = rho;
        v.witnesses.push_back(std::move(w));
      }
      return v;
    }
  }

  // Sampling oracle.
  const std::vector<double> radii = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  ShellSampler sampler(Eigen::VectorXd::Zero(n), radii, 512, seed);
  int negative_shells = 0;
  std::vector<WitnessPoint> witnesses;
  for (std::size_t shell = 0; shell < radii.size(); ++shell) {
    double best = 0.0;
    std::optional<WitnessPoint> w;
    for (const auto& x : sampler.sample_annulus(shell)) {
      const double val = body.evaluate(x);
      if (val < best && val < -kWitnessDrop) {
        best = val;
        w = WitnessPoint{x_bar + x, val, radii[shell]};
      }
    }
    if (w) {
      ++negative_shells;
      witnesses.push_back(*w);
    }
  }
  if (negative_shells >= 3) {
    v.status = VerdictStatus::empirical_not_min;
    v.path = VerdictPath::witness;
    v.witnesses = std::move(witnesses);
  } else if (negative_shells == 0) {
    v.status = VerdictStatus::empirical_min;
    v.path = VerdictPath::oracle;
  } else {
    v.status = VerdictStatus::undecided;
    v.path = VerdictPath::oracle;
    v.notes.push_back("descent samples on fewer than 3 shells; treated as noise");
  }
  return v;
}

double admissible_epsilon(const LojaEstimate& growth) {
  if (growth.tag != ConditionTag::growth_ii)
    throw DimensionError("admissible_epsilon requires a growth_ii estimate");
  if (!(growth.c_hat > 0.0) || !std::isfinite(growth.c_hat))
    throw DimensionError("center is not an empirical strict-growth minimum (c_hat <= 0)");
  return 0.5 * growth.c_hat;
}

PerturbationReport check_perturbation_stability(const Expression& f, const Expression& h,
                                                const Eigen::VectorXd& x_bar,
                                                const SigmaSet& sigma, int r, double epsilon,
                                                const ShellSampler& sampler, PerturbMode mode) {
  if (!(epsilon > 0.0)) throw DimensionError("epsilon must be positive");
  PerturbationReport report;

  LojaEstimate growth = estimate_condition(f, x_bar, sigma, r, ConditionTag::growth_ii, sampler);
  report.c_hat = growth.c_hat;
  if (!(epsilon < growth.c_hat)) {
    report.applicable = false;
    report.notes.push_back("epsilon >= estimated growth constant; stability bound vacuous");
  }

  const double f_bar = f.evaluate(x_bar);
  const double h_bar = h.evaluate(x_bar);

  // Pass 1 (gradient mode): local Lipschitz factor of the gradient norm.
  if (mode == PerturbMode::gradient_bound) {
    for (std::size_t shell = 0; shell < sampler.radii().size(); ++shell)
      for (const auto& x : sampler.sample_annulus(shell)) {
        const double d = sigma.distance(x);
        if (!(d > 0.0) || !std::isfinite(d)) continue;
        try {
          report.L_hat = std::max(report.L_hat, f.gradient(x).norm() / d);
        } catch (const EvalError&) {
        }
      }
  }

  bool h_ok = true, combined_ok = true;
  const double slack = 1e-12;
  for (std::size_t shell = 0; shell < sampler.radii().size(); ++shell) {
    for (const auto& x : sampler.sample_annulus(shell)) {
      const double d = sigma.distance(x);
      if (!(d > 0.0) || !std::isfinite(d)) continue;
      double hx, fx;
      try {
        hx = h.evaluate(x);
        fx = f.evaluate(x);
      } catch (const EvalError&) {
        continue;
      }
      const double dh = std::abs(hx - h_bar);
      const double dr = std::pow(d, r);
      if (mode == PerturbMode::dist_bound) {
        if (dh > epsilon * dr * (1.0 + slack)) h_ok = false;
      } else {
        double gn;
        try {
          gn = f.gradient(x).norm();
        } catch (const EvalError&) {
          continue;
        }
        const bool direct = dh <= epsilon * std::pow(gn, r) * (1.0 + slack);
        const bool chained = dh <= epsilon * std::pow(report.L_hat, r) * dr * (1.0 + slack);
        if (!(direct && chained)) h_ok = false;
      }
      if (report.applicable) {
        const double lhs = (fx + hx) - (f_bar + h_bar);
        if (lhs + slack * std::max(1.0, std::abs(lhs)) < (growth.c_hat - epsilon) * dr ||
            lhs < -slack)
          combined_ok = false;
      }
      ++report.samples_checked;
    }
  }
  report.h_bound_ok = h_ok;
  report.combined_min_empirical = report.applicable && h_ok && combined_ok;
  return report;
}

Verdict combine_with_witnesses(Verdict base, std::vector<WitnessPoint> witnesses) {
  if (witnesses.empty()) return base;
  if (base.status == VerdictStatus::certified_min)
    throw InconsistencyError(
        "minimality certificate contradicts a descent witness sequence; "
        "tolerance failure or bug");
  if (base.is_not_min()) {
    for (auto& w : witnesses) base.witnesses.push_back(std::move(w));
    return base;
  }
  Verdict v;
  v.status = VerdictStatus::empirical_not_min;
  v.path = VerdictPath::witness;
  v.witnesses = std::move(witnesses);
  v.estimates = std::move(base.estimates);
  v.notes = std::move(base.notes);
  v.notes.push_back("witness search overrides the " + status_name(base.status) + " candidate");
  return v;
}

Verdict decide_local_min(const Expression& e, const Eigen::VectorXd& x_bar, int r,
                         SigmaSet& sigma, const DecideConfig& config) {
  if (r < 2)
    throw DimensionError(
        "r = 1 is rejected: dist^{r-1} is constant and the gradient condition "
        "fails at any interior minimum; use r >= 2");
  sigma.resolve();

  Verdict verdict;
  if (config.check_sigma_coverage) {
    SigmaCoverage cov = validate_sigma_covers_critical(e, sigma, x_bar,
                                                       config.sigma_ball_radius,
                                                       config.sigma_starts, config.critical_tol);
    if (!cov.covered) {
      verdict.status = VerdictStatus::undecided;
      verdict.notes.push_back("Sigma does not cover the estimated critical set (" +
                              std::to_string(cov.violations.size()) + " violations)");
      return verdict;
    }
  }

  auto witnesses = witness_search(e, x_bar, config.radii, config.samples_per_shell, config.seed);

  // Path 1: gradient certificate and transfer to the jet polynomial.
  Hq3Config hq3_cfg = config.hq3;
  hq3_cfg.seed = config.seed;
  if (auto cert = certify_hq3(e, x_bar, r, hq3_cfg)) {
    Verdict inner = decide_poly_min(drop_noise(cert->jet.poly, kCoeffNoise), x_bar, config.bnb,
                                    config.seed);
    inner.path = VerdictPath::hq3_reduction;
    inner.certificate = Certificate{cert->c, cert->delta_hat,
                                    cert->fully_certified
                                        ? "hq3-interval"
                                        : "hq3-interval (remainder validated by sampling)"};
    if (!cert->fully_certified)
      inner.notes.push_back("transfer certified modulo remainder sampling at radius " +
                            std::to_string(cert->delta_hat));
    return combine_with_witnesses(std::move(inner), std::move(witnesses));
  }

  // Path 2: empirical horn inequality plus jet constancy on Sigma.
  ShellSampler sampler(x_bar, config.radii, config.samples_per_shell, config.seed);
  HornParams hp{r, config.w_bar};
  LojaEstimate est_v =
      estimate_condition(e, x_bar, sigma, r, ConditionTag::horn_v, sampler, hp);
  LojaEstimate est_iii =
      estimate_condition(e, x_bar, sigma, r, ConditionTag::gradient_iii, sampler);
  verdict.estimates.push_back(est_v);
  verdict.estimates.push_back(est_iii);

  Jet jet = taylor_jet(e, x_bar, r);
  bool jet_constant = true;
  {
    const SparsePolynomial reference = shift_polynomial(jet.poly, x_bar);
    auto sigma_points = sigma.sample_near(x_bar, config.radii.front(), 25);
    for (const auto& z : sigma_points) {
      Jet jz = taylor_jet(e, z, r);
      SparsePolynomial diff = shift_polynomial(jz.poly, z) - reference;
      if (diff.max_abs_coefficient() > 1e-9) {
        jet_constant = false;
        break;
      }
    }
  }

  if (est_v.holds_empirically && jet_constant) {
    Verdict inner = decide_poly_min(drop_noise(jet.poly, kCoeffNoise), x_bar, config.bnb,
                                    config.seed);
    // The reduction hypothesis is only sampled, so the transfer is at most
    // empirical.
    if (inner.status == VerdictStatus::certified_min)
      inner.status = VerdictStatus::empirical_min;
    if (inner.status == VerdictStatus::certified_not_min)
      inner.status = VerdictStatus::empirical_not_min;
    inner.certificate.reset();
    inner.path = VerdictPath::hq3_reduction;
    inner.estimates = verdict.estimates;
    inner.notes.push_back("jet reduction transferred under sampled horn inequality" +
                          std::string(est_v.vacuous ? " (vacuous horn membership)" : ""));
    return combine_with_witnesses(std::move(inner), std::move(witnesses));
  }

  if (!witnesses.empty()) {
    verdict.status = VerdictStatus::empirical_not_min;
    verdict.path = VerdictPath::witness;
    verdict.witnesses = std::move(witnesses);
    return verdict;
  }

  verdict.status = VerdictStatus::undecided;
  if (!est_v.holds_empirically)
    verdict.notes.push_back("horn-restricted gradient inequality not supported by sampling");
  if (!jet_constant)
    verdict.notes.push_back("jet is not constant on sampled Sigma points");
  verdict.notes.push_back("no witness sequence found");
  return verdict;
}

}  // namespace lojet
