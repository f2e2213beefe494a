#include "lojet/jet.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "lojet/series.hpp"

namespace lojet {

namespace {

void enumerate_monomials(int n, int degree, std::vector<int>& scratch, int var,
                         std::vector<MultiIndex>& out) {
  if (var == n - 1) {
    scratch[static_cast<std::size_t>(var)] = degree;
    out.emplace_back(scratch);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    scratch[static_cast<std::size_t>(var)] = e;
    enumerate_monomials(n, degree - e, scratch, var + 1, out);
  }
}

std::vector<MultiIndex> monomials_of_degree(int n, int degree) {
  std::vector<MultiIndex> out;
  std::vector<int> scratch(static_cast<std::size_t>(n), 0);
  enumerate_monomials(n, degree, scratch, 0, out);
  return out;
}

Jet taylor_jet_direct(const Expression& e, const Eigen::VectorXd& z, int r) {
  const int n = e.n_vars();
  std::vector<TruncatedSeries> vars;
  vars.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vars.push_back(TruncatedSeries::variable(n, r, i, z[i]));
  TruncatedSeries result = eval_expression(e, vars);

  Jet jet;
  jet.center = z;
  jet.degree = r;
  jet.base_value = result.constant_term();
  jet.poly = SparsePolynomial(n);
  for (const auto& [alpha, c] : result.table().terms())
    if (alpha.order() >= 1) jet.poly.set_coefficient(alpha, c);
  return jet;
}

Jet taylor_jet_directional(const Expression& e, const Eigen::VectorXd& z, int r) {
  const int n = e.n_vars();

  std::vector<std::vector<MultiIndex>> monomials(static_cast<std::size_t>(r) + 1);
  std::size_t max_count = 1;
  for (int j = 1; j <= r; ++j) {
    monomials[static_cast<std::size_t>(j)] = monomials_of_degree(n, j);
    max_count = std::max(max_count, monomials[static_cast<std::size_t>(j)].size());
  }
  const int n_dirs = static_cast<int>(max_count) + 8;

  // Deterministic direction lattice.
  std::mt19937_64 rng(0x6a0b1c2d3e4f5a6bULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(static_cast<std::size_t>(n_dirs));
  for (int k = 0; k < n_dirs; ++k) {
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d[i] = normal(rng);
    d.normalize();
    dirs.push_back(d);
  }

  // Univariate coefficient of t^j along direction d is
  // sum_{|alpha| = j} c_alpha d^alpha.
  Eigen::MatrixXd uni(n_dirs, r + 1);
  double base_value = 0.0;
  for (int k = 0; k < n_dirs; ++k) {
    std::vector<TruncatedSeries> vars;
    vars.reserve(static_cast<std::size_t>(n));
    TruncatedSeries t = TruncatedSeries::variable(1, r, 0, 0.0);
    for (int i = 0; i < n; ++i) {
      TruncatedSeries vi = TruncatedSeries::constant(1, r, dirs[static_cast<std::size_t>(k)][i]) * t;
      vi += TruncatedSeries::constant(1, r, z[i]);
      vars.push_back(vi);
    }
    TruncatedSeries s = eval_expression(e, vars);
    for (int j = 0; j <= r; ++j) {
      std::vector<int> mono{j};
      uni(k, j) = s.coefficient(MultiIndex(std::move(mono)));
    }
    if (k == 0) base_value = uni(0, 0);
  }

  Jet jet;
  jet.center = z;
  jet.degree = r;
  jet.base_value = base_value;
  jet.poly = SparsePolynomial(n);
  for (int j = 1; j <= r; ++j) {
    const auto& monos = monomials[static_cast<std::size_t>(j)];
    const int m = static_cast<int>(monos.size());
    Eigen::MatrixXd A(n_dirs, m);
    for (int k = 0; k < n_dirs; ++k)
      for (int col = 0; col < m; ++col) {
        double p = 1.0;
        for (int i = 0; i < n; ++i)
          for (int q = 0; q < monos[static_cast<std::size_t>(col)][i]; ++q)
            p *= dirs[static_cast<std::size_t>(k)][i];
        A(k, col) = p;
      }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(uni.col(j));
    for (int col = 0; col < m; ++col)
      if (c[col] != 0.0) jet.poly.set_coefficient(monos[static_cast<std::size_t>(col)], c[col]);
  }
  return jet;
}

}  // namespace

Jet taylor_jet(const Expression& e, const Eigen::VectorXd& z, int r) {
  if (z.size() != e.n_vars()) throw DimensionError("center dimension mismatch");
  if (r < 1) throw DimensionError("jet degree must be positive");
  if (e.n_vars() <= 3) return taylor_jet_direct(e, z, r);
  return taylor_jet_directional(e, z, r);
}

std::vector<RemainderShell> remainder_ratio(const Expression& e, const Jet& jet,
                                            const std::vector<double>& radii,
                                            int samples_per_shell, std::uint64_t seed) {
  ShellSampler sampler(jet.center, radii, samples_per_shell, seed);
  const int r = jet.degree;
  std::vector<RemainderShell> out;
  for (std::size_t shell = 0; shell < radii.size(); ++shell) {
    RemainderShell rs;
    rs.radius = radii[shell];
    for (const auto& x : sampler.sample_sphere(shell)) {
      const double d = (x - jet.center).norm();
      double fx, remainder;
      Eigen::VectorXd gfx;
      try {
        fx = e.evaluate(x);
        gfx = e.gradient(x);
      } catch (const EvalError&) {
        continue;
      }
      remainder = fx - jet.evaluate(x);
      const Eigen::VectorXd grad_rem = gfx - jet.gradient_at(x);
      rs.max_value_ratio = std::max(rs.max_value_ratio, std::abs(remainder) / std::pow(d, r));
      rs.max_gradient_ratio =
          std::max(rs.max_gradient_ratio, grad_rem.norm() / std::pow(d, r - 1));
      ++rs.samples;
    }
    out.push_back(rs);
  }
  return out;
}

FlatnessReport flatness_check(const Expression& g, const SigmaSet& sigma,
                              const Eigen::VectorXd& x_bar, int r,
                              const std::vector<double>& radii, int samples_per_shell,
                              std::uint64_t seed, double coeff_tol) {
  if (radii.empty()) throw DimensionError("radius list is empty");
  FlatnessReport report;

  // Jet coefficients (and the value itself) of g must vanish at Sigma
  // points near x_bar.
  const double probe_radius = radii.front();
  report.tested_sigma_points = sigma.sample_near(x_bar, probe_radius, 25);
  if (report.tested_sigma_points.empty() && sigma.distance(x_bar) <= probe_radius)
    report.tested_sigma_points.push_back(x_bar);
  report.in_class = !report.tested_sigma_points.empty();
  for (const auto& z : report.tested_sigma_points) {
    Jet jz = taylor_jet(g, z, r);
    double max_c = std::abs(jz.base_value);
    max_c = std::max(max_c, jz.poly.max_abs_coefficient());
    report.max_jet_coefficient = std::max(report.max_jet_coefficient, max_c);
    if (max_c > coeff_tol) report.in_class = false;
  }

  ShellSampler sampler(x_bar, radii, samples_per_shell, seed);
  for (std::size_t shell = 0; shell < radii.size(); ++shell) {
    FlatnessShell fs;
    fs.radius = radii[shell];
    int used = 0;
    for (const auto& x : sampler.sample_annulus(shell)) {
      const double d = sigma.distance(x);
      if (!(d > 0.0) || !std::isfinite(d)) continue;
      try {
        fs.sup_value_ratio =
            std::max(fs.sup_value_ratio, std::abs(g.evaluate(x)) / std::pow(d, r));
        fs.sup_gradient_ratio =
            std::max(fs.sup_gradient_ratio, g.gradient(x).norm() / std::pow(d, r - 1));
      } catch (const EvalError&) {
        continue;
      }
      ++used;
    }
    fs.empty = (used == 0);
    report.sigma_empty_in_shell.push_back(fs.empty);
    report.shells.push_back(fs);
  }
  return report;
}

}  // namespace lojet
