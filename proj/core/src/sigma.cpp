#include "lojet/sigma.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "lojet/sampler.hpp"

namespace lojet {

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

std::vector<Eigen::VectorXd> halton_ball(const Eigen::VectorXd& center, double radius,
                                         int count) {
  const int n = static_cast<int>(center.size());
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  int index = 1;
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i)
      p[i] = 2.0 * halton(index, kPrimes[i % 12]) - 1.0;
    ++index;
    if (p.norm() <= 1.0) out.push_back(center + radius * p);
    if (index > 1000 * count) break;  // degenerate high dimension; accept cube points
  }
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i)
      p[i] = (2.0 * halton(index, kPrimes[i % 12]) - 1.0) / std::sqrt(static_cast<double>(n));
    ++index;
    out.push_back(center + radius * p);
  }
  return out;
}

CriticalCloud estimate_critical_set(const Expression& e, const Eigen::VectorXd& center,
                                    double radius, int n_starts, double tol) {
  CriticalCloud cloud;
  const int n = e.n_vars();
  const double dedup = 10.0 * tol;

  auto grad_norm = [&](const Eigen::VectorXd& x) { return e.gradient(x).norm(); };

  auto try_add = [&](const Eigen::VectorXd& x) {
    if ((x - center).norm() > radius) return;
    if (grad_norm(x) > tol) return;
    for (const auto& p : cloud.points)
      if ((p - x).norm() <= dedup) return;
    cloud.points.push_back(x);
  };

  // Center first so it survives deduplication.
  try_add(center);

  auto starts = halton_ball(center, radius, n_starts);
  bool any_converged = !cloud.points.empty();
  for (const auto& start : starts) {
    Eigen::VectorXd x = start;
    bool ok = false;
    for (int iter = 0; iter < 250; ++iter) {
      Eigen::VectorXd g;
      try {
        g = e.gradient(x);
      } catch (const EvalError&) {
        break;
      }
      // Do not stop at the gradient tolerance: at a degenerate critical
      // point the gradient is flat and that criterion is met far from the
      // root. Keep polishing until the Newton step itself is negligible.
      if (g.norm() <= tol) ok = true;
      if (g.norm() == 0.0) break;
      Eigen::VectorXd step;
      bool have_newton = false;
      try {
        Eigen::MatrixXd h = e.hessian(x);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
        if (lu.isInvertible()) {
          step = lu.solve(-g);
          have_newton = true;
        }
      } catch (const EvalError&) {
      }
      if (!have_newton) {
        // Descent on ||grad f||^2: direction -H g, or -g as a last resort.
        try {
          Eigen::MatrixXd h = e.hessian(x);
          step = -h * g;
        } catch (const EvalError&) {
          step = -g;
        }
        const double sn = step.norm();
        if (sn > 0.25 * radius) step *= 0.25 * radius / sn;
      }
      // Backtracking on ||grad f||^2.
      const double phi0 = g.squaredNorm();
      double t = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 30; ++bt) {
        Eigen::VectorXd cand = x + t * step;
        double phi;
        try {
          phi = e.gradient(cand).squaredNorm();
        } catch (const EvalError&) {
          t *= 0.5;
          continue;
        }
        if (phi < phi0) {
          x = cand;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
      if ((x - center).norm() > 2.0 * radius) break;
      if (ok && (t * step).norm() <= 1e-13 * std::max(1.0, x.norm())) break;
    }
    if (ok) {
      any_converged = true;
      try_add(x);
    }
  }
  cloud.warning_no_convergence = !any_converged;
  return cloud;
}

SigmaSet SigmaSet::singleton(Eigen::VectorXd point) {
  SigmaSet s(Kind::Singleton, static_cast<int>(point.size()));
  s.offset_ = std::move(point);
  return s;
}

SigmaSet SigmaSet::affine(Eigen::VectorXd offset, Eigen::MatrixXd basis) {
  if (basis.rows() != offset.size())
    throw DimensionError("affine basis row count must match ambient dimension");
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(basis.cols(), basis.cols());
  if ((gram - id).cwiseAbs().maxCoeff() > 1e-12)
    throw DimensionError("affine basis must be orthonormal");
  SigmaSet s(Kind::Affine, static_cast<int>(offset.size()));
  s.offset_ = std::move(offset);
  s.basis_ = std::move(basis);
  return s;
}

SigmaSet SigmaSet::point_cloud(std::vector<Eigen::VectorXd> points) {
  if (points.empty()) throw DimensionError("point cloud must be nonempty");
  SigmaSet s(Kind::PointCloud, static_cast<int>(points.front().size()));
  s.cloud_ = std::move(points);
  return s;
}

SigmaSet SigmaSet::critical_set(Expression source, Eigen::VectorXd center, double ball_radius,
                                int n_starts, double tol) {
  if (ball_radius <= 0.0) throw DimensionError("ball radius must be positive");
  SigmaSet s(Kind::CriticalSet, static_cast<int>(center.size()));
  s.source_ = std::move(source);
  s.offset_ = std::move(center);
  s.ball_radius_ = ball_radius;
  s.n_starts_ = n_starts;
  s.tol_ = tol;
  return s;
}

void SigmaSet::resolve() {
  if (kind_ != Kind::CriticalSet || resolved_) return;
  CriticalCloud cloud = estimate_critical_set(*source_, offset_, ball_radius_, n_starts_, tol_);
  cloud_ = std::move(cloud.points);
  resolve_warning_ = cloud.warning_no_convergence;
  resolved_ = true;
}

double SigmaSet::distance(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw DimensionError("point dimension mismatch");
  switch (kind_) {
    case Kind::Singleton:
      return (x - offset_).norm();
    case Kind::Affine: {
      const Eigen::VectorXd d = x - offset_;
      return (d - basis_ * (basis_.transpose() * d)).norm();
    }
    case Kind::PointCloud:
    case Kind::CriticalSet: {
      if (kind_ == Kind::CriticalSet && !resolved_)
        throw DimensionError("critical-set Sigma queried before resolve()");
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : cloud_) best = std::min(best, (x - p).norm());
      return best;
    }
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<Eigen::VectorXd> SigmaSet::sample_near(const Eigen::VectorXd& x, double radius,
                                                   int max_points) const {
  std::vector<Eigen::VectorXd> out;
  switch (kind_) {
    case Kind::Singleton:
      if ((x - offset_).norm() <= radius) out.push_back(offset_);
      break;
    case Kind::Affine: {
      // Deterministic Halton samples in subspace coordinates around the
      // projection of x.
      const int k = static_cast<int>(basis_.cols());
      const Eigen::VectorXd proj_coords = basis_.transpose() * (x - offset_);
      const Eigen::VectorXd foot = offset_ + basis_ * proj_coords;
      if ((x - foot).norm() > radius) break;
      out.push_back(foot);
      int index = 1;
      while (static_cast<int>(out.size()) < max_points && index < 100 * max_points) {
        Eigen::VectorXd c(k);
        for (int i = 0; i < k; ++i)
          c[i] = (2.0 * halton(index, kPrimes[i % 12]) - 1.0) * radius;
        ++index;
        Eigen::VectorXd p = foot + basis_ * c;
        if ((p - x).norm() <= radius) out.push_back(p);
      }
      break;
    }
    case Kind::PointCloud:
    case Kind::CriticalSet:
      for (const auto& p : cloud_) {
        if ((p - x).norm() <= radius) out.push_back(p);
        if (static_cast<int>(out.size()) >= max_points) break;
      }
      break;
  }
  return out;
}

std::string SigmaSet::describe() const {
  switch (kind_) {
    case Kind::Singleton: return "singleton";
    case Kind::Affine: return "affine(dim " + std::to_string(basis_.cols()) + ")";
    case Kind::PointCloud: return "cloud(" + std::to_string(cloud_.size()) + " points)";
    case Kind::CriticalSet:
      return resolved_ ? "critical(resolved, " + std::to_string(cloud_.size()) + " points)"
                       : "critical(unresolved)";
  }
  return "?";
}

SigmaCoverage validate_sigma_covers_critical(const Expression& e, const SigmaSet& sigma,
                                             const Eigen::VectorXd& center, double radius,
                                             int n_starts, double tol) {
  SigmaCoverage result;
  CriticalCloud cloud = estimate_critical_set(e, center, radius, n_starts, tol);
  result.warning_no_convergence = cloud.warning_no_convergence;
  for (const auto& p : cloud.points) {
    if (sigma.distance(p) > 10.0 * tol) {
      result.covered = false;
      result.violations.push_back(p);
    }
  }
  return result;
}

}  // namespace lojet
