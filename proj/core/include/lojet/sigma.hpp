#ifndef LOJET_SIGMA_HPP
#define LOJET_SIGMA_HPP

#include <Eigen/Core>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lojet/expr.hpp"

namespace lojet {

// Result of the multi-start search for {grad f = 0} inside a ball.
struct CriticalCloud {
  std::vector<Eigen::VectorXd> points;
  bool warning_no_convergence = false;
};

CriticalCloud estimate_critical_set(const Expression& e, const Eigen::VectorXd& center,
                                    double radius, int n_starts, double tol);

// The reference set Sigma. Distances are exact for Singleton and Affine,
// a min over points for clouds. A CriticalSet variant resolves to a point
// cloud once, before the first distance query, and is read-only afterwards.
class SigmaSet {
 public:
  enum class Kind { Singleton, Affine, PointCloud, CriticalSet };

  static SigmaSet singleton(Eigen::VectorXd point);
  // `basis` columns must be orthonormal (checked to 1e-12).
  static SigmaSet affine(Eigen::VectorXd offset, Eigen::MatrixXd basis);
  static SigmaSet point_cloud(std::vector<Eigen::VectorXd> points);
  static SigmaSet critical_set(Expression source, Eigen::VectorXd center, double ball_radius,
                               int n_starts = 64, double tol = 1e-10);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool resolved() const { return kind_ != Kind::CriticalSet || resolved_; }

  // Runs the critical-set estimation and freezes the cloud. Idempotent.
  void resolve();

  // dist(x, Sigma); infinity for an empty resolved cloud.
  double distance(const Eigen::VectorXd& x) const;

  const Eigen::VectorXd& singleton_point() const { return offset_; }
  const Eigen::VectorXd& affine_offset() const { return offset_; }
  const Eigen::MatrixXd& affine_basis() const { return basis_; }
  const std::vector<Eigen::VectorXd>& cloud() const { return cloud_; }
  bool resolve_warning() const { return resolve_warning_; }
  double critical_ball_radius() const { return ball_radius_; }
  const std::optional<Expression>& source() const { return source_; }

  // Points of Sigma within `radius` of `x`, for jet-constancy and flatness
  // probes. Affine subspaces are sampled deterministically.
  std::vector<Eigen::VectorXd> sample_near(const Eigen::VectorXd& x, double radius,
                                           int max_points) const;

  std::string describe() const;

 private:
  SigmaSet(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  Eigen::VectorXd offset_;
  Eigen::MatrixXd basis_;
  std::vector<Eigen::VectorXd> cloud_;
  std::optional<Expression> source_;
  double ball_radius_ = 0.0;
  int n_starts_ = 64;
  double tol_ = 1e-10;
  bool resolved_ = false;
  bool resolve_warning_ = false;
};

struct SigmaCoverage {
  bool covered = true;
  std::vector<Eigen::VectorXd> violations;
  bool warning_no_convergence = false;
};

// Checks the standing assumption that every critical point found in the
// ball lies on Sigma (within 10*tol).
SigmaCoverage validate_sigma_covers_critical(const Expression& e, const SigmaSet& sigma,
                                             const Eigen::VectorXd& center, double radius,
                                             int n_starts, double tol = 1e-10);

}  // namespace lojet

#endif  // LOJET_SIGMA_HPP
