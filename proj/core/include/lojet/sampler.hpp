#ifndef LOJET_SAMPLER_HPP
#define LOJET_SAMPLER_HPP

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lojet/errors.hpp"

namespace lojet {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic sampler on shrinking shells around a center point.
// Each shell draws from its own generator seeded by (seed, shell index),
// so shells can be processed in any order with identical results.
class ShellSampler {
 public:
  ShellSampler(Eigen::VectorXd center, std::vector<double> radii, int samples_per_shell,
               std::uint64_t seed)
      : center_(std::move(center)),
        radii_(std::move(radii)),
        samples_per_shell_(samples_per_shell),
        seed_(seed) {
    if (radii_.empty()) throw DimensionError("radius list is empty");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      if (radii_[i] <= 0.0) throw DimensionError("radii must be positive");
      if (i > 0 && radii_[i] >= radii_[i - 1])
        throw DimensionError("radii must be strictly decreasing");
    }
    if (samples_per_shell_ < 1) throw DimensionError("samples_per_shell must be >= 1");
  }

  const Eigen::VectorXd& center() const { return center_; }
  const std::vector<double>& radii() const { return radii_; }
  int samples_per_shell() const { return samples_per_shell_; }
  std::uint64_t seed() const { return seed_; }
  int n_dims() const { return static_cast<int>(center_.size()); }

  // Uniform on the annulus rho/2 <= ||x - center|| <= rho.
  std::vector<Eigen::VectorXd> sample_annulus(std::size_t shell) const {
    return sample_impl(shell, /*on_sphere=*/false);
  }

  // On the sphere ||x - center|| = rho exactly; used for sup-style
  // remainder diagnostics at a fixed radius.
  std::vector<Eigen::VectorXd> sample_sphere(std::size_t shell) const {
    return sample_impl(shell, /*on_sphere=*/true);
  }

 private:
  Eigen::VectorXd center_;
  std::vector<double> radii_;
  int samples_per_shell_;
  std::uint64_t seed_;

  std::vector<Eigen::VectorXd> sample_impl(std::size_t shell, bool on_sphere) const {
    const double rho = radii_.at(shell);
    const int n = n_dims();
    std::mt19937_64 rng(splitmix64(seed_ ^ splitmix64(shell + 1)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(samples_per_shell_));
    for (int s = 0; s < samples_per_shell_; ++s) {
      Eigen::VectorXd dir(n);
      double norm2 = 0.0;
      do {
        for (int i = 0; i < n; ++i) dir[i] = normal(rng);
        norm2 = dir.squaredNorm();
      } while (norm2 == 0.0);
      dir /= std::sqrt(norm2);
      double rad = rho;
      if (!on_sphere) {
        // Volume-uniform radius on [rho/2, rho].
        const double lo = std::pow(0.5, n);
        rad = rho * std::pow(lo + unif(rng) * (1.0 - lo), 1.0 / n);
      }
      out.push_back(center_ + rad * dir);
    }
    return out;
  }
};

// Deterministic low-discrepancy lattice in the ball B_radius(center);
// used to seed the multi-start root finder.
std::vector<Eigen::VectorXd> halton_ball(const Eigen::VectorXd& center, double radius,
                                         int count);

}  // namespace lojet

#endif  // LOJET_SAMPLER_HPP
