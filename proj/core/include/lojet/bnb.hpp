#ifndef LOJET_BNB_HPP
#define LOJET_BNB_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "lojet/interval.hpp"
#include "lojet/polynomial.hpp"

namespace lojet {

using Box = std::vector<Interval>;

// Interval enclosure of a polynomial over a box, term by term.
Interval eval_on_box(const SparsePolynomial& p, const Box& box);

struct BnbConfig {
  double rel_gap = 1e-12;     // stop when (upper - lower) <= rel_gap * max(1,|upper|)
  long max_nodes = 400000;
  int depth_cap = 48;         // dyadic radius sweep depth for non-homogeneous inputs
};

// Certified enclosure of inf p(x) / ||x||^k over the annulus
// inner <= ||x|| <= outer (centered at the origin). `lower` is a sound
// lower bound; `upper` is the rigorous value at `upper_witness`, a point
// of the annulus. Bounds combine the natural interval form with a
// mean-value form whose gradient numerator is expanded symbolically, so
// algebraic cancellations are exact.
struct RatioInfimum {
  double lower = 0.0;
  double upper = 0.0;
  Eigen::VectorXd upper_witness;
  bool converged = false;
  long nodes = 0;
};

RatioInfimum infimum_ratio_on_annulus(const SparsePolynomial& p, int k, double inner,
                                      double outer, const BnbConfig& config = {});

// Certified c with ||grad T(x)|| >= c ||x||^{r-1} on the covered radii,
// obtained from the infimum of ||grad T||^2 / ||x||^{2(r-1)}. For
// homogeneous T the annulus bound extends to every radius by scaling;
// otherwise dyadic sub-radii down to depth_cap are swept and the result is
// only certified on those.
struct GradientLowerBound {
  bool certified = false;
  double c = 0.0;
  double outer_radius = 0.0;
  bool homogeneous = false;
  bool swept_radii_only = false;
  double gap = 0.0;   // upper - lower of the last infimum enclosure
  long nodes = 0;
  std::string reason;  // set when not certified
};

GradientLowerBound certified_gradient_lower_bound(const SparsePolynomial& T, int r,
                                                  double outer_radius, double inner_fraction,
                                                  const BnbConfig& config = {});

// Certified range information for a homogeneous polynomial on the unit
// sphere: a sound lower bound of the minimum and a rigorous value at a
// witness point.
struct SphereRange {
  double min_lower = 0.0;
  double min_upper = 0.0;
  Eigen::VectorXd witness;
  bool converged = false;
};

SphereRange homogeneous_sphere_min(const SparsePolynomial& p, const BnbConfig& config = {});

}  // namespace lojet

#endif  // LOJET_BNB_HPP
