#include "lojet/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace lojet {

Interval eval_on_box(const SparsePolynomial& p, const Box& box) {
  Interval sum = Interval::point(0.0);
  for (const auto& [alpha, c] : p.terms()) {
    Interval m = Interval::point(c);
    for (int i = 0; i < p.n_vars(); ++i)
      if (alpha[i] > 0) m = m * pow_int(box[static_cast<std::size_t>(i)], alpha[i]);
    sum = sum + m;
  }
  return sum;
}

namespace {

// ||x||^2 as a polynomial.
SparsePolynomial norm2_poly(int n) {
  SparsePolynomial s(n);
  for (int i = 0; i < n; ++i) {
    MultiIndex a = MultiIndex::zero(n);
    a[i] = 2;
    s.set_coefficient(a, 1.0);
  }
  return s;
}

// s^{k/2} for an interval enclosure of s = ||x||^2 >= 0.
Interval pow_half(const Interval& s, int k) {
  if (k % 2 == 0) return pow_int(s, k / 2);
  return pow_int(s, (k - 1) / 2) * sqrt(Interval{std::max(s.lo, 0.0), std::max(s.hi, 0.0)});
}

Box point_box(const Eigen::VectorXd& x) {
  Box b(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) b[static_cast<std::size_t>(i)] = Interval::point(x[i]);
  return b;
}

struct RatioProblem {
  SparsePolynomial p;
  SparsePolynomial s;
  std::vector<SparsePolynomial> mean_value_num;  // d/dx_i of p/s^{k/2}, numerator over s^{k/2+1}
  int k = 0;
  int n = 0;
  double inner2 = 0.0, outer2 = 0.0;

  RatioProblem(const SparsePolynomial& poly, int k_, double inner, double outer)
      : p(poly), s(norm2_poly(poly.n_vars())), k(k_), n(poly.n_vars()) {
    inner2 = inner * inner;
    outer2 = outer * outer;
    // Numerator of the quotient-rule gradient; the common factor s^{k/2-1}
    // is cancelled against the denominator, leaving
    //   H_i = dp/dx_i * s - (k/2) * p * ds/dx_i   over   s^{k/2 + 1}.
    for (int i = 0; i < n; ++i) {
      SparsePolynomial h = p.partial(i).multiply(s);
      h -= (0.5 * k) * p.multiply(s.partial(i));
      mean_value_num.push_back(std::move(h));
    }
  }

  // Rigorous value interval at a single annulus point.
  Interval value_at(const Eigen::VectorXd& x) const {
    const Box b = point_box(x);
    return eval_on_box(p, b) / pow_half(eval_on_box(s, b), k);
  }

  // Sound enclosure of the ratio over (box intersected with the annulus).
  Interval bound_on_box(const Box& box, const Interval& s_box) const {
    // Natural form; the denominator may be clipped to the annulus range
    // because only annulus points matter.
    const Interval s_clip = intersect_clip(s_box, inner2, outer2);
    Interval best = eval_on_box(p, box) / pow_half(s_clip, k);

    // Mean-value form around the midpoint; valid over the whole box, so it
    // needs the box itself to stay away from the origin.
    if (s_box.lo > 0.0) {
      Eigen::VectorXd m(n);
      for (int i = 0; i < n; ++i) m[i] = box[static_cast<std::size_t>(i)].mid();
      Interval total = value_at(m);
      const Interval den = pow_half(s_box, k + 2);
      for (int i = 0; i < n; ++i) {
        const Interval gi = eval_on_box(mean_value_num[static_cast<std::size_t>(i)], box) / den;
        const Interval di{down(box[static_cast<std::size_t>(i)].lo - m[i]),
                          up(box[static_cast<std::size_t>(i)].hi - m[i])};
        total = total + gi * di;
      }
      best = Interval{std::max(best.lo, total.lo), std::min(best.hi, total.hi)};
    }
    return best;
  }
};

struct Node {
  Box box;
  double lower;
  int depth;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const { return a.lower > b.lower; }
};

}  // namespace

RatioInfimum infimum_ratio_on_annulus(const SparsePolynomial& p, int k, double inner,
                                      double outer, const BnbConfig& config) {
  if (!(inner > 0.0) || !(outer > inner))
    throw DimensionError("annulus requires 0 < inner < outer");
  const int n = p.n_vars();
  RatioProblem problem(p, k, inner, outer);

  RatioInfimum result;
  result.upper = std::numeric_limits<double>::infinity();

  auto feasible_point = [&](const Box& box) -> Eigen::VectorXd {
    Eigen::VectorXd m(n);
    for (int i = 0; i < n; ++i) m[i] = box[static_cast<std::size_t>(i)].mid();
    double nm = m.norm();
    if (nm == 0.0) {
      m.setZero();
      m[0] = 0.5 * (inner + outer);
      return m;
    }
    const double target = std::clamp(nm, inner, outer);
    return m * (target / nm);
  };

  auto try_point = [&](const Eigen::VectorXd& y) {
    const Interval v = problem.value_at(y);
    if (v.hi < result.upper) {
      result.upper = v.hi;
      result.upper_witness = y;
    }
  };

  Box root(static_cast<std::size_t>(n), Interval{-outer, outer});
  try_point(feasible_point(root));

  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
  {
    const Interval s_root = eval_on_box(problem.s, root);
    queue.push({root, problem.bound_on_box(root, s_root).lo, 0});
  }

  const int max_depth = 2048;  // splits, not the dyadic radius sweep depth
  while (!queue.empty()) {
    const Node node = queue.top();
    result.lower = node.lower;
    const double gap = result.upper - result.lower;
    if (gap <= config.rel_gap * std::max(1.0, std::abs(result.upper))) {
      result.converged = true;
      break;
    }
    if (result.nodes >= config.max_nodes || node.depth >= max_depth) break;
    queue.pop();
    ++result.nodes;

    // Split the widest dimension.
    int dim = 0;
    double w = -1.0;
    for (int i = 0; i < n; ++i) {
      const double wi = node.box[static_cast<std::size_t>(i)].width();
      if (wi > w) {
        w = wi;
        dim = i;
      }
    }
    const double mid = node.box[static_cast<std::size_t>(dim)].mid();
    for (int half = 0; half < 2; ++half) {
      Box child = node.box;
      if (half == 0)
        child[static_cast<std::size_t>(dim)].hi = mid;
      else
        child[static_cast<std::size_t>(dim)].lo = mid;
      const Interval s_child = eval_on_box(problem.s, child);
      if (s_child.hi < problem.inner2 || s_child.lo > problem.outer2) continue;  // off-annulus
      try_point(feasible_point(child));
      const double lo = problem.bound_on_box(child, s_child).lo;
      if (lo > result.upper) continue;  // cannot contain the infimum
      queue.push({std::move(child), lo, node.depth + 1});
    }
    if (queue.empty()) {
      // Everything pruned against the incumbent: the infimum is the incumbent
      // up to the pruning threshold.
      result.lower = result.upper;
      result.converged = true;
      break;
    }
  }
  if (!queue.empty()) result.lower = std::min(result.lower, queue.top().lower);
  return result;
}

GradientLowerBound certified_gradient_lower_bound(const SparsePolynomial& T, int r,
                                                  double outer_radius, double inner_fraction,
                                                  const BnbConfig& config) {
  GradientLowerBound out;
  out.outer_radius = outer_radius;
  if (!(inner_fraction > 0.0 && inner_fraction < 1.0))
    throw DimensionError("inner_fraction must be in (0,1)");
  if (T.empty()) {
    out.reason = "zero polynomial";
    return out;
  }

  SparsePolynomial grad_sq(T.n_vars());
  for (const auto& gi : T.gradient()) grad_sq += gi.multiply(gi);
  const int k = 2 * (r - 1);

  out.homogeneous = T.is_homogeneous() && T.degree() == r;

  double worst_lower = std::numeric_limits<double>::infinity();
  double rho = outer_radius;
  const int sweeps = out.homogeneous ? 1 : config.depth_cap;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    RatioInfimum inf =
        infimum_ratio_on_annulus(grad_sq, k, inner_fraction * rho, rho, config);
    out.nodes += inf.nodes;
    out.gap = inf.upper - inf.lower;
    worst_lower = std::min(worst_lower, inf.lower);
    if (worst_lower <= 0.0) {
      out.reason = "interval bound not positive (gradient may vanish off center)";
      return out;
    }
    rho *= 0.5;
  }
  out.swept_radii_only = !out.homogeneous;
  out.certified = true;
  out.c = std::sqrt(worst_lower);
  return out;
}

SphereRange homogeneous_sphere_min(const SparsePolynomial& p, const BnbConfig& config) {
  SphereRange out;
  if (p.empty()) return out;
  RatioInfimum inf = infimum_ratio_on_annulus(p, p.degree(), 0.5, 1.0, config);
  out.min_lower = inf.lower;
  out.min_upper = inf.upper;
  out.converged = inf.converged;
  if (inf.upper_witness.size() > 0) {
    out.witness = inf.upper_witness;
    const double nm = out.witness.norm();
    if (nm > 0.0) out.witness /= nm;
  }
  return out;
}

}  // namespace lojet
