#ifndef LOJET_SCALAR_OPS_HPP
#define LOJET_SCALAR_OPS_HPP

#include <cmath>

#include "lojet/errors.hpp"

namespace lojet {

// The flat primitive exp(-1/u^2), extended by 0 at u = 0, and its first two
// derivatives. All derivatives vanish at 0; for small |u| the exponential
// underflows and the rounded-to-zero value is taken as exact.
inline double flat_value(double u) {
  if (u == 0.0) return 0.0;
  return std::exp(-1.0 / (u * u));
}

inline double flat_deriv1(double u) {
  if (u == 0.0) return 0.0;
  return 2.0 / (u * u * u) * flat_value(u);
}

inline double flat_deriv2(double u) {
  if (u == 0.0) return 0.0;
  const double u2 = u * u;
  return (4.0 / (u2 * u2 * u2) - 6.0 / (u2 * u2)) * flat_value(u);
}

// Generic scalar interface used by the templated expression evaluator.
// Overloads for dual numbers and truncated series live with their types.
inline double t_exp(double u) { return std::exp(u); }
inline double t_log(double u) {
  if (u <= 0.0) throw EvalError("log of nonpositive value");
  return std::log(u);
}
inline double t_sin(double u) { return std::sin(u); }
inline double t_cos(double u) { return std::cos(u); }
inline double t_sqrt(double u) {
  if (u < 0.0) throw EvalError("sqrt of negative value");
  return std::sqrt(u);
}
inline double t_flat(double u) { return flat_value(u); }

inline double t_pow(double u, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= u;
  return r;
}

inline double t_div(double a, double b) {
  if (b == 0.0) throw EvalError("division by zero");
  return a / b;
}

inline double constant_like(double, double v) { return v; }
inline double scalar_value(double v) { return v; }

}  // namespace lojet

#endif  // LOJET_SCALAR_OPS_HPP
