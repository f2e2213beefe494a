#ifndef LOJET_DUAL_HPP
#define LOJET_DUAL_HPP

#include <Eigen/Core>
#include <cmath>

#include "lojet/scalar_ops.hpp"

namespace lojet {

// First-order forward-mode number: value and gradient.
struct Dual {
  double v = 0.0;
  Eigen::VectorXd g;

  Dual() = default;
  Dual(double value, Eigen::VectorXd grad) : v(value), g(std::move(grad)) {}
  static Dual constant(double value, int n) { return {value, Eigen::VectorXd::Zero(n)}; }
  static Dual variable(double value, int n, int i) {
    Dual d = constant(value, n);
    d.g[i] = 1.0;
    return d;
  }
};

inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.g + b.g}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.g - b.g}; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.g}; }
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.v * b.g + b.v * a.g};
}

inline Dual apply_unary(const Dual& u, double f0, double f1) { return {f0, f1 * u.g}; }

inline Dual t_div(const Dual& a, const Dual& b) {
  if (b.v == 0.0) throw EvalError("division by zero");
  const double inv = 1.0 / b.v;
  return {a.v * inv, inv * a.g - a.v * inv * inv * b.g};
}

inline Dual t_exp(const Dual& u) {
  const double e = std::exp(u.v);
  return apply_unary(u, e, e);
}
inline Dual t_log(const Dual& u) {
  if (u.v <= 0.0) throw EvalError("log of nonpositive value");
  return apply_unary(u, std::log(u.v), 1.0 / u.v);
}
inline Dual t_sin(const Dual& u) { return apply_unary(u, std::sin(u.v), std::cos(u.v)); }
inline Dual t_cos(const Dual& u) { return apply_unary(u, std::cos(u.v), -std::sin(u.v)); }
inline Dual t_sqrt(const Dual& u) {
  if (u.v < 0.0) throw EvalError("sqrt of negative value");
  if (u.v == 0.0) throw EvalError("sqrt not differentiable at zero");
  const double s = std::sqrt(u.v);
  return apply_unary(u, s, 0.5 / s);
}
inline Dual t_flat(const Dual& u) { return apply_unary(u, flat_value(u.v), flat_deriv1(u.v)); }

inline Dual t_pow(const Dual& u, int k) {
  if (k == 0) return Dual::constant(1.0, static_cast<int>(u.g.size()));
  // d/dx u^k = k u^{k-1} u'
  return apply_unary(u, t_pow(u.v, k), k * t_pow(u.v, k - 1));
}

inline Dual constant_like(const Dual& model, double v) {
  return Dual::constant(v, static_cast<int>(model.g.size()));
}
inline double scalar_value(const Dual& d) { return d.v; }

// Second-order forward-mode number: value, gradient and Hessian. The Hessian
// update formulas are symmetric term by term, so the stored matrix is
// bitwise symmetric by construction.
struct Dual2 {
  double v = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;

  Dual2() = default;
  Dual2(double value, Eigen::VectorXd grad, Eigen::MatrixXd hess)
      : v(value), g(std::move(grad)), h(std::move(hess)) {}
  static Dual2 constant(double value, int n) {
    return {value, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
  }
  static Dual2 variable(double value, int n, int i) {
    Dual2 d = constant(value, n);
    d.g[i] = 1.0;
    return d;
  }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.g, -a.h}; }

inline Dual2 operator*(const Dual2& a, const Dual2& b) {
  Eigen::MatrixXd h = a.v * b.h + b.v * a.h;
  const int n = static_cast<int>(a.g.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) += a.g[i] * b.g[j] + b.g[i] * a.g[j];
  return {a.v * b.v, a.v * b.g + b.v * a.g, std::move(h)};
}

inline Dual2 apply_unary(const Dual2& u, double f0, double f1, double f2) {
  Eigen::MatrixXd h = f1 * u.h;
  const int n = static_cast<int>(u.g.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) += f2 * u.g[i] * u.g[j];
  return {f0, f1 * u.g, std::move(h)};
}

inline Dual2 t_div(const Dual2& a, const Dual2& b) {
  if (b.v == 0.0) throw EvalError("division by zero");
  const double inv = 1.0 / b.v;
  return a * apply_unary(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Dual2 t_exp(const Dual2& u) {
  const double e = std::exp(u.v);
  return apply_unary(u, e, e, e);
}
inline Dual2 t_log(const Dual2& u) {
  if (u.v <= 0.0) throw EvalError("log of nonpositive value");
  const double inv = 1.0 / u.v;
  return apply_unary(u, std::log(u.v), inv, -inv * inv);
}
inline Dual2 t_sin(const Dual2& u) {
  return apply_unary(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v));
}
inline Dual2 t_cos(const Dual2& u) {
  return apply_unary(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v));
}
inline Dual2 t_sqrt(const Dual2& u) {
  if (u.v < 0.0) throw EvalError("sqrt of negative value");
  if (u.v == 0.0) throw EvalError("sqrt not differentiable at zero");
  const double s = std::sqrt(u.v);
  return apply_unary(u, s, 0.5 / s, -0.25 / (s * u.v));
}
inline Dual2 t_flat(const Dual2& u) {
  return apply_unary(u, flat_value(u.v), flat_deriv1(u.v), flat_deriv2(u.v));
}

inline Dual2 t_pow(const Dual2& u, int k) {
  if (k == 0) return Dual2::constant(1.0, static_cast<int>(u.g.size()));
  if (k == 1) return u;
  return apply_unary(u, t_pow(u.v, k), k * t_pow(u.v, k - 1),
                     static_cast<double>(k) * (k - 1) * t_pow(u.v, k - 2));
}

inline Dual2 constant_like(const Dual2& model, double v) {
  return Dual2::constant(v, static_cast<int>(model.g.size()));
}
inline double scalar_value(const Dual2& d) { return d.v; }

}  // namespace lojet

#endif  // LOJET_DUAL_HPP
