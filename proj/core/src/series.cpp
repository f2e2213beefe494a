#include "lojet/series.hpp"

#include <cmath>

namespace lojet {

TruncatedSeries TruncatedSeries::constant(int n_vars, int cap, double v) {
  TruncatedSeries s(n_vars, cap);
  s.poly_.set_coefficient(MultiIndex::zero(n_vars), v);
  return s;
}

TruncatedSeries TruncatedSeries::variable(int n_vars, int cap, int i, double center_value) {
  TruncatedSeries s(n_vars, cap);
  s.poly_.set_coefficient(MultiIndex::zero(n_vars), center_value);
  if (cap >= 1) s.poly_.set_coefficient(MultiIndex::unit(n_vars, i), 1.0);
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  poly_ += o.poly_;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  poly_ -= o.poly_;
  return *this;
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  TruncatedSeries out = a;
  out.poly_ *= -1.0;
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out(a.n_vars(), a.cap_);
  out.poly_ = a.poly_.multiply(b.poly_, a.cap_);
  return out;
}

TruncatedSeries TruncatedSeries::compose_unary(const std::vector<double>& outer_coeffs) const {
  // Horner over the zero-constant part: f_0 + u~ (f_1 + u~ (f_2 + ...)).
  TruncatedSeries tilde = *this;
  tilde.poly_.set_coefficient(MultiIndex::zero(n_vars()), 0.0);
  TruncatedSeries acc = TruncatedSeries::constant(n_vars(), cap_, 0.0);
  for (auto it = outer_coeffs.rbegin(); it != outer_coeffs.rend(); ++it) {
    acc = acc * tilde;
    acc += TruncatedSeries::constant(n_vars(), cap_, *it);
  }
  return acc;
}

TruncatedSeries t_div(const TruncatedSeries& a, const TruncatedSeries& b) {
  const double b0 = b.constant_term();
  if (b0 == 0.0) throw EvalError("division by zero");
  // 1/b via the Taylor coefficients of 1/u at b0.
  std::vector<double> coeffs(static_cast<std::size_t>(b.cap()) + 1);
  double c = 1.0 / b0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    coeffs[m] = c;
    c *= -1.0 / b0;
  }
  return a * b.compose_unary(coeffs);
}

TruncatedSeries t_exp(const TruncatedSeries& u) {
  const double e = std::exp(u.constant_term());
  std::vector<double> coeffs(static_cast<std::size_t>(u.cap()) + 1);
  double c = e;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    coeffs[m] = c;
    c /= static_cast<double>(m + 1);
  }
  return u.compose_unary(coeffs);
}

TruncatedSeries t_log(const TruncatedSeries& u) {
  const double u0 = u.constant_term();
  if (u0 <= 0.0) throw EvalError("log of nonpositive value");
  std::vector<double> coeffs(static_cast<std::size_t>(u.cap()) + 1);
  coeffs[0] = std::log(u0);
  double p = 1.0;  // (-1)^{m+1} / u0^m
  for (std::size_t m = 1; m < coeffs.size(); ++m) {
    p /= -u0;
    coeffs[m] = -p / static_cast<double>(m);
  }
  return u.compose_unary(coeffs);
}

TruncatedSeries t_sin(const TruncatedSeries& u) {
  const double u0 = u.constant_term();
  const double s = std::sin(u0), c = std::cos(u0);
  std::vector<double> coeffs(static_cast<std::size_t>(u.cap()) + 1);
  const double cycle[4] = {s, c, -s, -c};
  double fact = 1.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (m > 0) fact *= static_cast<double>(m);
    coeffs[m] = cycle[m % 4] / fact;
  }
  return u.compose_unary(coeffs);
}

TruncatedSeries t_cos(const TruncatedSeries& u) {
  const double u0 = u.constant_term();
  const double s = std::sin(u0), c = std::cos(u0);
  std::vector<double> coeffs(static_cast<std::size_t>(u.cap()) + 1);
  const double cycle[4] = {c, -s, -c, s};
  double fact = 1.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (m > 0) fact *= static_cast<double>(m);
    coeffs[m] = cycle[m % 4] / fact;
  }
  return u.compose_unary(coeffs);
}

TruncatedSeries t_sqrt(const TruncatedSeries& u) {
  const double u0 = u.constant_term();
  if (u0 < 0.0) throw EvalError("sqrt of negative value");
  if (u0 == 0.0) throw EvalError("sqrt series undefined at zero");
  std::vector<double> coeffs(static_cast<std::size_t>(u.cap()) + 1);
  double c = std::sqrt(u0);
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    coeffs[m] = c;
    // binom(1/2, m+1)/binom(1/2, m) = (1/2 - m)/(m+1), divided by u0.
    c *= (0.5 - static_cast<double>(m)) / (static_cast<double>(m + 1) * u0);
  }
  return u.compose_unary(coeffs);
}

TruncatedSeries t_flat(const TruncatedSeries& u) {
  const double u0 = u.constant_term();
  // Centered where the argument vanishes, flat contributes the zero series:
  // the composition with any smooth zero-constant inner series is flat too.
  if (u0 == 0.0) return TruncatedSeries::constant(u.n_vars(), u.cap(), 0.0);
  return t_exp(-t_div(TruncatedSeries::constant(u.n_vars(), u.cap(), 1.0), u * u));
}

TruncatedSeries t_pow(const TruncatedSeries& u, int k) {
  TruncatedSeries out = TruncatedSeries::constant(u.n_vars(), u.cap(), 1.0);
  TruncatedSeries base = u;
  int e = k;
  while (e > 0) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return out;
}

}  // namespace lojet
