#ifndef LOJET_SERIES_HPP
#define LOJET_SERIES_HPP

#include "lojet/polynomial.hpp"
#include "lojet/scalar_ops.hpp"

namespace lojet {

// Multivariate power series truncated at total degree `cap`. This is the
// Taylor-mode arithmetic used to extract jets of any order through the
// expression tree. Unlike Jet, the constant term is part of the table.
class TruncatedSeries {
 public:
  TruncatedSeries() : cap_(0), poly_(1) {}
  TruncatedSeries(int n_vars, int cap) : cap_(cap), poly_(n_vars) {}

  static TruncatedSeries constant(int n_vars, int cap, double v);
  // The series z_i + (x_i - z_i): constant term plus the i-th displacement.
  static TruncatedSeries variable(int n_vars, int cap, int i, double center_value);

  int n_vars() const { return poly_.n_vars(); }
  int cap() const { return cap_; }
  double constant_term() const { return poly_.coefficient(MultiIndex::zero(n_vars())); }
  double coefficient(const MultiIndex& alpha) const { return poly_.coefficient(alpha); }
  const SparsePolynomial& table() const { return poly_; }

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(const TruncatedSeries& a);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  // sum_m f_m * (this - constant)^m with f_m = f^(m)(constant)/m!.
  TruncatedSeries compose_unary(const std::vector<double>& outer_coeffs) const;

 private:
  int cap_;
  SparsePolynomial poly_;

  friend TruncatedSeries t_div(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries t_exp(const TruncatedSeries& u);
  friend TruncatedSeries t_log(const TruncatedSeries& u);
  friend TruncatedSeries t_sin(const TruncatedSeries& u);
  friend TruncatedSeries t_cos(const TruncatedSeries& u);
  friend TruncatedSeries t_sqrt(const TruncatedSeries& u);
  friend TruncatedSeries t_flat(const TruncatedSeries& u);
  friend TruncatedSeries t_pow(const TruncatedSeries& u, int k);
};

TruncatedSeries t_div(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries t_exp(const TruncatedSeries& u);
TruncatedSeries t_log(const TruncatedSeries& u);
TruncatedSeries t_sin(const TruncatedSeries& u);
TruncatedSeries t_cos(const TruncatedSeries& u);
TruncatedSeries t_sqrt(const TruncatedSeries& u);
TruncatedSeries t_flat(const TruncatedSeries& u);
TruncatedSeries t_pow(const TruncatedSeries& u, int k);

inline TruncatedSeries constant_like(const TruncatedSeries& model, double v) {
  return TruncatedSeries::constant(model.n_vars(), model.cap(), v);
}
inline double scalar_value(const TruncatedSeries& s) { return s.constant_term(); }

}  // namespace lojet

#endif  // LOJET_SERIES_HPP
