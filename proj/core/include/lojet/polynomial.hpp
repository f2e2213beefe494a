#ifndef LOJET_POLYNOMIAL_HPP
#define LOJET_POLYNOMIAL_HPP

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "lojet/errors.hpp"

namespace lojet {

using Point = Eigen::VectorXd;

// Exponent vector of one monomial. Length equals the ambient dimension.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(int n, int i);

  int order() const;  // |alpha|
  int dim() const { return static_cast<int>(exp_.size()); }
  int operator[](int i) const { return exp_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return exp_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exp_; }

  double factorial() const;  // alpha! as a double
  bool operator==(const MultiIndex& o) const { return exp_ == o.exp_; }

 private:
  std::vector<int> exp_;
};

// Graded lexicographic order; gives the canonical term ordering used in
// reports and the printer.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// Sparse multivariate polynomial over doubles, keyed by multi-index.
// Zero coefficients are never stored.
class SparsePolynomial {
 public:
  using TermMap = std::map<MultiIndex, double, GradedLex>;

  explicit SparsePolynomial(int n_vars = 1) : n_(n_vars) {}

  int n_vars() const { return n_; }
  bool empty() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  double coefficient(const MultiIndex& alpha) const;
  void set_coefficient(const MultiIndex& alpha, double c);
  void add_term(const MultiIndex& alpha, double c);

  int degree() const;      // -1 for the zero polynomial
  int min_degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;

  double evaluate(const Point& x) const;
  Eigen::VectorXd gradient_at(const Point& x) const;

  SparsePolynomial partial(int var) const;
  std::vector<SparsePolynomial> gradient() const;
  // Terms of total degree exactly d.
  SparsePolynomial homogeneous_part(int d) const;
  // Terms with lo <= |alpha| <= hi.
  SparsePolynomial slice(int lo, int hi) const;

  SparsePolynomial& operator+=(const SparsePolynomial& o);
  SparsePolynomial& operator-=(const SparsePolynomial& o);
  SparsePolynomial& operator*=(double s);
  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator*(SparsePolynomial a, double s) { return a *= s; }
  friend SparsePolynomial operator*(double s, SparsePolynomial a) { return a *= s; }
  SparsePolynomial multiply(const SparsePolynomial& o, int degree_cap = -1) const;

  double max_abs_coefficient() const;

  // Canonical text form: "c * x1^a1 * ... * xn^an" terms in graded-lex order.
  std::string to_string() const;

 private:
  int n_;
  TermMap terms_;
};

// The degree-r Taylor data of a function at `center`: base value f(center)
// kept separately, and a polynomial in displacement coordinates whose terms
// have order 1..r.
struct Jet {
  Point center;
  int degree = 0;
  double base_value = 0.0;
  SparsePolynomial poly;  // in (x - center), no constant term

  int n_vars() const { return poly.n_vars(); }
  // base_value + poly(x - center)
  double evaluate(const Point& x) const;
  Eigen::VectorXd gradient_at(const Point& x) const;
};

}  // namespace lojet

#endif  // LOJET_POLYNOMIAL_HPP
