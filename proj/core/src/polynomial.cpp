#include "lojet/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lojet {

MultiIndex::MultiIndex(std::vector<int> exponents) : exp_(std::move(exponents)) {
  for (int e : exp_) {
    if (e < 0) throw DimensionError("negative exponent in multi-index");
  }
}

MultiIndex MultiIndex::unit(int n, int i) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(exp_.begin(), exp_.end(), 0); }

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exp_)
    for (int k = 2; k <= e; ++k) f *= k;
  return f;
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  return a.exponents() < b.exponents();
}

double SparsePolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

void SparsePolynomial::set_coefficient(const MultiIndex& alpha, double c) {
  if (alpha.dim() != n_) throw DimensionError("multi-index dimension mismatch");
  if (c == 0.0)
    terms_.erase(alpha);
  else
    terms_[alpha] = c;
}

void SparsePolynomial::add_term(const MultiIndex& alpha, double c) {
  if (alpha.dim() != n_) throw DimensionError("multi-index dimension mismatch");
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

int SparsePolynomial::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.order();
}

int SparsePolynomial::min_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.order();
}

bool SparsePolynomial::is_homogeneous() const {
  return terms_.empty() || degree() == min_degree();
}

double SparsePolynomial::evaluate(const Point& x) const {
  if (x.size() != n_) throw DimensionError("point dimension mismatch");
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double m = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < alpha[i]; ++k) m *= x[i];
    sum += m;
  }
  return sum;
}

Eigen::VectorXd SparsePolynomial::gradient_at(const Point& x) const {
  Eigen::VectorXd g(n_);
  for (int i = 0; i < n_; ++i) g[i] = partial(i).evaluate(x);
  return g;
}

SparsePolynomial SparsePolynomial::partial(int var) const {
  SparsePolynomial d(n_);
  for (const auto& [alpha, c] : terms_) {
    const int e = alpha[var];
    if (e == 0) continue;
    MultiIndex beta = alpha;
    beta[var] = e - 1;
    d.add_term(beta, c * e);
  }
  return d;
}

std::vector<SparsePolynomial> SparsePolynomial::gradient() const {
  std::vector<SparsePolynomial> g;
  g.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) g.push_back(partial(i));
  return g;
}

SparsePolynomial SparsePolynomial::homogeneous_part(int d) const { return slice(d, d); }

SparsePolynomial SparsePolynomial::slice(int lo, int hi) const {
  SparsePolynomial out(n_);
  for (const auto& [alpha, c] : terms_) {
    const int o = alpha.order();
    if (o >= lo && o <= hi) out.set_coefficient(alpha, c);
  }
  return out;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
  if (o.n_ != n_) throw DimensionError("polynomial dimension mismatch");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) {
  if (o.n_ != n_) throw DimensionError("polynomial dimension mismatch");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, c] : terms_) c *= s;
  return *this;
}

SparsePolynomial SparsePolynomial::multiply(const SparsePolynomial& o, int degree_cap) const {
  if (o.n_ != n_) throw DimensionError("polynomial dimension mismatch");
  SparsePolynomial out(n_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      MultiIndex s = a;
      for (int i = 0; i < n_; ++i) s[i] += b[i];
      if (degree_cap >= 0 && s.order() > degree_cap) continue;
      out.add_term(s, ca * cb);
    }
  }
  return out;
}

double SparsePolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < n_; ++i) {
      if (alpha[i] == 0) continue;
      os << " * x" << (i + 1);
      if (alpha[i] > 1) os << "^" << alpha[i];
    }
  }
  return os.str();
}

double Jet::evaluate(const Point& x) const {
  return base_value + poly.evaluate(x - center);
}

Eigen::VectorXd Jet::gradient_at(const Point& x) const {
  return poly.gradient_at(x - center);
}

}  // namespace lojet
