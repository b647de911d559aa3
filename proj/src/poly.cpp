#include "diracqes/poly.hpp"

#include <algorithm>
#include <cmath>

namespace diracqes {

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int k, double c) {
  if (k < 0 || c == 0.0) return {};
  std::vector<double> v(k + 1, 0.0);
  v[k] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Poly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[k];
}

double Poly::eval(double t) const {
  double s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

Poly Poly::derivative() const {
  if (c_.size() < 2) return {};
  std::vector<double> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Poly(std::move(d));
}

Poly Poly::of_square() const {
  if (c_.empty()) return {};
  std::vector<double> v(2 * c_.size() - 1, 0.0);
  for (size_t k = 0; k < c_.size(); ++k) v[2 * k] = c_[k];
  return Poly(std::move(v));
}

Poly Poly::trimmed(double tol) const {
  const double cut = tol * max_abs();
  std::vector<double> v = c_;
  for (double& x : v)
    if (std::abs(x) <= cut) x = 0.0;
  return Poly(std::move(v));
}

double Poly::max_abs() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& x : c_) x *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> v(a.c_.size() + b.c_.size() - 1, 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Laurent::Laurent(double constant) { add_term(0, constant); }

Laurent Laurent::monomial(int k, double c) {
  Laurent l;
  l.add_term(k, c);
  return l;
}

Laurent Laurent::from_poly(const Poly& p) {
  Laurent l;
  for (int k = 0; k <= p.degree(); ++k) l.add_term(k, p[k]);
  return l;
}

void Laurent::add_term(int k, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Laurent::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? 0.0 : it->second;
}

double Laurent::eval(double t) const {
  double s = 0.0;
  for (auto [k, c] : terms_) s += c * std::pow(t, k);
  return s;
}

Laurent Laurent::derivative() const {
  Laurent d;
  for (auto [k, c] : terms_)
    if (k != 0) d.add_term(k - 1, k * c);
  return d;
}

Laurent Laurent::shifted(int k) const {
  Laurent s;
  for (auto [p, c] : terms_) s.terms_.emplace(p + k, c);
  return s;
}

Laurent Laurent::pruned(double tol) const {
  Laurent p;
  for (auto [k, c] : terms_)
    if (std::abs(c) > tol) p.terms_.emplace(k, c);
  return p;
}

double Laurent::max_abs() const {
  double m = 0.0;
  for (auto [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Poly Laurent::polynomial_part() const {
  if (terms_.empty() || max_power() < 0) return {};
  std::vector<double> v(max_power() + 1, 0.0);
  for (auto [k, c] : terms_)
    if (k >= 0) v[k] = c;
  return Poly(std::move(v));
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (auto [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (auto [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Laurent& Laurent::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (auto [i, ci] : a.terms_)
    for (auto [j, cj] : b.terms_) r.add_term(i + j, ci * cj);
  return r;
}

} // namespace diracqes
