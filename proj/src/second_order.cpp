#include "diracqes/second_order.hpp"

#include "diracqes/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace diracqes {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Poly nth_derivative(Poly p, int k) {
  for (int i = 0; i < k; ++i) p = p.derivative();
  return p;
}

} // namespace

ScalarDiffOp::ScalarDiffOp(std::vector<Poly> coeffs) : c_(std::move(coeffs)) { trim(); }

void ScalarDiffOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ScalarDiffOp ScalarDiffOp::multiply(const Poly& p) { return ScalarDiffOp({p}); }

ScalarDiffOp ScalarDiffOp::derivative() { return ScalarDiffOp({Poly(), Poly({1.0})}); }

const Poly& ScalarDiffOp::coeff(int j) const {
  static const Poly zero;
  return j >= 0 && j < static_cast<int>(c_.size()) ? c_[j] : zero;
}

Poly ScalarDiffOp::apply(const Poly& p) const {
  Poly out, d = p;
  for (const Poly& c : c_) {
    out += c * d;
    d = d.derivative();
  }
  return out;
}

Eigen::MatrixXd ScalarDiffOp::matrix(int deg_in, int deg_out) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(deg_out + 1, deg_in + 1);
  for (int k = 0; k <= deg_in; ++k) {
    const Poly img = apply(Poly::monomial(k));
    if (img.degree() > deg_out)
      throw ValidationError("image of x^" + std::to_string(k) + " has degree " +
                            std::to_string(img.degree()) + " > " + std::to_string(deg_out));
    for (int p = 0; p <= img.degree(); ++p) m(p, k) = img[p];
  }
  return m;
}

double ScalarDiffOp::distance(const ScalarDiffOp& o) const {
  double d = 0.0;
  const int n = std::max(order(), o.order());
  for (int j = 0; j <= n; ++j) d = std::max(d, (coeff(j) - o.coeff(j)).max_abs());
  return d;
}

ScalarDiffOp& ScalarDiffOp::operator+=(const ScalarDiffOp& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  trim();
  return *this;
}

ScalarDiffOp& ScalarDiffOp::operator*=(double s) {
  for (Poly& c : c_) c *= s;
  trim();
  return *this;
}

ScalarDiffOp operator*(const ScalarDiffOp& a, const ScalarDiffOp& b) {
  // d^i (b_j f^(j)) = sum_k C(i,k) b_j^(i-k) f^(j+k)
  std::vector<Poly> out(std::max(0, a.order() + b.order() + 1));
  for (int i = 0; i <= a.order(); ++i)
    for (int j = 0; j <= b.order(); ++j)
      for (int k = 0; k <= i; ++k)
        out[j + k] += binomial(i, k) * (a.coeff(i) * nth_derivative(b.coeff(j), i - k));
  return ScalarDiffOp(std::move(out));
}

ScalarDiffOp SecondOrderT::op() const {
  const Poly x = Poly::monomial(1), one({1.0}), xx0 = x + x0 * one;
  const Poly d2 = x * xx0;
  const Poly d1 = (-1.0) * (x * x * xx0) + 2.0 * beta_t * xx0 + drift * one;
  const Poly d0 = eps_tilde * (x * xx0) + (b - c) * x + b * x0 * one;
  return ScalarDiffOp({d0, d1, d2});
}

SecondOrderT t_build(double x0, double b, double c, double beta_t, double eps_tilde, double drift) {
  SecondOrderT t;
  t.x0 = x0;
  t.b = b;
  t.c = c;
  t.beta_t = beta_t;
  t.eps_tilde = eps_tilde;
  t.drift = drift;
  t.n = static_cast<int>(std::max(0.0, std::round(eps_tilde)));
  return t;
}

SecondOrderT t_from_planar(double kappa, double M, double alpha, double eps) {
  if (alpha == 0.0) throw DomainError("b and c need alpha != 0");
  if (eps + M == 0.0) throw DomainError("x0 needs eps + M != 0");
  const double g = std::sqrt(std::max(0.0, kappa * kappa - alpha * alpha));
  const double x0 = alpha / (eps + M);
  const double tail = (kappa - g) * (eps + M) / alpha;
  return t_build(x0, 2.0 * eps * alpha + tail, x0 + tail, g, eps * eps - M * M - kappa - g - 1.0);
}

ScalarDiffOp generator_op(Generator g, int n) {
  const Poly x = Poly::monomial(1);
  switch (g) {
  case Generator::JPlus: return ScalarDiffOp({(-double(n)) * x, x * x});
  case Generator::JZero: return ScalarDiffOp({Poly({-0.5 * n}), x});
  case Generator::JMinus: return ScalarDiffOp::derivative();
  }
  return {};
}

ScalarDiffOp GeneratorExpr::expand(int n) const {
  ScalarDiffOp out;
  for (const auto& t : terms) {
    ScalarDiffOp w = ScalarDiffOp::multiply(Poly({1.0}));
    for (Generator g : t.word) w = w * generator_op(g, n);
    out += t.coeff * w;
  }
  return out;
}

ScalarDiffOp QesDecomposition::expand() const {
  return ScalarDiffOp::multiply(Poly::monomial(1)) * t_qes.expand(n) + s_qes.expand(n);
}

QesDecomposition t_qes_decompose(const SecondOrderT& t, int n) {
  if (n < 0) throw ValidationError("n must be nonnegative");
  if (std::abs(t.eps_tilde - n) > 1e-12)
    throw NotQuantized("eps_tilde = " + std::to_string(t.eps_tilde) + " differs from n = " +
                       std::to_string(n));
  using G = Generator;
  const double h = 0.5 * n;
  QesDecomposition d;
  d.n = n;
  d.t_qes.terms = {{-1.0, {G::JPlus}}, {-t.x0, {G::JZero}}, {t.x0 * h + t.b - t.c, {}}};
  // (J0 + n/2)(J0 + n/2 - 1) + x0 (J0 + n/2) J- + 2 beta (J0 + n/2) + (2 beta x0 + drift) J- + b x0
  d.s_qes.terms = {{1.0, {G::JZero, G::JZero}},
                   {2.0 * h - 1.0, {G::JZero}},
                   {h * (h - 1.0), {}},
                   {t.x0, {G::JZero, G::JMinus}},
                   {t.x0 * h, {G::JMinus}},
                   {2.0 * t.beta_t, {G::JZero}},
                   {2.0 * t.beta_t * h, {}},
                   {2.0 * t.beta_t * t.x0 + t.drift, {G::JMinus}},
                   {t.b * t.x0, {}}};
  return d;
}

} // namespace diracqes
