#include "diracqes/radial_operator.hpp"

#include "diracqes/error.hpp"

#include <cmath>
#include <string>

namespace diracqes {

namespace {

using LMat = std::array<Laurent, 4>;

Laurent& at(LMat& m, int i, int j) { return m[2 * i + j]; }
const Laurent& at(const LMat& m, int i, int j) { return m[2 * i + j]; }

LMat left_mul(const Mat2& a, const LMat& m) {
  LMat out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (a(i, k) != 0.0) at(out, i, j) += at(m, k, j) * a(i, k);
  return out;
}

LMat right_mul(const LMat& m, const Mat2& a) {
  LMat out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (a(k, j) != 0.0) at(out, i, j) += at(m, i, k) * a(k, j);
  return out;
}

int power_shift(const GaugeTransform& g, int i, int j) {
  const double theta[2] = {g.theta_upper, g.theta_lower};
  const double d = theta[j] - theta[i];
  const double k = std::round(d);
  if (std::abs(d - k) > 1e-12)
    throw StructureError("exponent difference " + std::to_string(d) + " is not an integer");
  return static_cast<int>(k);
}

Laurent to_x(const Laurent& l, int extra_power) {
  Laurent out;
  for (auto [k, c] : l.terms()) {
    const int p = k + extra_power;
    if (p % 2 != 0)
      throw StructureError("odd power r^" + std::to_string(p) + " blocks the change to x = r^2");
    out += Laurent::monomial(p / 2, c);
  }
  return out;
}

Poly apply_entry(const OperatorEntry& e, const Poly& p, double tol) {
  if (p.is_zero()) return {};
  Laurent img = e.mul * Laurent::from_poly(p) + e.der * Laurent::from_poly(p.derivative());
  for (auto [k, c] : img.terms()) {
    if (k >= 0) break;
    if (std::abs(c) > tol)
      throw PoleError("uncancelled t^" + std::to_string(k) + " term with residue " +
                          std::to_string(c),
                      c);
  }
  return img.polynomial_part();
}

int image_degree(const OperatorEntry& e, int deg) {
  if (deg < 0) return -1;
  int d = -1;
  if (!e.mul.is_zero()) d = std::max(d, deg + e.mul.max_power());
  if (!e.der.is_zero() && deg >= 1) d = std::max(d, deg - 1 + e.der.max_power());
  return d;
}

} // namespace

double RadialOperator::scale() const {
  double s = 0.0;
  for (const auto& e : e_) s = std::max({s, e.mul.max_abs(), e.der.max_abs()});
  return s;
}

RadialOperator& RadialOperator::operator+=(const RadialOperator& o) {
  for (int k = 0; k < 4; ++k) {
    e_[k].mul += o.e_[k].mul;
    e_[k].der += o.e_[k].der;
  }
  return *this;
}

RadialOperator& RadialOperator::operator*=(double s) {
  for (auto& e : e_) {
    e.mul *= s;
    e.der *= s;
  }
  return *this;
}

Mat2 GaugeTransform::rotation(double omega) {
  Mat2 u;
  u << std::cos(omega), -std::sin(omega), std::sin(omega), std::cos(omega);
  return u;
}

Mat2 GaugeTransform::right_factor() const {
  Mat2 s;
  s << 1.0, shear, 0.0, 1.0;
  return constant_right * s;
}

GaugeTransform GaugeTransform::inverse() const {
  if (premultiply != Premultiply::One || variable_change != VariableChange::None ||
      !row_op.isIdentity(0.0))
    throw DomainError("inverse() needs a transform without row_op, premultiplier or variable change");
  const Mat2 F = left_factor();
  const Mat2 K = right_factor();
  const bool scalar_power = theta_upper == theta_lower;
  const bool diagonal = F(0, 1) == 0.0 && F(1, 0) == 0.0 && K(0, 1) == 0.0 && K(1, 0) == 0.0;
  if (!scalar_power && !diagonal)
    throw DomainError("inverse() needs equal exponents or diagonal constant factors");
  GaugeTransform inv;
  inv.theta_upper = -theta_upper;
  inv.theta_lower = -theta_lower;
  inv.lambda1 = -lambda1;
  inv.lambda2 = -lambda2;
  inv.frame = F.inverse();
  inv.constant_right = F * K.inverse() * F.inverse();
  return inv;
}

SpinorValue GaugeTransform::evaluate(const PolySpinor& phi, double r) const {
  const bool x = variable_change == VariableChange::XEqualsRSquared;
  const double t = x ? r * r : r;
  const double dt = x ? 2.0 * r : 1.0;
  const Mat2 K = right_factor();
  const Eigen::Vector2d p(phi.upper.eval(t), phi.lower.eval(t));
  const Eigen::Vector2d dp(phi.upper.derivative().eval(t) * dt, phi.lower.derivative().eval(t) * dt);
  const Eigen::Vector2d u = K * p, du = K * dp;
  const double e = std::exp(-0.5 * lambda2 * r * r - lambda1 * r);
  const double ed = -lambda2 * r - lambda1;
  const double th[2] = {theta_upper, theta_lower};
  Eigen::Vector2d s, ds;
  for (int j = 0; j < 2; ++j) {
    const double pw = std::pow(r, th[j]) * e;
    s(j) = pw * u(j);
    ds(j) = pw * (du(j) + (th[j] / r + ed) * u(j));
  }
  const Mat2 F = left_factor();
  const Eigen::Vector2d v = F * s, dv = F * ds;
  return {v(0), v(1), dv(0), dv(1)};
}

PolySpinor apply(const RadialOperator& op, const PolySpinor& psi) {
  const double tol = 1e-12 * op.scale() * std::max({1.0, psi.upper.max_abs(), psi.lower.max_abs()});
  const Poly* in[2] = {&psi.upper, &psi.lower};
  PolySpinor out;
  Poly* res[2] = {&out.upper, &out.lower};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) *res[i] += apply_entry(op(i, j), *in[j], tol);
  return out;
}

RadialOperator conjugate(const RadialOperator& op, const GaugeTransform& g) {
  if (op.variable() != Variable::R) throw ValidationError("conjugate expects an operator in r");
  const Mat2 F = g.left_factor();
  const Mat2 Fi = F.inverse();

  LMat h0, h1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      at(h0, i, j) = op(i, j).mul;
      at(h1, i, j) = op(i, j).der;
    }
  h0 = right_mul(left_mul(Fi, h0), F);
  h1 = right_mul(left_mul(Fi, h1), F);

  // Diagonal power factor, then the logarithmic derivative of the gauge.
  const double theta[2] = {g.theta_upper, g.theta_lower};
  LMat m, d;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Laurent& a0 = at(h0, i, j);
      const Laurent& a1 = at(h1, i, j);
      if (a0.is_zero() && a1.is_zero()) continue;
      const int k = power_shift(g, i, j);
      Laurent gam = Laurent::monomial(-1, theta[j]) + Laurent::monomial(1, -g.lambda2) +
                    Laurent::monomial(0, -g.lambda1);
      at(d, i, j) = a1.shifted(k);
      at(m, i, j) = a0.shifted(k) + at(d, i, j) * gam;
    }

  const Mat2 K = g.right_factor();
  m = left_mul(g.row_op, right_mul(m, K));
  d = left_mul(g.row_op, right_mul(d, K));

  const int pre = g.premultiply == Premultiply::One ? 0 : g.premultiply == Premultiply::R ? 1 : 2;
  double scale = 0.0;
  for (int k = 0; k < 4; ++k) {
    m[k] = m[k].shifted(pre);
    d[k] = d[k].shifted(pre);
    scale = std::max({scale, m[k].max_abs(), d[k].max_abs()});
  }

  RadialOperator out(g.target_variable());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Laurent mm = at(m, i, j).pruned(1e-15 * scale);
      Laurent dd = at(d, i, j).pruned(1e-15 * scale);
      if ((!mm.is_zero() && mm.min_power() < -1) || (!dd.is_zero() && dd.min_power() < -1))
        throw StructureError("conjugated entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") has a pole of order above one");
      if (g.variable_change == VariableChange::XEqualsRSquared) {
        mm = to_x(mm, 0);
        dd = to_x(dd, 1) * 2.0;
      }
      out(i, j) = {std::move(mm), std::move(dd)};
    }
  return out;
}

std::vector<int> MatrixRep::overflow_rows() const {
  std::vector<int> rows;
  for (int k = deg_upper + 1; k <= image_upper; ++k) rows.push_back(k);
  for (int k = deg_lower + 1; k <= image_lower; ++k) rows.push_back(image_upper + 1 + k);
  return rows;
}

double MatrixRep::max_overflow() const {
  double m = 0.0;
  for (int r : overflow_rows()) m = std::max(m, matrix.row(r).cwiseAbs().maxCoeff());
  return m;
}

Eigen::MatrixXd MatrixRep::square_block() const {
  const int nu = std::min(deg_upper, image_upper) + 1;
  const int nl = std::min(deg_lower, image_lower) + 1;
  Eigen::MatrixXd s(nu + nl, matrix.cols());
  if (nu > 0) s.topRows(nu) = matrix.topRows(nu);
  if (nl > 0) s.bottomRows(nl) = matrix.middleRows(image_upper + 1, nl);
  return s;
}

MatrixRep matrix_rep(const RadialOperator& op, int deg_upper, int deg_lower,
                     std::optional<std::pair<int, int>> image_degrees) {
  if (deg_upper < -1 || deg_lower < -1) throw ValidationError("degrees must be >= -1");
  MatrixRep rep;
  rep.deg_upper = deg_upper;
  rep.deg_lower = deg_lower;
  const int deg[2] = {deg_upper, deg_lower};
  int img[2] = {deg_upper, deg_lower};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) img[i] = std::max(img[i], image_degree(op(i, j), deg[j]));
  if (image_degrees) {
    if (image_degrees->first < img[0] || image_degrees->second < img[1])
      throw ValidationError("requested image degrees are below the operator's image");
    img[0] = image_degrees->first;
    img[1] = image_degrees->second;
  }
  rep.image_upper = img[0];
  rep.image_lower = img[1];
  const int cols = (deg_upper + 1) + (deg_lower + 1);
  rep.matrix = Eigen::MatrixXd::Zero((img[0] + 1) + (img[1] + 1), cols);
  int col = 0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k <= deg[j]; ++k, ++col) {
      PolySpinor basis;
      (j == 0 ? basis.upper : basis.lower) = Poly::monomial(k);
      const PolySpinor im = apply(op, basis);
      for (int p = 0; p <= im.upper.degree(); ++p) rep.matrix(p, col) = im.upper[p];
      for (int p = 0; p <= im.lower.degree(); ++p) rep.matrix(img[0] + 1 + p, col) = im.lower[p];
    }
  return rep;
}

std::vector<Eigen::VectorXd> nullspace(const Eigen::MatrixXd& mat, double tol) {
  if (mat.size() == 0) throw ValidationError("nullspace of an empty matrix");
  if (!(tol > 0.0)) throw ValidationError("nullspace tolerance must be positive");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  std::vector<Eigen::VectorXd> basis;
  for (int k = 0; k < mat.cols(); ++k)
    if (k >= sv.size() || sv(k) <= tol * smax) basis.push_back(svd.matrixV().col(k));
  return basis;
}

double sigma_min(const Eigen::MatrixXd& mat) {
  if (mat.size() == 0) throw ValidationError("sigma_min of an empty matrix");
  if (mat.rows() < mat.cols()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

PolySpinor spinor_from_coefficients(const Eigen::VectorXd& v, int deg_upper, int deg_lower) {
  if (v.size() != (deg_upper + 1) + (deg_lower + 1))
    throw ValidationError("coefficient vector does not match the degrees");
  std::vector<double> u(v.data(), v.data() + deg_upper + 1);
  std::vector<double> l(v.data() + deg_upper + 1, v.data() + v.size());
  return {Poly(u), Poly(l)};
}

} // namespace diracqes
