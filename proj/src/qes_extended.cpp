#include "diracqes/qes.hpp"

#include "diracqes/error.hpp"
#include "sigma_scan.hpp"

#include <cmath>
#include <tuple>
#include <limits>

namespace diracqes {

double ExtendedQesSystem::lambda1(double gamma0) const { return (beta1 * M + gamma0 * gamma1) / R; }

double ExtendedQesSystem::q_scale() const { return -(R + gamma1) / beta1; }

ExtendedCoefficients ExtendedQesSystem::coefficients(double gamma0, double eps) const {
  const double f = q_scale();
  const double m = (gamma1 * M - beta1 * gamma0) / R;
  const double k = kappa;
  ExtendedCoefficients c;
  c.A2 = theta - gamma1 * k / R;
  c.A1 = f * (m - eps);
  c.A0 = f * (beta1 * k / R - alpha);
  c.C2 = -2.0 * R;
  c.C1 = -2.0 * lambda1(gamma0);
  c.C0 = theta + gamma1 * k / R;
  c.D1 = (m + eps) / f;
  c.D0 = (beta1 * k / R + alpha) / f;
  return c;
}

double ExtendedQesSystem::epsilon_squared(double gamma0) const {
  const double m = (M * gamma1 - beta1 * gamma0) / R;
  return 2.0 * (R * (n + theta) - gamma1 * kappa) + m * m;
}

Eigen::MatrixXd ExtendedQesSystem::matrix(double gamma0, double eps) const {
  const ExtendedCoefficients c = coefficients(gamma0, eps);
  const int np = n + 1, o = n + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n + 3, 2 * n + 1);
  for (int k = 0; k <= n; ++k) {
    A(k, k) += k + c.A2;
    A(o + k, k) += c.D0;
    A(o + k + 1, k) += c.D1;
  }
  for (int k = 0; k < n; ++k) {
    A(k, np + k) += c.A0;
    A(k + 1, np + k) += c.A1;
    A(o + k, np + k) += k + c.C0;
    A(o + k + 1, np + k) += c.C1;
    A(o + k + 2, np + k) += c.C2;
  }
  return A;
}

GaugeTransform ExtendedQesSystem::transform(double gamma0) const {
  GaugeTransform g;
  g.omega = omega;
  g.theta_upper = g.theta_lower = theta;
  g.lambda2 = lambda2;
  g.lambda1 = lambda1(gamma0);
  const double f = q_scale();
  g.constant_right << 1.0, 0.0, 0.0, f;
  g.row_op << 1.0, 0.0, 0.0, 1.0 / f;
  g.premultiply = Premultiply::R;
  return g;
}

ExtendedQesSystem extended_build(int n, int kappa, double M, double alpha, double beta1, double gamma1) {
  if (n < 1) throw ValidationError("extended QES degree n must be positive");
  if (kappa == 0) throw ValidationError("kappa must be nonzero");
  if (!(alpha * alpha < double(kappa) * kappa))
    throw DomainError("supercritical coupling: alpha^2 >= kappa^2");
  if (beta1 == 0.0)
    throw DomainError("beta1 = 0 is the exactly solvable branch; use extended_oscillator_spectrum");
  ExtendedQesSystem s;
  s.n = n;
  s.kappa = kappa;
  s.M = M;
  s.alpha = alpha;
  s.beta1 = beta1;
  s.gamma1 = gamma1;
  s.R = std::hypot(gamma1, beta1);
  s.omega = 0.5 * std::atan2(beta1, gamma1);
  s.theta = std::sqrt(double(kappa) * kappa - alpha * alpha);
  s.lambda2 = s.R;
  return s;
}

QesSolution extended_solution_at(const ExtendedQesSystem& sys, double gamma0, EnergyBranch b) {
  const double e2 = sys.epsilon_squared(gamma0);
  if (e2 < 0.0) throw DomainError("eps^2 < 0 at this gamma0");
  const double eps = branch_sign(b) * std::sqrt(e2);
  const Eigen::MatrixXd A = sys.matrix(gamma0, eps);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(A.cols() - 1);
  const double lead = v(sys.n);
  v /= std::abs(lead) > 1e-12 * v.cwiseAbs().maxCoeff() ? lead : v.cwiseAbs().maxCoeff();
  QesSolution sol;
  sol.fixed_coupling = gamma0;
  sol.epsilon = eps;
  sol.exponent = sys.theta;
  sol.spinor.upper = Poly(std::vector<double>(v.data(), v.data() + sys.n + 1));
  sol.spinor.lower = Poly(std::vector<double>(v.data() + sys.n + 1, v.data() + v.size()));
  std::tie(sol.sigma_min, sol.sigma_max) = detail::singular_range(A);
  sol.branch_id = b == EnergyBranch::Plus ? 0 : 1;
  return sol;
}

std::vector<QesSolution> extended_solve(const ExtendedQesSystem& sys, std::pair<double, double> gamma0_range,
                                        int grid, EnergyBranch branch, const ScanOptions& opt) {
  const double sign = branch_sign(branch);
  auto f = [&](double g0) {
    const double e2 = sys.epsilon_squared(g0);
    if (e2 < 0.0) return std::numeric_limits<double>::infinity();
    auto [smin, smax] = detail::singular_range(sys.matrix(g0, sign * std::sqrt(e2)));
    return smax > 0.0 ? smin / smax : 0.0;
  };
  std::vector<QesSolution> out;
  for (const auto& m : detail::refined_minima(f, gamma0_range.first, gamma0_range.second, grid,
                                              opt.accept, opt.merge))
    out.push_back(extended_solution_at(sys, m.x, branch));
  return out;
}

double extended_residual(const ExtendedQesSystem& sys, const QesSolution& sol) {
  const ExtendedCoefficients c = sys.coefficients(sol.fixed_coupling, sol.epsilon);
  const Poly& p = sol.spinor.upper;
  const Poly& q = sol.spinor.lower;
  const Poly r = Poly::monomial(1);
  const Poly Dp = r * p.derivative(), Dq = r * q.derivative();
  const Poly e1 = Dp + c.A2 * p + (c.A1 * r + Poly({c.A0})) * q;
  const Poly e2 = Dq + (c.C2 * r * r + c.C1 * r + Poly({c.C0})) * q + (c.D1 * r + Poly({c.D0})) * p;
  return std::max(e1.max_abs(), e2.max_abs());
}

} // namespace diracqes
