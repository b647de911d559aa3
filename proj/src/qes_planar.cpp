#include "diracqes/qes.hpp"

#include "diracqes/error.hpp"
#include "sigma_scan.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <string>

namespace diracqes {

namespace {

bool is_half_odd(double k) {
  const double t = 2.0 * k;
  return std::abs(t - std::round(t)) < 1e-12 && std::abs(std::fmod(std::round(t), 2.0)) == 1.0;
}

double relative_sigma(const Eigen::MatrixXd& m) {
  auto [smin, smax] = detail::singular_range(m);
  return smax > 0.0 ? smin / smax : 0.0;
}

} // namespace

double PlanarSystem::gamma(double alpha) const {
  const double g2 = kappa * kappa - alpha * alpha;
  if (g2 < -1e-14) throw DomainError("alpha^2 > kappa^2 makes gamma imaginary");
  return std::sqrt(std::max(g2, 0.0));
}

double PlanarSystem::epsilon(double alpha, EnergyBranch b) const {
  const double e2 = M * M + gamma(alpha) + kappa + n + 1;
  if (e2 < 0.0) throw DomainError("eps^2 < 0 for this alpha");
  return branch_sign(b) * std::sqrt(e2);
}

Eigen::MatrixXd PlanarSystem::matrix(double alpha, EnergyBranch b) const {
  const double g = gamma(alpha), e = epsilon(alpha, b), k = kappa;
  const int nP = n + 2, nQ = n + 1, o = n + 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n + 5, nP + nQ);
  for (int i = 0; i < nP; ++i) {
    A(i, i) += i + k + g;
    A(o + i + 1, i) += e + M;
    A(o + i, i) += alpha;
  }
  for (int j = 0; j < nQ; ++j) {
    A(j + 1, nP + j) += -(e - M);
    A(j, nP + j) += -alpha;
    A(o + j, nP + j) += j + g - k;
    A(o + j + 2, nP + j) += -1.0;
  }
  return A;
}

PlanarSystem planar_build(int n, double kappa, double M) {
  if (n < 0) throw ValidationError("planar degree n must be nonnegative");
  if (!is_half_odd(kappa))
    throw ValidationError("planar kappa must be a half-integer, got " + std::to_string(kappa));
  return {n, kappa, M};
}

QesSolution planar_solution_at(const PlanarSystem& sys, double alpha, EnergyBranch b) {
  const Eigen::MatrixXd A = sys.matrix(alpha, b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(A.cols() - 1);
  const int nP = sys.n + 2;
  const double lead = v(nP - 1);
  v /= std::abs(lead) > 1e-12 * v.cwiseAbs().maxCoeff() ? lead : v.cwiseAbs().maxCoeff();
  QesSolution sol;
  sol.fixed_coupling = alpha;
  sol.epsilon = sys.epsilon(alpha, b);
  sol.exponent = sys.gamma(alpha);
  sol.spinor.lower = Poly(std::vector<double>(v.data(), v.data() + nP));
  sol.spinor.upper = Poly(std::vector<double>(v.data() + nP, v.data() + v.size()));
  std::tie(sol.sigma_min, sol.sigma_max) = detail::singular_range(A);
  sol.branch_id = b == EnergyBranch::Plus ? 0 : 1;
  return sol;
}

std::vector<QesSolution> planar_n0_closed_form(double kappa, double M) {
  const PlanarSystem sys = planar_build(0, kappa, M);
  std::vector<QesSolution> out;
  for (double s : {1.0, -1.0}) {
    const double eps = -0.5 * (M + s * std::sqrt(M * M + 2.0));
    const double e2 = eps * eps;
    const double a2 = -(1.0 + 8.0 * kappa * e2) / (16.0 * e2 * e2);
    if (a2 < 0.0 || a2 > kappa * kappa) continue;
    const double alpha = std::sqrt(a2);
    const double g = std::sqrt(kappa * kappa - a2);
    if (std::abs(e2 - (M * M + g + kappa + 1.0)) > 1e-12 * std::max(1.0, e2))
      throw NumericalError("closed-form branch violates eps^2 = M^2 + gamma + kappa + 1");
    out.push_back(planar_solution_at(sys, alpha, eps > 0 ? EnergyBranch::Plus : EnergyBranch::Minus));
  }
  if (out.empty())
    throw NoAlgebraicSolution("n = 0 planar system: alpha^2 < 0 on both branches (kappa = " +
                              std::to_string(kappa) + ")");
  return out;
}

std::vector<QesSolution> planar_solve(const PlanarSystem& sys, std::pair<double, double> alpha_range,
                                      int grid, const ScanOptions& opt) {
  auto [lo, hi] = alpha_range;
  const double k = std::abs(sys.kappa);
  if (!(lo < hi)) throw ValidationError("alpha range is empty");
  if (lo < -k - 1e-14 || hi > k + 1e-14) throw ValidationError("alpha range exceeds [-|kappa|, |kappa|]");
  lo = std::max(lo, -k);
  hi = std::min(hi, k);
  std::vector<QesSolution> out;
  for (EnergyBranch b : {EnergyBranch::Plus, EnergyBranch::Minus}) {
    auto f = [&](double a) { return relative_sigma(sys.matrix(std::clamp(a, -k, k), b)); };
    for (const auto& m : detail::refined_minima(f, lo, hi, grid, opt.accept, opt.merge)) {
      // alpha = 0 is the pure-field problem, solvable for every n; not a Coulomb root
      if (std::abs(m.x) <= 1e-8 * std::abs(sys.kappa)) continue;
      out.push_back(planar_solution_at(sys, m.x, b));
    }
  }
  return out;
}

} // namespace diracqes
