#include "diracqes/error.hpp"
#include "diracqes/model.hpp"
#include "diracqes/oracle.hpp"
#include "diracqes/qes.hpp"
#include "diracqes/radial_operator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace diracqes;

namespace {

ExtendedQesSystem reference(double alpha) { return extended_build(1, 1, 1.0, alpha, 4.0, 3.0); }

ProblemInstance instance_for(const ExtendedQesSystem& sys, double gamma0) {
  return preset(PresetName::ExtendedOscillatorQES, {{"M", sys.M},
                                                    {"kappa", double(sys.kappa)},
                                                    {"alpha", sys.alpha},
                                                    {"beta1", sys.beta1},
                                                    {"gamma0", gamma0},
                                                    {"gamma1", sys.gamma1}});
}

std::vector<QesSolution> all_roots(const ExtendedQesSystem& sys) {
  auto out = extended_solve(sys, {-200.0, 200.0}, 4001, EnergyBranch::Plus);
  auto minus = extended_solve(sys, {-200.0, 200.0}, 4001, EnergyBranch::Minus);
  out.insert(out.end(), minus.begin(), minus.end());
  return out;
}

} // namespace

TEST_CASE("extended_build: fixed quantities") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double M = u(rng), b1 = u(rng), g1 = u(rng), g0 = u(rng);
    const ExtendedQesSystem sys = extended_build(2, 2, M, 0.7, b1, g1);
    const double R = std::hypot(g1, b1);
    CHECK(sys.R == doctest::Approx(R));
    CHECK(sys.lambda2 == doctest::Approx(R));
    CHECK(sys.theta == doctest::Approx(std::sqrt(4.0 - 0.49)));
    CHECK(sys.lambda1(g0) == doctest::Approx((b1 * M + g0 * g1) / R));
    const ExtendedCoefficients c = sys.coefficients(g0, 0.3);
    CHECK(c.C2 == -2.0 * sys.R);
    CHECK(c.C1 == -2.0 * sys.lambda1(g0));
    const double cond = 2.0 * (R * (2 + sys.theta) - g1 * 2) +
                        (M * M * g1 * g1 + b1 * b1 * g0 * g0 - 2.0 * M * b1 * g0 * g1) / (R * R);
    CHECK(sys.epsilon_squared(g0) == doctest::Approx(cond).epsilon(1e-12));
  }
}

TEST_CASE("extended_build: gamma1 -> 0 limit of A1") {
  const double b1 = 1.7, g0 = 0.4, eps = 0.9;
  const ExtendedQesSystem sys = extended_build(1, 1, 1.0, 0.3, b1, 1e-8);
  CHECK(sys.coefficients(g0, eps).A1 == doctest::Approx((b1 * eps + g0 * b1) / b1).epsilon(1e-7));
}

TEST_CASE("extended_build: invalid parameters") {
  CHECK_THROWS_AS(extended_build(1, 1, 1.0, 0.5, 0.0, 3.0), DomainError);
  CHECK_THROWS_AS(extended_build(1, 1, 1.0, 1.0, 4.0, 3.0), DomainError);
  CHECK_THROWS_AS(extended_build(0, 1, 1.0, 0.5, 4.0, 3.0), ValidationError);
}

TEST_CASE("extended system equals the mechanically conjugated operator") {
  for (int n : {1, 2, 3})
    for (double g0 : {-3.0, 0.5, 2.0})
      for (double eps : {-1.3, 0.7, 4.0}) {
        const ExtendedQesSystem sys = extended_build(n, 1, 1.0, 0.4, 4.0, 3.0);
        const RadialOperator op = conjugate(dirac_operator(instance_for(sys, g0), eps), sys.transform(g0));
        const MatrixRep rep = matrix_rep(op, n, n - 1);
        const Eigen::MatrixXd want = sys.matrix(g0, eps);
        REQUIRE(rep.matrix.rows() == want.rows());
        REQUIRE(rep.matrix.cols() == want.cols());
        CHECK((rep.matrix - want).cwiseAbs().maxCoeff() < 1e-12 * want.cwiseAbs().maxCoeff());
      }
}

TEST_CASE("extended: reference family at alpha = 0.5 has two roots") {
  const ExtendedQesSystem sys = reference(0.5);
  const auto sols = all_roots(sys);
  REQUIRE(sols.size() == 2);
  for (const auto& s : sols) {
    const ExtendedCoefficients c = sys.coefficients(s.fixed_coupling, s.epsilon);
    CHECK(s.sigma_min < 1e-8 * s.sigma_max);
    CHECK(s.spinor.upper.degree() == 1);
    CHECK(s.spinor.upper[1] == doctest::Approx(1.0));
    CHECK(s.spinor.lower.degree() == 0);
    CHECK(s.spinor.lower[0] == doctest::Approx(-(1 + c.A2) / c.A1).epsilon(1e-10));
    CHECK(extended_residual(sys, s) < 1e-9);
    const double R = sys.R, g0 = s.fixed_coupling;
    const double cond = s.epsilon * s.epsilon - 2.0 * (R * (1 + sys.theta) - 3.0) -
                        std::pow(1.0 * 3.0 - 4.0 * g0, 2) / (R * R);
    CHECK(std::abs(cond) < 1e-10);
    // isolated roots
    const auto rel = [&](double g) {
      Eigen::MatrixXd a = sys.matrix(g, s.epsilon < 0 ? -std::sqrt(sys.epsilon_squared(g))
                                                      : std::sqrt(sys.epsilon_squared(g)));
      for (Eigen::Index j = 0; j < a.cols(); ++j) a.col(j).normalize();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
      const auto& v = svd.singularValues();
      return v(v.size() - 1) / v(0);
    };
    CHECK(rel(g0 + 1e-4) > 1e-7);
    CHECK(rel(g0 - 1e-4) > 1e-7);
    const auto o = find_eigenvalue(instance_for(sys, g0), {s.epsilon - 0.02, s.epsilon + 0.02});
    CHECK(std::abs(o.epsilon - s.epsilon) < 1e-6);
  }
}

TEST_CASE("extended: no real roots outside the window") {
  for (double a : {0.05, 0.95}) CHECK(all_roots(reference(a)).empty());
  for (double a : {0.15, 0.85}) CHECK(all_roots(reference(a)).size() == 2);
}

TEST_CASE("extended: infeasible grid points are skipped") {
  // Large negative gamma1 kappa pushes eps^2 below zero on part of the range.
  const ExtendedQesSystem sys = extended_build(1, 1, 0.0, 0.5, 0.1, 3.0);
  CHECK_NOTHROW(extended_solve(sys, {-1.0, 1.0}, 101, EnergyBranch::Plus));
}
