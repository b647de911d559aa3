#include "oracles.hpp"

#include "diracqes/error.hpp"
#include "diracqes/qes.hpp"
#include "diracqes/second_order.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace diracqes;

using oracles::expr_by_hand;
using oracles::t_by_hand;

TEST_CASE("constant is annihilated in the reduced case") {
  const SecondOrderT t = t_build(0.0, 0.7, 0.7, 0.0, 0.0);
  const ScalarDiffOp op = t.op();
  CHECK(op.coeff(2) == Poly({0.0, 0.0, 1.0}));
  CHECK(op.coeff(1) == Poly({0.0, 0.0, 0.0, -1.0}));
  CHECK(op.coeff(0).is_zero());
  CHECK(op.apply(Poly({1.0})).is_zero());
}

TEST_CASE("T on x matches the expansion by hand") {
  const double x0 = 0.3, b = 1.1, c = -0.4, bt = 0.8, e = 2.5;
  const SecondOrderT t = t_build(x0, b, c, bt, e);
  // T x = -x^2 (x + x0) + 2 bt (x + x0) + e x^2 (x + x0) + (b - c) x^2 + b x0 x
  const Poly expect({2.0 * bt * x0, 2.0 * bt + b * x0, -x0 + e * x0 + b - c, -1.0 + e});
  CHECK((t.op().apply(Poly::monomial(1)) - expect).max_abs() < 1e-14);
}

TEST_CASE("operator composition agrees with direct application") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const SecondOrderT t = t_build(u(rng), u(rng), u(rng), u(rng), 2.0);
  const ScalarDiffOp sq = t.op() * t.op();
  for (int k = 0; k < 20; ++k) {
    Poly p({u(rng), u(rng), u(rng), u(rng), u(rng)});
    const Poly a = sq.apply(p), b = t_by_hand(t, t_by_hand(t, p));
    CHECK((a - b).max_abs() <= 1e-12 * std::max(1.0, b.max_abs()));
  }
}

TEST_CASE("highest weight vector") {
  for (int n = 0; n <= 5; ++n) {
    CHECK(generator_op(Generator::JPlus, n).apply(Poly::monomial(n)).is_zero());
    CHECK(generator_op(Generator::JZero, n).apply(Poly::monomial(n)) == Poly::monomial(n, 0.5 * n));
  }
}

TEST_CASE("decomposition round trip on random parameters") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int draw = 0; draw < 100; ++draw) {
    const int n = draw % 4;
    const SecondOrderT t = t_build(u(rng), u(rng), u(rng), u(rng), double(n), u(rng));
    const QesDecomposition d = t_qes_decompose(t, n);
    const ScalarDiffOp op = t.op();
    CHECK(d.expand().distance(op) < 1e-12);
    // independent check through generator actions on monomials
    for (int k = 0; k <= n + 2; ++k) {
      const Poly p = Poly::monomial(k);
      const Poly lhs = Poly::monomial(1) * expr_by_hand(d.t_qes, n, p) + expr_by_hand(d.s_qes, n, p);
      CHECK((lhs - t_by_hand(t, p)).max_abs() < 1e-12 * std::max(1.0, lhs.max_abs()));
    }
  }
}

TEST_CASE("n = 0 decomposition is first order in the generators") {
  const SecondOrderT t = t_build(0.4, 1.3, 0.2, -0.6, 0.0);
  const QesDecomposition d = t_qes_decompose(t, 0);
  for (const auto& term : d.t_qes.terms) CHECK(term.word.size() <= 1);
  CHECK(d.t_qes.expand(0).order() <= 1);
  CHECK(d.expand().distance(t.op()) < 1e-14);
}

TEST_CASE("quantization is enforced") {
  CHECK_THROWS_AS(t_qes_decompose(t_build(0.1, 0.2, 0.3, 0.4, 1.5), 1), NotQuantized);
  CHECK_THROWS_AS(t_qes_decompose(t_build(0.1, 0.2, 0.3, 0.4, 1.0 + 1e-9), 1), NotQuantized);
  CHECK_NOTHROW(t_qes_decompose(t_build(0.1, 0.2, 0.3, 0.4, 1.0 + 1e-13), 1));
}

TEST_CASE("quantized T keeps P(n+1) when the top term cancels") {
  for (int n = 0; n <= 3; ++n) {
    const SecondOrderT t = t_build(0.5, 0.7, -0.2, 0.3, double(n));
    CHECK_NOTHROW(t.op().matrix(n, n + 1));
    CHECK_THROWS_AS(t.op().matrix(n + 1, n + 2), ValidationError);
  }
}

TEST_CASE("planar parameters: T with drift x0 annihilates Q") {
  for (double M : {0.0, 0.5, 1.0}) {
    const PlanarSystem sys = planar_build(1, 0.5, M);
    const auto sols = planar_solve(sys, {-0.5, 0.5}, 401);
    REQUIRE(sols.size() == 4);
    for (const auto& s : sols) {
      SecondOrderT t = t_from_planar(0.5, M, s.fixed_coupling, s.epsilon);
      CHECK(t.eps_tilde == doctest::Approx(1.0).epsilon(1e-12));
      const Poly& Q = s.spinor.upper;
      const double scale = Q.max_abs();
      t.drift = t.x0;
      CHECK(t.op().apply(Q).max_abs() < 1e-10 * scale);
      // displayed form without the drift term: recorded, not required
      t.drift = 0.0;
      const double literal = t.op().apply(Q).max_abs() / scale;
      MESSAGE("literal T residual at alpha = " << s.fixed_coupling << ": " << literal);
    }
  }
}

TEST_CASE("planar n = 1: the two extra conditions vanish together") {
  const PlanarSystem sys = planar_build(1, 0.5, 0.5);
  const auto sols = planar_solve(sys, {-0.5, 0.5}, 401);
  REQUIRE(sols.size() == 4);
  for (const auto& s : sols) {
    const auto branch = s.epsilon > 0 ? EnergyBranch::Plus : EnergyBranch::Minus;
    auto system = [&](double alpha) {
      SecondOrderT t = t_from_planar(0.5, 0.5, alpha, sys.epsilon(alpha, branch));
      t.drift = t.x0;
      return t.op().matrix(1, 3);
    };
    auto extra = [&](const Eigen::MatrixXd& m) {
      // monic Q: the x^0 row fixes Q_0, rows x^1 and x^2 are the extra conditions
      const Eigen::Vector2d q(-m(0, 1) / m(0, 0), 1.0);
      return Eigen::Vector3d((m * q).segment(1, 3));
    };
    const Eigen::MatrixXd at = system(s.fixed_coupling);
    CHECK(at.row(3).norm() < 1e-14);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(at.topRows(3));
    const auto sv = svd.singularValues();
    CHECK(sv(1) < 1e-12 * sv(0));
    const Eigen::Vector3d r0 = extra(at);
    CHECK(std::abs(r0(0)) < 1e-12);
    CHECK(std::abs(r0(1)) < 1e-12);
    const Eigen::Vector3d r1 = extra(system(s.fixed_coupling + 1e-3));
    CHECK(std::abs(r1(0)) > 1e-4);
    CHECK(std::abs(r1(1)) > 1e-4);
  }
}

TEST_CASE("t_from_planar domain") {
  CHECK_THROWS_AS(t_from_planar(0.5, 0.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(t_from_planar(0.5, 1.0, 0.2, -1.0), DomainError);
}
