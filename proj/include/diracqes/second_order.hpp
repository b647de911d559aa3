#pragma once

#include "diracqes/poly.hpp"

#include <Eigen/Dense>

#include <vector>

namespace diracqes {

/// Scalar differential operator sum_j c_j(x) (d/dx)^j with polynomial coefficients.
class ScalarDiffOp {
public:
  ScalarDiffOp() = default;
  explicit ScalarDiffOp(std::vector<Poly> coeffs);

  static ScalarDiffOp multiply(const Poly& p);
  static ScalarDiffOp derivative();

  /// Coefficient of (d/dx)^j.
  const Poly& coeff(int j) const;
  int order() const { return static_cast<int>(c_.size()) - 1; }

  Poly apply(const Poly& p) const;
  /// Matrix on the monomials x^0..x^deg_in with rows x^0..x^deg_out. Throws
  /// ValidationError if the image leaves P(deg_out).
  Eigen::MatrixXd matrix(int deg_in, int deg_out) const;
  /// Largest coefficient difference.
  double distance(const ScalarDiffOp& o) const;

  ScalarDiffOp& operator+=(const ScalarDiffOp& o);
  ScalarDiffOp& operator*=(double s);
  friend ScalarDiffOp operator+(ScalarDiffOp a, const ScalarDiffOp& b) { return a += b; }
  friend ScalarDiffOp operator*(ScalarDiffOp a, double s) { return a *= s; }
  friend ScalarDiffOp operator*(double s, ScalarDiffOp a) { return a *= s; }
  /// Composition (a after b).
  friend ScalarDiffOp operator*(const ScalarDiffOp& a, const ScalarDiffOp& b);

private:
  void trim();
  std::vector<Poly> c_;
};

/// T = (x^2 + x0 x) d^2 + (-x^2 (x + x0) + 2 beta_t (x + x0) + drift) d
///     + eps_tilde x (x + x0) + (b - c) x + b x0.
/// drift = 0 is the displayed form; eliminating P from the planar system gives
/// beta_t = gamma and drift = x0.
struct SecondOrderT {
  double x0 = 0.0;
  double b = 0.0;
  double c = 0.0;
  double beta_t = 0.0;
  double eps_tilde = 0.0;
  double drift = 0.0;
  /// Nearest nonnegative integer to eps_tilde.
  int n = 0;

  ScalarDiffOp op() const;
};

SecondOrderT t_build(double x0, double b, double c, double beta_t, double eps_tilde, double drift = 0.0);

/// x0 = alpha/(eps + M), b = 2 eps alpha + (kappa - gamma)(eps + M)/alpha,
/// c = alpha/(eps + M) + (kappa - gamma)(eps + M)/alpha,
/// eps_tilde = eps^2 - M^2 - kappa - gamma - 1, beta_t = gamma, drift = 0.
SecondOrderT t_from_planar(double kappa, double M, double alpha, double eps);

enum class Generator { JPlus, JZero, JMinus };

/// coeff * (product of generators, applied right to left).
struct GeneratorTerm {
  double coeff = 0.0;
  std::vector<Generator> word;
};

/// Linear combination of words in J+_n = x(x d - n), J0_n = x d - n/2, J-_n = d.
struct GeneratorExpr {
  std::vector<GeneratorTerm> terms;
  ScalarDiffOp expand(int n) const;
};

/// T = x T_QES + S_QES.
struct QesDecomposition {
  int n = 0;
  GeneratorExpr t_qes;
  GeneratorExpr s_qes;
  ScalarDiffOp expand() const;
};

/// Throws NotQuantized unless |eps_tilde - n| <= 1e-12.
QesDecomposition t_qes_decompose(const SecondOrderT& t, int n);

ScalarDiffOp generator_op(Generator g, int n);

} // namespace diracqes
