#pragma once

#include "diracqes/model.hpp"
#include "diracqes/poly.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace diracqes {

enum class Variable { R, X };
using Mat2 = Eigen::Matrix2d;

/// One entry mul(t) + der(t) d/dt of a 2x2 first-order operator.
struct OperatorEntry {
  Laurent mul;
  Laurent der;

  bool operator==(const OperatorEntry&) const = default;
};

class RadialOperator {
public:
  explicit RadialOperator(Variable v = Variable::R) : var_(v) {}

  OperatorEntry& operator()(int i, int j) { return e_[2 * i + j]; }
  const OperatorEntry& operator()(int i, int j) const { return e_[2 * i + j]; }
  Variable variable() const { return var_; }
  /// Largest coefficient magnitude over all entries.
  double scale() const;

  RadialOperator& operator+=(const RadialOperator& o);
  RadialOperator& operator*=(double s);
  friend RadialOperator operator+(RadialOperator a, const RadialOperator& b) { return a += b; }
  friend RadialOperator operator*(RadialOperator a, double s) { return a *= s; }
  bool operator==(const RadialOperator&) const = default;

private:
  std::array<OperatorEntry, 4> e_;
  Variable var_;
};

enum class VariableChange { None, XEqualsRSquared };
enum class Premultiply { One, R, X };

/// Value and r-derivative of a physical spinor (f, g) at one radius.
struct SpinorValue {
  double f, g, df, dg;
};

/// Composite similarity transformation. The physical spinor is
///   psi(r) = F exp(-lambda2 r^2/2 - lambda1 r) diag(r^theta_upper, r^theta_lower) K phi(t),
/// with F = U(omega) frame, K = constant_right [[1, shear], [0, 1]] and t = r or r^2.
/// conjugate() returns p(r) row_op G^{-1} H G K where G is everything left of K.
struct GaugeTransform {
  double theta_upper = 0.0;
  double theta_lower = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double omega = 0.0;
  double shear = 0.0;
  Mat2 constant_right = Mat2::Identity();
  VariableChange variable_change = VariableChange::None;
  Premultiply premultiply = Premultiply::One;
  /// Constant left factor of the gauge, applied after U(omega).
  Mat2 frame = Mat2::Identity();
  /// Constant matrix acting on the rows of the conjugated operator.
  Mat2 row_op = Mat2::Identity();

  static GaugeTransform identity() { return {}; }
  static Mat2 rotation(double omega);

  Mat2 left_factor() const { return rotation(omega) * frame; }
  Mat2 right_factor() const;
  Variable target_variable() const {
    return variable_change == VariableChange::XEqualsRSquared ? Variable::X : Variable::R;
  }

  /// Inverse for transforms without row_op, premultiplier or variable change whose
  /// constant factors commute with the r-dependent part; throws DomainError otherwise.
  GaugeTransform inverse() const;

  /// Physical spinor built from a transformed-variable spinor.
  SpinorValue evaluate(const PolySpinor& phi, double r) const;
};

/// Exact image of psi under op. Throws PoleError if a negative power survives.
PolySpinor apply(const RadialOperator& op, const PolySpinor& psi);

/// Throws StructureError when the exponent difference is not an integer, the result
/// has a pole of order above one, or the variable change meets odd powers.
RadialOperator conjugate(const RadialOperator& op, const GaugeTransform& g);

/// Matrix of op on the monomial basis of P(deg_upper) + P(deg_lower), deg = -1 meaning
/// the zero space. Columns: upper monomials then lower monomials. Rows: image upper
/// degrees 0..image_upper then image lower degrees 0..image_lower; rows above the input
/// degree of their block are overflow rows.
struct MatrixRep {
  Eigen::MatrixXd matrix;
  int deg_upper = 0;
  int deg_lower = 0;
  int image_upper = 0;
  int image_lower = 0;

  std::vector<int> overflow_rows() const;
  double max_overflow() const;
  /// Rows inside the input space only.
  Eigen::MatrixXd square_block() const;
};

MatrixRep matrix_rep(const RadialOperator& op, int deg_upper, int deg_lower,
                     std::optional<std::pair<int, int>> image_degrees = std::nullopt);

/// Orthonormal basis of the right singular vectors with singular value < tol * sigma_max,
/// including directions beyond the row count of a wide matrix.
std::vector<Eigen::VectorXd> nullspace(const Eigen::MatrixXd& mat, double tol);

/// Smallest singular value over all columns; zero for a wide matrix.
double sigma_min(const Eigen::MatrixXd& mat);

/// Spinor from a coefficient vector laid out as in MatrixRep columns.
PolySpinor spinor_from_coefficients(const Eigen::VectorXd& v, int deg_upper, int deg_lower);

/// The radial Dirac operator H(epsilon) acting on (f, g):
///   H11 = d/dr - kappa/r - mu_n E,  H12 = M - eps - V + W,
///   H21 = M + eps + V + W,          H22 = d/dr + kappa/r + mu_n E.
/// Planar instances use (eps, V) -> (-eps, -V), the sign convention of the planar system.
RadialOperator dirac_operator(const ProblemInstance& inst, double epsilon);

} // namespace diracqes
