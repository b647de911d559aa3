#pragma once

#include "diracqes/poly.hpp"
#include "diracqes/radial_operator.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace diracqes {

enum class EnergyBranch { Plus, Minus };

inline double branch_sign(EnergyBranch b) { return b == EnergyBranch::Plus ? 1.0 : -1.0; }

struct QesSolution {
  /// alpha for the planar system, gamma_0 for the extended oscillator.
  double fixed_coupling = 0.0;
  double epsilon = 0.0;
  /// gamma (planar) or theta (extended).
  double exponent = 0.0;
  /// Planar: (Q, P) with P monic of degree n+1. Extended: (p, q) with p monic of degree n.
  PolySpinor spinor;
  /// Singular values are those of the full system with unit-norm columns.
  double sigma_min = 0.0;
  /// Largest singular value of the same system, the scale for sigma_min.
  double sigma_max = 0.0;
  /// 0 for the + energy branch, 1 for the - branch.
  int branch_id = 0;
};

/// Options shared by the sigma_min scans.
struct ScanOptions {
  /// Roots are accepted when sigma_min / sigma_max falls below this.
  double accept = 1e-8;
  /// Two refined minima closer than this are the same root.
  double merge = 1e-9;
};

// ---------------------------------------------------------------------------
// Planar Coulomb + magnetic field, rescaled variable x = r sqrt(eB):
//   x P' + (kappa + gamma) P - (eps - M) x Q - alpha Q = 0
//   x Q' + (gamma - kappa) Q - x^2 Q + (eps + M) x P + alpha P = 0
// with deg P = n + 1, deg Q = n, gamma = sqrt(kappa^2 - alpha^2) and
// eps^2 = M^2 + gamma + kappa + n + 1.

struct PlanarSystem {
  int n = 0;
  double kappa = 0.5;
  double M = 0.0;

  double gamma(double alpha) const;
  double epsilon(double alpha, EnergyBranch b) const;
  /// (2n+5) x (2n+3) system; unknowns P_0..P_{n+1} then Q_0..Q_n, rows are the
  /// x^0..x^{n+1} coefficients of the first equation, then x^0..x^{n+2} of the second.
  Eigen::MatrixXd matrix(double alpha, EnergyBranch b) const;
};

/// Throws ValidationError unless 2 kappa is odd and n >= 0.
PlanarSystem planar_build(int n, double kappa, double M);

/// n = 0 closed form: eps = -(M +- sqrt(M^2 + 2))/2, alpha^2 = -(1 + 8 kappa eps^2)/(16 eps^4).
/// Returns the branches with alpha^2 >= 0 (alpha > 0); throws NoAlgebraicSolution if none.
std::vector<QesSolution> planar_n0_closed_form(double kappa, double M);

/// Scans sigma_min over alpha in [lo, hi] on both energy branches, refines every local
/// minimum, and returns the accepted roots sorted by (branch, alpha). The range must lie
/// in [-|kappa|, |kappa|]; roots come in +-alpha pairs. The degenerate alpha = 0 roots of
/// the pure-field problem are dropped.
std::vector<QesSolution> planar_solve(const PlanarSystem& sys, std::pair<double, double> alpha_range,
                                      int grid, const ScanOptions& opt = {});

/// Solution at a known alpha (no search).
QesSolution planar_solution_at(const PlanarSystem& sys, double alpha, EnergyBranch b);

// ---------------------------------------------------------------------------
// Extended oscillator with V = alpha/r, W = beta1 r, E = gamma0 + gamma1 r, mu_n = -1.
// Ansatz r^theta exp(-lambda2 r^2/2 - lambda1 r) U(w) (p, f q) with deg p = n, deg q = n - 1:
//   (D + A2) p + (A1 r + A0) q = 0
//   (D + C2 r^2 + C1 r + C0) q + (D1 r + D0) p = 0

struct ExtendedCoefficients {
  double A2, A1, A0, C2, C1, C0, D1, D0;
};

struct ExtendedQesSystem {
  int n = 1;
  int kappa = 1;
  double M = 0.0, alpha = 0.0, beta1 = 0.0, gamma1 = 0.0;
  double R = 0.0;
  double omega = 0.0;
  double theta = 0.0;
  double lambda2 = 0.0;

  double lambda1(double gamma0) const;
  /// Normalisation f = -(R + gamma1)/beta1 of the lower rotated component.
  double q_scale() const;
  ExtendedCoefficients coefficients(double gamma0, double eps) const;
  /// eps^2 = 2(R(n + theta) - gamma1 kappa) + (M gamma1 - beta1 gamma0)^2 / R^2.
  double epsilon_squared(double gamma0) const;
  /// (2n+3) x (2n+1) system; unknowns p_0..p_n then q_0..q_{n-1}.
  Eigen::MatrixXd matrix(double gamma0, double eps) const;
  /// Gauge whose conjugation of H reproduces the two equations above.
  GaugeTransform transform(double gamma0) const;
};

/// Throws ValidationError for n < 1, DomainError for alpha^2 >= kappa^2, R = 0 or beta1 = 0.
ExtendedQesSystem extended_build(int n, int kappa, double M, double alpha, double beta1, double gamma1);

/// Scans gamma0 over the range on one energy branch; grid points with eps^2 < 0 are skipped.
std::vector<QesSolution> extended_solve(const ExtendedQesSystem& sys, std::pair<double, double> gamma0_range,
                                        int grid, EnergyBranch branch, const ScanOptions& opt = {});

QesSolution extended_solution_at(const ExtendedQesSystem& sys, double gamma0, EnergyBranch b);

/// Max-abs residual of both equations for a solution's (p, q).
double extended_residual(const ExtendedQesSystem& sys, const QesSolution& sol);

} // namespace diracqes
