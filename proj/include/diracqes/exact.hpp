#pragma once

#include "diracqes/model.hpp"
#include "diracqes/radial_operator.hpp"

#include <vector>

namespace diracqes {

/// One quantized energy with its invariant-subspace data.
struct ExactRoot {
  double epsilon = 0.0;
  /// True when the conjugated operator has a nullspace vector in the subspace.
  bool admits_polynomial = false;
  GaugeTransform transform;
  int deg_upper = -1;
  int deg_lower = -1;
  /// Eigen-spinor in the transformed variable, largest coefficient scaled to 1.
  PolySpinor spinor;
  /// max|op(spinor)| / op scale; infinite when no spinor exists.
  double residual = 0.0;
  /// Largest overflow-row entry / op scale.
  double max_overflow = 0.0;
};

struct ExactLevel {
  int n = 0;
  double epsilon_plus = 0.0;
  double epsilon_minus = 0.0;
  ExactRoot plus;
  ExactRoot minus;
};

struct ExactSpectrumResult {
  std::vector<ExactLevel> levels;
  /// The potential set the spectrum belongs to, including any forced constants.
  ProblemInstance instance;
};

struct CoulombEta {
  double eta = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
};

/// Conjugates H(eps) by g and looks for a nullspace vector in P(du) + P(dl).
ExactRoot solve_in_subspace(const ProblemInstance& inst, double eps, const GaugeTransform& g,
                            int deg_upper, int deg_lower);

/// Oscillator gauge: exp(-mu r^2/2) diag(r^theta, r^(theta-1)), shear 2mu/(M+eps), x = r^2,
/// multiplied by r. theta = kappa for kappa > 0 and 1 - kappa for kappa < 0. The shear is
/// dropped when `sheared` is false.
GaugeTransform oscillator_transform(double M, double kappa, double mu, double eps, bool sheared = true);

/// Levels n = 0..n_max of the Dirac oscillator, E = -r with coupling mu_n > 0.
/// kappa > 0: eps^2 = M^2 + 4 n mu_n; kappa < 0: eps^2 = M^2 + 4 mu_n (n + |kappa| + 1/2).
/// For kappa > 0 and n = 0 only eps = -M carries a normalizable polynomial solution.
ExactSpectrumResult oscillator_spectrum(const PhysicalParams& params, int n_max);

/// Gauge for the extended oscillator: U(w) in front of the oscillator gauge with
/// M -> M/c, kappa -> kappa/c, mu -> R, where c = cos 2w = gamma1/R.
GaugeTransform extended_oscillator_transform(double M, double kappa, double beta1, double gamma1,
                                             double eps, bool sheared = true);

/// Extended oscillator with the forced constants applied; E^2 = M^2/c^2 + 4 n R for
/// kappa/c > 0 with n the degree in x = r^2.
ExactSpectrumResult extended_oscillator_spectrum(double M, int kappa, double beta1, double gamma1,
                                                 int n_max);

/// eta = (alpha eps - M beta)/sqrt(M^2 - eps^2) - sqrt(kappa^2 + beta^2 - alpha^2), eps = params.epsilon.
CoulombEta coulomb_eta(const PhysicalParams& params, double alpha, double beta);

/// Coulomb gauge: r^theta exp(-lambda r) [[u-, u-], [u+, -u+]], rows combined by
/// [[1, 0], [-1, 1]], right factor [[1, -1], [1, 0]], multiplied by r.
GaugeTransform coulomb_transform(const PhysicalParams& params, double alpha, double beta);

/// Root of eta(eps) = n in (-M, M) by bisection. Throws NoBoundState without a sign change.
double coulomb_energy(const PhysicalParams& params, double alpha, double beta, int n);

/// Levels n = 1..n_max; eigen-spinors live in P(n-1) + P(n).
ExactSpectrumResult coulomb_spectrum(const PhysicalParams& params, double alpha, double beta,
                                     int n_max);

/// Relative residual of H(eps) psi = 0 at one radius for a physical spinor value.
double di1_residual(const ProblemInstance& inst, double eps, const SpinorValue& psi, double r);

} // namespace diracqes
