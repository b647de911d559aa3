#pragma once

#include "diracqes/model.hpp"

#include <utility>
#include <vector>

namespace diracqes {

struct ShootingConfig {
  double r_min = 1e-6;
  /// 0 selects the cutoff from the decay rate of the tail.
  double r_max = 0.0;
  /// Upper bound on the step count; the largest step is (r_max - r_min) / steps.
  int steps = 20000;
  /// 0 selects the outer classical turning point.
  double match_point = 0.0;
  double tol_energy = 1e-10;
};

struct ShootingResult {
  double epsilon = 0.0;
  /// det(outward, inward) / (|outward| |inward|) at the match point.
  double miss_distance = 0.0;
  /// Sign changes of the upper component on (r_min, r_max).
  int node_count = 0;
  /// False when the inward solution needed more than 1e300 of cumulative rescaling.
  bool normalizable = true;
  double r_max = 0.0;
  double match_point = 0.0;
};

enum class Direction { Outward, Inward };

struct TrajectorySample {
  double r;
  double f;
  double g;
};

/// Solution of H(eps) psi = 0 from one boundary to the match point, in integration
/// order. Values carry a running rescaling, so only their shape is meaningful.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  /// log of the factor divided out of the samples.
  double log_scale = 0.0;
  bool overflowed = false;
};

/// Fills in r_max and match_point when they are 0, using the system at eps.
ShootingConfig resolve_config(const ProblemInstance& inst, double eps, const ShootingConfig& cfg);

/// Regular exponent sqrt(kappa^2 + beta^2 - alpha^2) at the origin. Throws DomainError when
/// the radicand is negative; zero is the critical coupling with regular solution r^0.
double indicial_exponent(const ProblemInstance& inst);

/// cfg must already be resolved.
Trajectory integrate(const ProblemInstance& inst, double eps, const ShootingConfig& cfg, Direction dir);

ShootingResult shoot(const ProblemInstance& inst, double eps, const ShootingConfig& cfg = {});

/// Root of the miss distance inside the bracket. Throws NoRootInBracket without a sign
/// change and NumericalError when the polished miss is not small.
ShootingResult find_eigenvalue(const ProblemInstance& inst, std::pair<double, double> bracket,
                               const ShootingConfig& cfg = {});

/// Every root on a uniform grid of `points` energies in [lo, hi].
std::vector<ShootingResult> scan_eigenvalues(const ProblemInstance& inst, double lo, double hi, int points,
                                             const ShootingConfig& cfg = {});

/// Root closest to guess within guess +- half_width. Throws NoRootInBracket if none.
ShootingResult nearest_eigenvalue(const ProblemInstance& inst, double guess, double half_width,
                                  const ShootingConfig& cfg = {});

} // namespace diracqes
