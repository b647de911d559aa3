#pragma once

#include <map>
#include <string>
#include <vector>

namespace diracqes {

enum class Geometry { ThreeD, Planar };

struct PhysicalParams {
  double M = 0.0;
  /// Nonzero; integer in 3D, half-integer in the planar case.
  double kappa = 1.0;
  double mu_n = 0.0;
  /// Energy parameter; unknown in eigenproblems and unused by presets.
  double epsilon = 0.0;

  bool operator==(const PhysicalParams&) const = default;
};

/// Radial potentials
///   V = alpha/r + sum_{i=1..s} alpha_i r^i
///   W = beta/r  + sum_{i=1..s} beta_i r^i
///   E = sum_{i=0..s} gamma_i r^i,   B = 0.
/// alpha_poly and beta_poly hold alpha_1..alpha_s, gamma_poly holds gamma_0..gamma_s.
struct PotentialSpec {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> alpha_poly;
  std::vector<double> beta_poly;
  std::vector<double> gamma_poly;

  /// Maximal degree implied by the coefficient lists.
  int s() const;
  /// Copy with all lists padded to the common degree s.
  PotentialSpec normalized() const;

  double V(double r) const;
  double W(double r) const;
  double E(double r) const;

  bool operator==(const PotentialSpec&) const = default;
};

struct ProblemInstance {
  PhysicalParams params;
  PotentialSpec potentials;
  Geometry geometry = Geometry::ThreeD;

  /// Throws ValidationError on kappa == 0, wrong kappa parity or inconsistent lists.
  void validate() const;
  /// For planar instances: the product eB stored as 2 gamma_1.
  double planar_field() const;

  bool operator==(const ProblemInstance&) const = default;
};

enum class PresetName {
  DiracOscillator,
  ExtendedOscillatorES,
  DiracCoulomb,
  PlanarCoulombMagnetic,
  ExtendedOscillatorQES
};

/// Parameter names required by each preset, in canonical spelling.
const std::vector<std::string>& preset_parameters(PresetName name);
PresetName preset_from_string(const std::string& name);
std::string to_string(PresetName name);
std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& name);

/// Builds the potential pattern of a named model. Missing or unknown keys throw
/// ConfigError naming the key; a kappa of the wrong parity throws ValidationError.
///
/// ExtendedOscillatorES and ExtendedOscillatorQES store E = gamma_0 + gamma_1 r with
/// mu_n = -1, so that mu_n E enters the upper diagonal as +(gamma_0 + gamma_1 r).
/// ExtendedOscillatorES also fixes alpha = 0, beta = -kappa tan 2w, gamma_0 = -M tan 2w
/// with tan 2w = beta1 / gamma1. PlanarCoulombMagnetic stores E = (eB/2) r with mu_n = 1.
ProblemInstance preset(PresetName name, const std::map<std::string, double>& params);

} // namespace diracqes
