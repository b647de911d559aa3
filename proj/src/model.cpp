#include "diracqes/model.hpp"

#include "diracqes/error.hpp"

#include <algorithm>
#include <cmath>

namespace diracqes {

namespace {

double series(const std::vector<double>& c, double r, int first_power) {
  double s = 0.0, p = std::pow(r, first_power);
  for (double a : c) {
    s += a * p;
    p *= r;
  }
  return s;
}

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

} // namespace

int PotentialSpec::s() const {
  int s = static_cast<int>(std::max(alpha_poly.size(), beta_poly.size()));
  return std::max(s, static_cast<int>(gamma_poly.size()) - 1);
}

PotentialSpec PotentialSpec::normalized() const {
  PotentialSpec p = *this;
  const int n = s();
  p.alpha_poly.resize(n, 0.0);
  p.beta_poly.resize(n, 0.0);
  p.gamma_poly.resize(n + 1, 0.0);
  return p;
}

double PotentialSpec::V(double r) const { return alpha / r + series(alpha_poly, r, 1); }
double PotentialSpec::W(double r) const { return beta / r + series(beta_poly, r, 1); }
double PotentialSpec::E(double r) const { return series(gamma_poly, r, 0); }

void ProblemInstance::validate() const {
  const double k = params.kappa;
  if (!std::isfinite(k) || k == 0.0) throw ValidationError("kappa must be nonzero");
  if (geometry == Geometry::ThreeD && !is_integer(k))
    throw ValidationError("kappa must be a nonzero integer in 3D, got " + std::to_string(k));
  if (geometry == Geometry::Planar && (!is_integer(2 * k) || is_integer(k)))
    throw ValidationError("kappa must be a half-integer in the planar case, got " +
                          std::to_string(k));
  const int n = potentials.s();
  if (static_cast<int>(potentials.alpha_poly.size()) > n ||
      static_cast<int>(potentials.beta_poly.size()) > n ||
      static_cast<int>(potentials.gamma_poly.size()) > n + 1)
    throw ValidationError("potential coefficient lists inconsistent with degree s");
}

double ProblemInstance::planar_field() const {
  const auto& g = potentials.gamma_poly;
  return g.size() > 1 ? 2.0 * g[1] : 0.0;
}

const std::vector<std::string>& preset_parameters(PresetName name) {
  static const std::vector<std::string> osc{"M", "kappa", "mu_n"};
  static const std::vector<std::string> ext{"M", "kappa", "beta1", "gamma1"};
  static const std::vector<std::string> coul{"M", "kappa", "alpha", "beta"};
  static const std::vector<std::string> planar{"M", "kappa", "alpha", "Btilde"};
  static const std::vector<std::string> qes{"M", "kappa", "alpha", "beta1", "gamma0", "gamma1"};
  switch (name) {
  case PresetName::DiracOscillator: return osc;
  case PresetName::ExtendedOscillatorES: return ext;
  case PresetName::DiracCoulomb: return coul;
  case PresetName::PlanarCoulombMagnetic: return planar;
  case PresetName::ExtendedOscillatorQES: return qes;
  }
  return osc;
}

PresetName preset_from_string(const std::string& name) {
  static const std::map<std::string, PresetName> names{
      {"DiracOscillator", PresetName::DiracOscillator},
      {"oscillator", PresetName::DiracOscillator},
      {"ExtendedOscillatorES", PresetName::ExtendedOscillatorES},
      {"extended-oscillator", PresetName::ExtendedOscillatorES},
      {"DiracCoulomb", PresetName::DiracCoulomb},
      {"coulomb", PresetName::DiracCoulomb},
      {"PlanarCoulombMagnetic", PresetName::PlanarCoulombMagnetic},
      {"planar", PresetName::PlanarCoulombMagnetic},
      {"ExtendedOscillatorQES", PresetName::ExtendedOscillatorQES},
      {"extended-qes", PresetName::ExtendedOscillatorQES},
  };
  auto it = names.find(name);
  if (it == names.end()) throw ConfigError("unknown preset '" + name + "'");
  return it->second;
}

std::string to_string(PresetName name) {
  switch (name) {
  case PresetName::DiracOscillator: return "DiracOscillator";
  case PresetName::ExtendedOscillatorES: return "ExtendedOscillatorES";
  case PresetName::DiracCoulomb: return "DiracCoulomb";
  case PresetName::PlanarCoulombMagnetic: return "PlanarCoulombMagnetic";
  case PresetName::ExtendedOscillatorQES: return "ExtendedOscillatorQES";
  }
  return "";
}

std::string to_string(Geometry g) { return g == Geometry::Planar ? "Planar" : "ThreeD"; }

Geometry geometry_from_string(const std::string& name) {
  if (name == "ThreeD") return Geometry::ThreeD;
  if (name == "Planar") return Geometry::Planar;
  throw ConfigError("unknown geometry '" + name + "'");
}

ProblemInstance preset(PresetName name, const std::map<std::string, double>& params) {
  const auto& required = preset_parameters(name);
  for (const auto& key : required)
    if (!params.count(key))
      throw ConfigError("preset " + to_string(name) + " requires parameter '" + key + "'");
  for (const auto& [key, value] : params) {
    if (std::find(required.begin(), required.end(), key) == required.end())
      throw ConfigError("preset " + to_string(name) + " does not take parameter '" + key + "'");
    if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' is not finite");
  }
  auto at = [&](const char* k) { return params.at(k); };

  ProblemInstance inst;
  inst.params.M = at("M");
  inst.params.kappa = at("kappa");
  auto& pot = inst.potentials;
  switch (name) {
  case PresetName::DiracOscillator:
    inst.params.mu_n = at("mu_n");
    pot.alpha_poly = {0.0};
    pot.beta_poly = {0.0};
    pot.gamma_poly = {0.0, -1.0};
    break;
  case PresetName::ExtendedOscillatorES: {
    const double b1 = at("beta1"), g1 = at("gamma1");
    if (b1 == 0.0 && g1 == 0.0) throw DomainError("beta1 and gamma1 both vanish");
    if (g1 == 0.0) throw DomainError("gamma1 = 0 puts the rotation at cos 2w = 0");
    const double tan2w = b1 / g1;
    inst.params.mu_n = -1.0;
    pot.beta = -inst.params.kappa * tan2w;
    pot.alpha_poly = {0.0};
    pot.beta_poly = {b1};
    pot.gamma_poly = {-inst.params.M * tan2w, g1};
    break;
  }
  case PresetName::DiracCoulomb:
    pot.alpha = at("alpha");
    pot.beta = at("beta");
    break;
  case PresetName::PlanarCoulombMagnetic:
    inst.geometry = Geometry::Planar;
    inst.params.mu_n = 1.0;
    pot.alpha = at("alpha");
    pot.alpha_poly = {0.0};
    pot.beta_poly = {0.0};
    pot.gamma_poly = {0.0, at("Btilde") / 2.0};
    break;
  case PresetName::ExtendedOscillatorQES:
    inst.params.mu_n = -1.0;
    pot.alpha = at("alpha");
    pot.alpha_poly = {0.0};
    pot.beta_poly = {at("beta1")};
    pot.gamma_poly = {at("gamma0"), at("gamma1")};
    break;
  }
  inst.validate();
  return inst;
}

} // namespace diracqes
