#include "diracqes/radial_operator.hpp"

namespace diracqes {

RadialOperator dirac_operator(const ProblemInstance& inst, double epsilon) {
  const auto& p = inst.params;
  const auto& pot = inst.potentials;
  const double sign = inst.geometry == Geometry::Planar ? -1.0 : 1.0;
  const double eps = sign * epsilon;

  Laurent V = Laurent::monomial(-1, sign * pot.alpha);
  for (size_t i = 0; i < pot.alpha_poly.size(); ++i)
    V += Laurent::monomial(static_cast<int>(i) + 1, sign * pot.alpha_poly[i]);
  Laurent W = Laurent::monomial(-1, pot.beta);
  for (size_t i = 0; i < pot.beta_poly.size(); ++i)
    W += Laurent::monomial(static_cast<int>(i) + 1, pot.beta_poly[i]);
  Laurent muE;
  for (size_t i = 0; i < pot.gamma_poly.size(); ++i)
    muE += Laurent::monomial(static_cast<int>(i), p.mu_n * pot.gamma_poly[i]);

  RadialOperator h(Variable::R);
  h(0, 0) = {Laurent::monomial(-1, -p.kappa) - muE, Laurent(1.0)};
  h(0, 1) = {Laurent(p.M - eps) - V + W, {}};
  h(1, 0) = {Laurent(p.M + eps) + V + W, {}};
  h(1, 1) = {Laurent::monomial(-1, p.kappa) + muE, Laurent(1.0)};
  return h;
}

} // namespace diracqes
