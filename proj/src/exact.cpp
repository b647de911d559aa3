#include "diracqes/exact.hpp"

#include "diracqes/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace diracqes {

namespace {

constexpr double kNullTol = 1e-9;

double oscillator_theta(double kappa) { return kappa > 0 ? kappa : 1.0 - kappa; }

double oscillator_level(double M, double kappa, double mu, int n) {
  const double shift = kappa > 0 ? 0.0 : std::abs(kappa) + 0.5;
  return std::sqrt(M * M + 4.0 * mu * (n + shift));
}

ExactRoot normalized(ExactRoot root) {
  if (!root.admits_polynomial) return root;
  double big = 0.0;
  for (const Poly* p : {&root.spinor.upper, &root.spinor.lower})
    for (double c : p->coeffs())
      if (std::abs(c) > std::abs(big)) big = c;
  if (big != 0.0) {
    root.spinor.upper *= 1.0 / big;
    root.spinor.lower *= 1.0 / big;
  }
  return root;
}

// Shared by the plain and the rotated oscillator: the effective mass, kappa and coupling
// determine the levels, `make` builds the gauge for a given energy.
template <class MakeTransform>
ExactSpectrumResult oscillator_like(const ProblemInstance& inst, double M, double kappa,
                                    double mu, int n_max, MakeTransform make) {
  if (n_max < 0) throw ValidationError("n_max must be nonnegative");
  ExactSpectrumResult out;
  out.instance = inst;
  for (int n = 0; n <= n_max; ++n) {
    ExactLevel lvl;
    lvl.n = n;
    lvl.epsilon_plus = oscillator_level(M, kappa, mu, n);
    lvl.epsilon_minus = -lvl.epsilon_plus;
    for (ExactRoot* root : {&lvl.plus, &lvl.minus}) {
      const double eps = root == &lvl.plus ? lvl.epsilon_plus : lvl.epsilon_minus;
      const bool singular_shear = std::abs(M + eps) <= 1e-12 * std::max(1.0, std::abs(M));
      if (singular_shear)
        *root = solve_in_subspace(inst, eps, make(eps, false), n, n - 1);
      else
        *root = solve_in_subspace(inst, eps, make(eps, true), n - 1, n);
    }
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

} // namespace

ExactRoot solve_in_subspace(const ProblemInstance& inst, double eps, const GaugeTransform& g,
                            int deg_upper, int deg_lower) {
  ExactRoot root;
  root.epsilon = eps;
  root.transform = g;
  root.deg_upper = deg_upper;
  root.deg_lower = deg_lower;
  const RadialOperator op = conjugate(dirac_operator(inst, eps), g);
  const double scale = op.scale();
  const MatrixRep rep = matrix_rep(op, deg_upper, deg_lower);
  root.max_overflow = rep.max_overflow() / scale;
  const auto ns = nullspace(rep.matrix, kNullTol);
  if (ns.empty()) {
    root.residual = std::numeric_limits<double>::infinity();
    return root;
  }
  root.admits_polynomial = true;
  root.spinor = spinor_from_coefficients(ns.front(), deg_upper, deg_lower);
  root = normalized(std::move(root));
  const PolySpinor img = apply(op, root.spinor);
  root.residual = std::max(img.upper.max_abs(), img.lower.max_abs()) / scale;
  return root;
}

GaugeTransform oscillator_transform(double M, double kappa, double mu, double eps, bool sheared) {
  GaugeTransform g;
  g.theta_upper = oscillator_theta(kappa);
  g.theta_lower = g.theta_upper - 1.0;
  g.lambda2 = mu;
  if (sheared) g.shear = 2.0 * mu / (M + eps);
  g.variable_change = VariableChange::XEqualsRSquared;
  g.premultiply = Premultiply::R;
  return g;
}

ExactSpectrumResult oscillator_spectrum(const PhysicalParams& params, int n_max) {
  if (!(params.mu_n > 0.0)) throw DomainError("oscillator needs mu_n > 0 for confinement");
  const ProblemInstance inst = preset(PresetName::DiracOscillator,
                                      {{"M", params.M}, {"kappa", params.kappa}, {"mu_n", params.mu_n}});
  const double M = params.M, k = params.kappa, mu = params.mu_n;
  return oscillator_like(inst, M, k, mu, n_max, [&](double eps, bool sheared) {
    return oscillator_transform(M, k, mu, eps, sheared);
  });
}

GaugeTransform extended_oscillator_transform(double M, double kappa, double beta1, double gamma1,
                                             double eps, bool sheared) {
  const double R = std::hypot(beta1, gamma1);
  const double c = gamma1 / R;
  GaugeTransform g = oscillator_transform(M / c, kappa / c, R, eps, sheared);
  g.omega = 0.5 * std::atan2(beta1, gamma1);
  return g;
}

ExactSpectrumResult extended_oscillator_spectrum(double M, int kappa, double beta1, double gamma1,
                                                 int n_max) {
  const double R = std::hypot(beta1, gamma1);
  if (R == 0.0) throw DomainError("beta1 and gamma1 both vanish");
  const double c = gamma1 / R;
  if (std::abs(c) < 1e-14) throw DomainError("cos 2w = 0: M/c diverges");
  const ProblemInstance inst =
      preset(PresetName::ExtendedOscillatorES,
             {{"M", M}, {"kappa", double(kappa)}, {"beta1", beta1}, {"gamma1", gamma1}});
  return oscillator_like(inst, M / c, kappa / c, R, n_max, [&](double eps, bool sheared) {
    return extended_oscillator_transform(M, kappa, beta1, gamma1, eps, sheared);
  });
}

CoulombEta coulomb_eta(const PhysicalParams& params, double alpha, double beta) {
  const double M = params.M, eps = params.epsilon, k = params.kappa;
  if (!(std::abs(eps) < M)) throw DomainError("|epsilon| >= M: no bound state");
  const double t2 = k * k + beta * beta - alpha * alpha;
  if (!(t2 > 0.0)) throw DomainError("supercritical coupling: kappa^2 + beta^2 - alpha^2 <= 0");
  CoulombEta e;
  e.theta = std::sqrt(t2);
  e.lambda = std::sqrt((M - eps) * (M + eps));
  e.eta = (alpha * eps - M * beta) / e.lambda - e.theta;
  return e;
}

GaugeTransform coulomb_transform(const PhysicalParams& params, double alpha, double beta) {
  const CoulombEta e = coulomb_eta(params, alpha, beta);
  const double um = std::sqrt(params.M - params.epsilon);
  const double up = std::sqrt(params.M + params.epsilon);
  GaugeTransform g;
  g.theta_upper = g.theta_lower = e.theta;
  g.lambda1 = e.lambda;
  g.frame << um, um, up, -up;
  g.row_op << 1.0, 0.0, -1.0, 1.0;
  g.constant_right << 1.0, -1.0, 1.0, 0.0;
  g.premultiply = Premultiply::R;
  return g;
}

double coulomb_energy(const PhysicalParams& params, double alpha, double beta, int n) {
  const double M = params.M;
  if (!(M > 0.0)) throw DomainError("Coulomb bound states need M > 0");
  const double delta = 1e-12 * M;
  auto f = [&](double eps) {
    PhysicalParams p = params;
    p.epsilon = eps;
    return coulomb_eta(p, alpha, beta).eta - n;
  };
  double lo = -M + delta, hi = M - delta;
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0))
    throw NoBoundState("eta = " + std::to_string(n) + " has no root in (-M, M)");
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ExactSpectrumResult coulomb_spectrum(const PhysicalParams& params, double alpha, double beta,
                                     int n_max) {
  if (n_max < 1) throw ValidationError("n_max must be positive");
  ExactSpectrumResult out;
  out.instance = preset(PresetName::DiracCoulomb,
                        {{"M", params.M}, {"kappa", params.kappa}, {"alpha", alpha}, {"beta", beta}});
  for (int n = 1; n <= n_max; ++n) {
    PhysicalParams p = params;
    p.epsilon = coulomb_energy(params, alpha, beta, n);
    ExactLevel lvl;
    lvl.n = n;
    lvl.epsilon_plus = lvl.epsilon_minus = p.epsilon;
    lvl.plus = solve_in_subspace(out.instance, p.epsilon, coulomb_transform(p, alpha, beta), n - 1, n);
    lvl.minus = lvl.plus;
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

double di1_residual(const ProblemInstance& inst, double eps, const SpinorValue& psi, double r) {
  const auto& p = inst.params;
  const auto& pot = inst.potentials;
  const double s = inst.geometry == Geometry::Planar ? -1.0 : 1.0;
  const double e = s * eps, V = s * pot.V(r), W = pot.W(r), muE = p.mu_n * pot.E(r);
  const double t1[] = {psi.df, -p.kappa / r * psi.f, -muE * psi.f, (p.M - e - V + W) * psi.g};
  const double t2[] = {psi.dg, p.kappa / r * psi.g, muE * psi.g, (p.M + e + V + W) * psi.f};
  double r1 = 0, r2 = 0, n1 = 0, n2 = 0;
  for (int k = 0; k < 4; ++k) {
    r1 += t1[k];
    r2 += t2[k];
    n1 += std::abs(t1[k]);
    n2 += std::abs(t2[k]);
  }
  const double norm = std::max(n1, n2);
  return norm == 0.0 ? 0.0 : std::max(std::abs(r1), std::abs(r2)) / norm;
}

} // namespace diracqes
