#include "diracqes/oracle.hpp"

#include "diracqes/error.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace diracqes {

namespace {

using State = std::array<double, 2>;

/// psi' = A psi with A = [[a, b], [c, -a]].
struct Coefficients {
  double a, b, c;
};

struct System {
  const ProblemInstance& inst;
  double eps;

  Coefficients at(double r) const {
    const auto& p = inst.params;
    const auto& pot = inst.potentials;
    const double sign = inst.geometry == Geometry::Planar ? -1.0 : 1.0;
    const double e = sign * eps;
    const double V = sign * pot.V(r);
    const double W = pot.W(r);
    return {p.kappa / r + p.mu_n * pot.E(r), -(p.M - e - V + W), -(p.M + e + V + W)};
  }

  void operator()(const State& y, State& dy, double r) const {
    const Coefficients k = at(r);
    dy[0] = k.a * y[0] + k.b * y[1];
    dy[1] = k.c * y[0] - k.a * y[1];
  }

  double growth(double r) const {
    const Coefficients k = at(r);
    return k.a * k.a + k.b * k.c;
  }
};

/// Regular Frobenius solution r^theta (v0 + r v1) at r_min, with the r^theta factor dropped.
State outward_start(const System& sys, double r) {
  const ProblemInstance& inst = sys.inst;
  const double theta = indicial_exponent(inst);
  const double s = inst.geometry == Geometry::Planar ? -1.0 : 1.0;
  const double kappa = inst.params.kappa;
  const double al = s * inst.potentials.alpha;
  const double be = inst.potentials.beta;
  // r A(r) = K + r A0 + O(r^2)
  const double k11 = kappa, k12 = al - be, k21 = -(al + be);
  State v = kappa + theta > 0.0 ? State{kappa + theta, k21} : State{k12, theta - kappa};
  const Coefficients c = sys.at(r);
  const double a0 = c.a - k11 / r, b0 = c.b - k12 / r, c0 = c.c - k21 / r;
  const State w{a0 * v[0] + b0 * v[1], c0 * v[0] - a0 * v[1]};
  // ((theta + 1) I - K) v1 = A0 v0
  const double m11 = theta + 1.0 - k11, m12 = -k12, m21 = -k21, m22 = theta + 1.0 + k11;
  const double det = m11 * m22 - m12 * m21;
  const State v1{(m22 * w[0] - m12 * w[1]) / det, (m11 * w[1] - m21 * w[0]) / det};
  return {v[0] + r * v1[0], v[1] + r * v1[1]};
}

State inward_start(const System& sys, double r) {
  const Coefficients k = sys.at(r);
  const double q = k.a * k.a + k.b * k.c;
  if (!(q > 0.0))
    throw DomainError("no decaying solution at r = " + std::to_string(r) + " for eps = " +
                      std::to_string(sys.eps));
  const double rate = std::sqrt(q);
  if (k.a < 0.0) return {rate - k.a, -k.c};
  return {k.b, -(k.a + rate)};
}

int sign_changes(const Trajectory& t) {
  int n = 0;
  double last = 0.0;
  for (const auto& s : t.samples) {
    if (s.f == 0.0) continue;
    if (last != 0.0 && (s.f > 0.0) != (last > 0.0)) ++n;
    last = s.f;
  }
  return n;
}

} // namespace

double indicial_exponent(const ProblemInstance& inst) {
  const double k = inst.params.kappa, a = inst.potentials.alpha, b = inst.potentials.beta;
  const double t2 = k * k + b * b - a * a;
  const double scale = k * k + b * b + a * a;
  if (t2 < -1e-14 * scale) throw DomainError("supercritical coupling: kappa^2 + beta^2 - alpha^2 < 0");
  return std::sqrt(std::max(0.0, t2));
}

ShootingConfig resolve_config(const ProblemInstance& inst, double eps, const ShootingConfig& cfg) {
  if (!(cfg.r_min > 0.0)) throw ValidationError("r_min must be positive");
  if (cfg.steps < 1) throw ValidationError("steps must be positive");
  ShootingConfig out = cfg;
  if (out.r_max > 0.0 && out.match_point > 0.0) {
    if (!(out.r_min < out.match_point && out.match_point < out.r_max))
      throw ValidationError("need r_min < match_point < r_max");
    return out;
  }
  const System sys{inst, eps};
  constexpr double cap = 1e4;
  const double top = out.r_max > 0.0 ? out.r_max : cap;
  constexpr int points = 8000;
  std::vector<double> r(points), q(points);
  const double ratio = std::log(top / cfg.r_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    r[i] = cfg.r_min * std::exp(ratio * i);
    q[i] = sys.growth(r[i]);
  }
  if (out.match_point <= 0.0) {
    int turn = -1;
    for (int i = points - 1; i >= 0; --i)
      if (q[i] < 0.0) {
        turn = i;
        break;
      }
    if (turn < 0) turn = static_cast<int>(std::min_element(q.begin(), q.end()) - q.begin());
    out.match_point = r[turn];
  }
  if (out.r_max <= 0.0) {
    double integral = 0.0;
    out.r_max = cap;
    for (int i = 1; i < points; ++i) {
      if (r[i] <= out.match_point) continue;
      integral += 0.5 * (std::sqrt(std::max(0.0, q[i])) + std::sqrt(std::max(0.0, q[i - 1]))) *
                  (r[i] - r[i - 1]);
      if (integral > 40.0) {
        out.r_max = r[i];
        break;
      }
    }
  }
  out.match_point = std::min(out.match_point, 0.5 * out.r_max);
  out.match_point = std::max(out.match_point, std::sqrt(out.r_min * out.r_max));
  return out;
}

Trajectory integrate(const ProblemInstance& inst, double eps, const ShootingConfig& cfg, Direction dir) {
  namespace ode = boost::numeric::odeint;
  const System sys{inst, eps};
  auto stepper = ode::make_controlled(1e-30, 1e-12, ode::runge_kutta_dopri5<State>());

  const bool out = dir == Direction::Outward;
  double r = out ? cfg.r_min : cfg.r_max;
  const double end = cfg.match_point;
  State y = out ? outward_start(sys, r) : inward_start(sys, r);
  const double h_max = (cfg.r_max - cfg.r_min) / cfg.steps;
  double h = out ? 0.1 * cfg.r_min : -std::min(h_max, 1e-3 * cfg.r_max);

  Trajectory t;
  t.samples.push_back({r, y[0], y[1]});
  constexpr double big = 1e100;
  const long max_attempts = 200L * cfg.steps + 100000L;
  long attempts = 0;
  while (out ? r < end : r > end) {
    if (++attempts > max_attempts)
      throw NumericalError("integrator stalled at r = " + std::to_string(r));
    if (out ? r + h > end : r + h < end) h = end - r;
    if (std::abs(h) > h_max) h = out ? h_max : -h_max;
    if (stepper.try_step(sys, y, r, h) != ode::success) continue;
    const double size = std::max(std::abs(y[0]), std::abs(y[1]));
    if (!std::isfinite(size)) throw NumericalError("non-finite solution at r = " + std::to_string(r));
    if (size > big) {
      y[0] /= big;
      y[1] /= big;
      t.log_scale += std::log(big);
      for (auto& s : t.samples) {
        s.f /= big;
        s.g /= big;
      }
    }
    t.samples.push_back({r, y[0], y[1]});
  }
  t.overflowed = t.log_scale > std::log(1e300);
  return t;
}

ShootingResult shoot(const ProblemInstance& inst, double eps, const ShootingConfig& cfg) {
  const ShootingConfig c = resolve_config(inst, eps, cfg);
  const Trajectory o = integrate(inst, eps, c, Direction::Outward);
  const Trajectory i = integrate(inst, eps, c, Direction::Inward);
  const auto& yo = o.samples.back();
  const auto& yi = i.samples.back();
  ShootingResult res;
  res.epsilon = eps;
  res.miss_distance = (yo.f * yi.g - yo.g * yi.f) / (std::hypot(yo.f, yo.g) * std::hypot(yi.f, yi.g));
  res.node_count = sign_changes(o) + sign_changes(i);
  res.normalizable = !i.overflowed;
  res.r_max = c.r_max;
  res.match_point = c.match_point;
  return res;
}

ShootingResult find_eigenvalue(const ProblemInstance& inst, std::pair<double, double> bracket,
                               const ShootingConfig& cfg) {
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw ValidationError("bracket must satisfy lo < hi");
  const ShootingConfig c = resolve_config(inst, 0.5 * (lo + hi), cfg);
  auto miss = [&](double e) { return shoot(inst, e, c).miss_distance; };
  const double flo = miss(lo), fhi = miss(hi);
  if (flo == 0.0) return shoot(inst, lo, c);
  if (fhi == 0.0) return shoot(inst, hi, c);
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoRootInBracket("miss distance does not change sign on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  std::uintmax_t iters = 300;
  const double tol = c.tol_energy;
  auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto root = boost::math::tools::toms748_solve(miss, lo, hi, flo, fhi, done, iters);
  if (iters >= 300)
    throw NumericalError("no convergence after 300 iterations; bracket [" + std::to_string(root.first) +
                         ", " + std::to_string(root.second) + "]");
  ShootingResult res = shoot(inst, 0.5 * (root.first + root.second), c);
  if (!(std::abs(res.miss_distance) < 1e-6))
    throw NumericalError("sign change at eps = " + std::to_string(res.epsilon) +
                         " is not a root (miss " + std::to_string(res.miss_distance) + ")");
  return res;
}

std::vector<ShootingResult> scan_eigenvalues(const ProblemInstance& inst, double lo, double hi, int points,
                                             const ShootingConfig& cfg) {
  if (points < 2 || !(lo < hi)) throw ValidationError("scan needs lo < hi and at least 2 points");
  std::vector<double> e(points), m(points, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < points; ++i) {
    e[i] = lo + (hi - lo) * i / (points - 1);
    try {
      m[i] = shoot(inst, e[i], cfg).miss_distance;
    } catch (const DomainError&) {
    }
  }
  std::vector<ShootingResult> out;
  for (int i = 0; i + 1 < points; ++i) {
    if (!std::isfinite(m[i]) || !std::isfinite(m[i + 1]) || (m[i] > 0.0) == (m[i + 1] > 0.0)) continue;
    try {
      out.push_back(find_eigenvalue(inst, {e[i], e[i + 1]}, cfg));
    } catch (const NoRootInBracket&) {
    } catch (const NumericalError&) {
    }
  }
  return out;
}

ShootingResult nearest_eigenvalue(const ProblemInstance& inst, double guess, double half_width,
                                  const ShootingConfig& cfg) {
  ShootingConfig c = resolve_config(inst, guess, cfg);
  const auto roots = scan_eigenvalues(inst, guess - half_width, guess + half_width, 41, c);
  if (roots.empty())
    throw NoRootInBracket("no eigenvalue within " + std::to_string(half_width) + " of " + std::to_string(guess));
  return *std::min_element(roots.begin(), roots.end(), [guess](const auto& a, const auto& b) {
    return std::abs(a.epsilon - guess) < std::abs(b.epsilon - guess);
  });
}

} // namespace diracqes
