#include "oracles.hpp"

#include "diracqes/cli.hpp"
#include "diracqes/error.hpp"
#include "diracqes/exact.hpp"
#include "diracqes/oracle.hpp"
#include "diracqes/qes.hpp"
#include "diracqes/radial_operator.hpp"
#include "diracqes/second_order.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace diracqes;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.notes.push_back(std::string("exception: ") + e.what());
  }
  std::printf("%s criterion %d: %s | %s(%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.str().c_str(), seconds_since(t0));
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

ProblemInstance oscillator_instance() {
  return preset(PresetName::DiracOscillator, {{"M", 1.0}, {"kappa", 1.0}, {"mu_n", 1.0}});
}

/// Count of accepted extended-QES roots over both energy branches.
int extended_root_count(double alpha) {
  const ExtendedQesSystem sys = extended_build(1, 1, 1.0, alpha, 4.0, 3.0);
  int count = 0;
  for (EnergyBranch b : {EnergyBranch::Plus, EnergyBranch::Minus})
    count += static_cast<int>(extended_solve(sys, {-200.0, 200.0}, 4001, b).size());
  return count;
}

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  PhysicalParams p;
  p.M = 1.0;
  p.kappa = 1.0;
  p.mu_n = 1.0;
  const ExactSpectrumResult spec = oscillator_spectrum(p, 5);
  const ProblemInstance inst = oscillator_instance();
  double worst = 0.0;
  for (const ExactLevel& l : spec.levels) {
    const double expect = std::sqrt(1.0 + 4.0 * l.n);
    o.require(std::abs(l.epsilon_plus - expect) < 1e-14, "algebraic level n=" + std::to_string(l.n));
    // n = 0 is realised on the negative root
    const ExactRoot& root = l.plus.admits_polynomial ? l.plus : l.minus;
    o.require(root.admits_polynomial, "polynomial eigen-spinor at n=" + std::to_string(l.n));
    const ShootingResult r = find_eigenvalue(inst, {root.epsilon - 0.05, root.epsilon + 0.05});
    worst = std::max(worst, std::abs(r.epsilon - root.epsilon));
    o.require(r.node_count == l.n, "node count at n=" + std::to_string(l.n));
  }
  const double t = seconds_since(t0);
  o.require(worst < 1e-6, "oracle agreement");
  o.require(t < 5.0, "runtime below 5 s");
  o.detail << "max |d eps| = " << fmt(worst) << ", n=0..5 ";
}

void criterion2(Outcome& o) {
  const ProblemInstance inst = oscillator_instance();
  double worst_at = 0.0, least_off = 1e300;
  for (int n = 1; n <= 5; ++n) {
    const double eps = std::sqrt(1.0 + 4.0 * n);
    auto overflow = [&](double e) {
      const RadialOperator op = conjugate(dirac_operator(inst, e), oscillator_transform(1.0, 1.0, 1.0, e));
      return matrix_rep(op, n - 1, n).max_overflow() / op.scale();
    };
    worst_at = std::max(worst_at, overflow(eps));
    least_off = std::min(least_off, overflow(eps + 1e-3));
  }
  o.require(worst_at < 1e-9, "overflow rows at quantized energies");
  o.require(least_off >= 1e-4, "overflow rows off the quantized energies");
  o.detail << "max overflow at eps_n = " << fmt(worst_at) << ", min at eps_n+1e-3 = " << fmt(least_off) << " ";
}

void criterion3(Outcome& o) {
  PhysicalParams p;
  p.M = 1.0;
  p.kappa = -1.0;
  const double alpha = 0.5;
  const ProblemInstance inst =
      preset(PresetName::DiracCoulomb, {{"M", 1.0}, {"kappa", -1.0}, {"alpha", alpha}, {"beta", 0.0}});
  double worst_alg = 0.0, worst_oracle = 0.0, e1 = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double N = n + std::sqrt(p.kappa * p.kappa - alpha * alpha);
    const double closed = p.M * N / std::sqrt(N * N + alpha * alpha);
    const double eps = coulomb_energy(p, alpha, 0.0, n);
    if (n == 1) e1 = eps;
    worst_alg = std::max(worst_alg, std::abs(eps - closed));
    const ShootingResult r = find_eigenvalue(inst, {eps - 1e-3, eps + 1e-3});
    worst_oracle = std::max(worst_oracle, std::abs(r.epsilon - eps));
  }
  o.require(worst_alg < 1e-12, "bisection root equals closed form");
  o.require(worst_oracle < 1e-6, "oracle agreement");
  o.require(std::abs(e1 - 0.9659258) < 5e-8, "n=1 value");
  o.detail << "eps_1 = " << e1 << ", max |bisection - closed| = " << fmt(worst_alg)
           << ", max |oracle - algebra| = " << fmt(worst_oracle) << " ";
}

void criterion4(Outcome& o) {
  const ExactSpectrumResult spec = extended_oscillator_spectrum(1.0, 1, 4.0, 3.0, 0);
  const ProblemInstance& inst = spec.instance;
  const double R = 5.0, c = 3.0 / 5.0;
  o.require(std::abs(inst.potentials.alpha) == 0.0, "alpha = 0 on the forced set");
  o.require(std::abs(inst.potentials.beta + 4.0 / 3.0) < 1e-14, "beta = -4 kappa / 3");
  o.require(std::abs(inst.potentials.gamma_poly[0] + 4.0 / 3.0) < 1e-14, "gamma0 = -4/3");
  std::vector<std::string> confirmed, missing;
  for (int n = 0; n <= 3; ++n) {
    const double e2 = 1.0 / (c * c) + 2.0 * n * R;
    bool found = false;
    for (double s : {1.0, -1.0}) {
      const double e = s * std::sqrt(e2);
      try {
        const ShootingResult r = nearest_eigenvalue(inst, e, 1e-2);
        if (std::abs(r.epsilon - e) < 1e-6) found = true;
      } catch (const NoRootInBracket&) {
      }
    }
    (found ? confirmed : missing).push_back(std::to_string(n));
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s.empty() ? std::string("none") : s;
  };
  o.require(missing.empty(), "oracle eigenvalue at E^2 = 25/9 + 10n for n in {" + join(missing) + "}");
  o.detail << "E^2 = 25/9 + 10n confirmed for n in {" << join(confirmed) << "} ";
  // the levels the forced potential set does carry
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    const double e = (n == 0 ? -1.0 : 1.0) * std::sqrt(25.0 / 9.0 + 20.0 * n);
    worst = std::max(worst, std::abs(nearest_eigenvalue(inst, e, 1e-2).epsilon - e));
  }
  o.notes.push_back("note: oracle levels follow E^2 = 25/9 + 20n (n=0..3, max |d eps| = " + fmt(worst) + ")");
}

void criterion5(Outcome& o) {
  const auto sols = planar_n0_closed_form(-0.5, 0.0);
  o.require(!sols.empty(), "closed form branch");
  const PlanarSystem sys = planar_build(0, -0.5, 0.0);
  double worst_consistency = 0.0;
  for (const auto& s : sols) {
    o.require(std::abs(s.fixed_coupling - 0.5) < 1e-14, "alpha = 1/2");
    o.require(std::abs(s.epsilon * s.epsilon - 0.5) < 1e-14, "eps^2 = 1/2");
    const double gamma = std::sqrt(std::max(0.0, 0.25 - s.fixed_coupling * s.fixed_coupling));
    worst_consistency = std::max(worst_consistency, std::abs(s.epsilon * s.epsilon - (0.0 + gamma - 0.5 + 0 + 1)));
  }
  o.require(worst_consistency < 1e-12, "eps^2 = M^2 + gamma + kappa + n + 1");
  const auto found = planar_solve(sys, {-0.5, 0.5}, 401);
  double best = 1e300;
  for (const auto& s : found) best = std::min(best, std::abs(std::abs(s.fixed_coupling) - 0.5));
  o.require(best < 1e-10, "planar_solve recovers alpha");
  o.detail << "consistency = " << fmt(worst_consistency) << ", |alpha_solve - 1/2| = " << fmt(best) << " ";
}

void criterion6(Outcome& o) {
  const auto t0 = Clock::now();
  const int points = 11;
  const double h = 0.1;
  std::vector<double> Ms;
  std::vector<std::vector<cli::ScanRoot>> roots;
  double worst_sigma = 0.0;
  bool counts_ok = true;
  auto solve_at = [](double M) { return planar_solve(planar_build(1, 0.5, M), {-0.5, 0.5}, 401); };
  auto to_roots = [](const std::vector<QesSolution>& sols) {
    std::vector<cli::ScanRoot> r;
    for (const auto& s : sols) r.push_back({s.fixed_coupling, s.epsilon, s.sigma_min / s.sigma_max, s.branch_id});
    return r;
  };
  for (int i = 0; i < points; ++i) {
    const double M = i * h;
    const auto sols = solve_at(M);
    std::set<long long> eps;
    for (const auto& s : sols) {
      eps.insert(std::llround(s.epsilon * 1e9));
      worst_sigma = std::max(worst_sigma, s.sigma_min / s.sigma_max);
    }
    if (sols.size() != 4 || eps.size() != 2) counts_ok = false;
    Ms.push_back(M);
    roots.push_back(to_roots(sols));
  }
  const auto rows = cli::track_branches(Ms, roots);
  std::map<int, std::vector<cli::ScanRow>> branches;
  for (const auto& r : rows) branches[r.branch_id].push_back(r);
  o.require(counts_ok, "4 alpha roots and 2 eps values at every M");
  o.require(worst_sigma < 1e-8, "sigma_min below 1e-8");
  o.require(branches.size() == 4, "four continuous branches");
  // continuity: steps bounded by 10 x spacing x local slope from a 1e-4 difference
  double worst_ratio = 0.0;
  for (const auto& [id, br] : branches) {
    o.require(br.size() == static_cast<size_t>(points), "branch " + std::to_string(id) + " spans the sweep");
    std::vector<double> slope(br.size());
    for (size_t i = 0; i < br.size(); ++i) {
      const auto near = solve_at(br[i].sweep_value + 1e-4);
      double best = 1e300, ds = 0.0;
      for (const auto& s : near) {
        const double d = std::hypot(s.fixed_coupling - br[i].fixed_coupling, s.epsilon - br[i].epsilon);
        if (d < best) {
          best = d;
          ds = std::abs(s.fixed_coupling - br[i].fixed_coupling) / 1e-4;
        }
      }
      slope[i] = ds;
    }
    for (size_t i = 0; i + 1 < br.size(); ++i) {
      const double step = std::abs(br[i + 1].fixed_coupling - br[i].fixed_coupling);
      const double bound = 10.0 * h * std::max(slope[i], slope[i + 1]);
      worst_ratio = std::max(worst_ratio, step / bound);
    }
  }
  o.require(worst_ratio < 1.0, "continuity bound");
  const double t = seconds_since(t0);
  o.require(t < 60.0, "runtime below 60 s");
  o.detail << "branches = " << branches.size() << ", max sigma_min = " << fmt(worst_sigma)
           << ", max step / bound = " << fmt(worst_ratio) << " ";
}

void criterion7(Outcome& o) {
  o.require(extended_root_count(0.5) == 2, "two gamma0 roots at alpha = 0.5");
  o.require(extended_root_count(0.05) == 0, "no root at alpha = 0.05");
  o.require(extended_root_count(0.95) == 0, "no root at alpha = 0.95");
  // coarse scan, then bisection on root existence at each end
  double first = -1.0, last = -1.0;
  for (int i = 0; i <= 90; ++i) {
    const double a = 0.05 + 0.01 * i;
    if (extended_root_count(a) > 0) {
      if (first < 0.0) first = a;
      last = a;
    }
  }
  o.require(first > 0.0, "roots inside the scan");
  auto edge = [](double inside, double outside) {
    for (int k = 0; k < 14; ++k) {
      const double mid = 0.5 * (inside + outside);
      (extended_root_count(mid) > 0 ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  const double lo = edge(first, first - 0.01), hi = edge(last, last + 0.01);
  o.require(std::abs(lo - 0.097) <= 0.02, "lower edge near 0.097");
  o.require(std::abs(hi - 0.92) <= 0.02, "upper edge near 0.92");
  o.detail << "real gamma0 roots for alpha in [" << fmt(lo) << ", " << fmt(hi) << "] ";
}

void criterion8(Outcome& o) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0, worst_hand = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const int n = draw % 4;
    const SecondOrderT t = t_build(u(rng), u(rng), u(rng), u(rng), double(n), u(rng));
    const QesDecomposition d = t_qes_decompose(t, n);
    worst = std::max(worst, d.expand().distance(t.op()));
    for (int k = 0; k <= n + 2; ++k) {
      const Poly p = Poly::monomial(k);
      const Poly lhs =
          Poly::monomial(1) * oracles::expr_by_hand(d.t_qes, n, p) + oracles::expr_by_hand(d.s_qes, n, p);
      worst_hand = std::max(worst_hand, (lhs - oracles::t_by_hand(t, p)).max_abs() / std::max(1.0, lhs.max_abs()));
    }
  }
  o.require(worst < 1e-12, "round trip");
  o.require(worst_hand < 1e-12, "round trip through generator actions");

  // one extra relation: both surplus rows vanish at the root and only there
  const double M = 0.5;
  const PlanarSystem sys = planar_build(1, 0.5, M);
  const auto sols = planar_solve(sys, {-0.5, 0.5}, 401);
  o.require(sols.size() == 4, "planar n=1 roots");
  double worst_rank = 0.0, worst_extra = 0.0, least_off = 1e300, worst_drift = 0.0, literal = 0.0;
  for (const auto& s : sols) {
    const auto branch = s.epsilon > 0 ? EnergyBranch::Plus : EnergyBranch::Minus;
    auto system = [&](double alpha, double drift_scale) {
      SecondOrderT t = t_from_planar(0.5, M, alpha, sys.epsilon(alpha, branch));
      t.drift = drift_scale * t.x0;
      return t;
    };
    const Eigen::MatrixXd at = system(s.fixed_coupling, 1.0).op().matrix(1, 3).topRows(3);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(at);
    worst_rank = std::max(worst_rank, svd.singularValues()(1) / svd.singularValues()(0));
    auto extra = [](const Eigen::MatrixXd& m) {
      const Eigen::Vector2d q(-m(0, 1) / m(0, 0), 1.0);
      return Eigen::Vector2d((m * q).segment(1, 2));
    };
    worst_extra = std::max(worst_extra, extra(at).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd off = system(s.fixed_coupling + 1e-3, 1.0).op().matrix(1, 3).topRows(3);
    least_off = std::min(least_off, extra(off).cwiseAbs().minCoeff());
    const Poly& Q = s.spinor.upper;
    worst_drift = std::max(worst_drift, system(s.fixed_coupling, 1.0).op().apply(Q).max_abs() / Q.max_abs());
    literal = std::max(literal, system(s.fixed_coupling, 0.0).op().apply(Q).max_abs() / Q.max_abs());
  }
  o.require(worst_rank < 1e-12, "rank n of the (n+2)-row system");
  o.require(worst_extra < 1e-12, "both extra conditions vanish at the root");
  o.require(least_off > 1e-4, "extra conditions nonzero off the root");
  o.detail << "round trip = " << fmt(std::max(worst, worst_hand)) << ", rank gap = " << fmt(worst_rank)
           << ", extra rows at root = " << fmt(worst_extra) << " ";
  o.notes.push_back("open question: displayed T (beta_t = gamma, no drift) leaves |T Q|/|Q| = " + fmt(literal) +
                    "; with drift x0 it is " + fmt(worst_drift));
}

void criterion9(Outcome& o) {
  std::mt19937 rng(1);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const ProblemInstance inst = oracles::random_instance(rng);
    const double eps = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    const GaugeTransform g = oracles::random_gauge(rng, false);
    const RadialOperator h = dirac_operator(inst, eps);
    const PolySpinor phi = oracles::random_spinor(rng);
    worst = std::max(worst, oracles::relative_difference(apply(conjugate(h, g), phi), oracles::direct_action(h, g, phi)));
  }
  o.require(worst < 1e-12, "conjugation equals direct action");

  struct Case {
    ProblemInstance inst;
    double eps;
  };
  auto coulomb = [](double kappa) {
    return preset(PresetName::DiracCoulomb, {{"M", 1.0}, {"kappa", kappa}, {"alpha", 0.5}, {"beta", 0.0}});
  };
  auto sommerfeld = [](double kappa, int n) {
    const double N = n + std::sqrt(kappa * kappa - 0.25);
    return N / std::sqrt(N * N + 0.25);
  };
  const Case cases[] = {
      {oscillator_instance(), -1.0},
      {oscillator_instance(), std::sqrt(5.0)},
      {oscillator_instance(), 3.0},
      {oscillator_instance(), std::sqrt(13.0)},
      {coulomb(-1.0), sommerfeld(-1.0, 1)},
      {coulomb(-1.0), sommerfeld(-1.0, 3)},
      {coulomb(2.0), sommerfeld(2.0, 1)},
      {preset(PresetName::PlanarCoulombMagnetic, {{"M", 0.0}, {"kappa", -0.5}, {"alpha", 0.5}, {"Btilde", 1.0}}),
       std::sqrt(0.5)}};
  double worst_refine = 0.0;
  for (const auto& c : cases) {
    ShootingConfig coarse, fine;
    fine.steps = 2 * coarse.steps;
    const double a = find_eigenvalue(c.inst, {c.eps - 1e-3, c.eps + 1e-3}, coarse).epsilon;
    const double b = find_eigenvalue(c.inst, {c.eps - 1e-3, c.eps + 1e-3}, fine).epsilon;
    worst_refine = std::max(worst_refine, std::abs(a - b));
  }
  o.require(worst_refine < 1e-8, "grid refinement");
  o.detail << "max relative conjugation error = " << fmt(worst) << " over 1000 draws, max refinement shift = "
           << fmt(worst_refine) << " ";
}

} // namespace

int main() {
  const auto t0 = Clock::now();
  report(1, "Dirac oscillator spectrum", criterion1);
  report(2, "invariant subspace overflow rows", criterion2);
  report(3, "Dirac-Coulomb ladder", criterion3);
  report(4, "extended oscillator E^2 = 25/9 + 10n", criterion4);
  report(5, "planar n=0 closed form", criterion5);
  report(6, "planar n=1 root count", criterion6);
  report(7, "extended QES alpha interval", criterion7);
  report(8, "second-order decomposition", criterion8);
  report(9, "property suite", criterion9);
  const double t = seconds_since(t0);
  std::printf("%d of 9 criteria passed, total %.1f s%s\n", 9 - failures, t, t < 300.0 ? "" : " (over 5 min)");
  return failures == 0 ? 0 : 1;
}
