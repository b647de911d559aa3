#include "sigma_scan.hpp"

#include "diracqes/error.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace diracqes::detail {

std::vector<Minimum> refined_minima(const std::function<double(double)>& f, double lo, double hi,
                                    int grid, double accept, double merge) {
  if (!(lo < hi)) throw ValidationError("scan range is empty");
  if (grid < 2) throw ValidationError("scan grid needs at least two points");
  const double inf = std::numeric_limits<double>::infinity();
  const double h = (hi - lo) / (grid - 1);
  std::vector<double> xs(grid), fs(grid);
  for (int i = 0; i < grid; ++i) {
    xs[i] = i + 1 == grid ? hi : lo + i * h;
    const double v = f(xs[i]);
    fs[i] = std::isfinite(v) ? v : inf;
  }
  std::vector<Minimum> found;
  for (int i = 0; i < grid; ++i) {
    if (!std::isfinite(fs[i])) continue;
    const double left = i > 0 ? fs[i - 1] : inf;
    const double right = i + 1 < grid ? fs[i + 1] : inf;
    if (fs[i] > left || fs[i] > right) continue;
    if (fs[i] == left && i > 0) continue; // plateau already handled at its first point
    const double a = xs[std::max(i - 1, 0)], b = xs[std::min(i + 1, grid - 1)];
    auto g = [&](double x) {
      const double v = f(x);
      return std::isfinite(v) ? v : inf;
    };
    boost::uintmax_t iters = 200;
    auto [x, v] = boost::math::tools::brent_find_minima(g, a, b, std::numeric_limits<double>::digits, iters);
    if (fs[i] < v) {
      x = xs[i];
      v = fs[i];
    }
    // Near a simple root f ~ |s (x - x*)|; Brent stops at sqrt(machine eps), so finish by
    // intersecting the two linear flanks.
    for (double rel : {1e-6, 1e-8, 1e-10}) {
      const double d = rel * std::max(1.0, std::abs(x));
      if (x - d < lo || x + d > hi) break;
      const double fa = g(x - d), fb = g(x + d);
      if (!std::isfinite(fa) || !std::isfinite(fb) || fa + fb <= 0.0) break;
      const double xn = x - d + 2.0 * d * fa / (fa + fb);
      const double vn = g(xn);
      if (!(vn < v)) break;
      x = xn;
      v = vn;
    }
    if (v < accept) found.push_back({x, v});
  }
  std::sort(found.begin(), found.end(), [](const Minimum& p, const Minimum& q) { return p.x < q.x; });
  std::vector<Minimum> merged;
  for (const auto& m : found) {
    if (!merged.empty() && std::abs(m.x - merged.back().x) <= merge) {
      if (m.value < merged.back().value) merged.back() = m;
      continue;
    }
    merged.push_back(m);
  }
  return merged;
}

std::pair<double, double> singular_range(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd a = m;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double n = a.col(j).norm();
    if (n > 0.0) a.col(j) /= n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  const double smin = m.rows() < m.cols() ? 0.0 : s(s.size() - 1);
  return {smin, s(0)};
}

} // namespace diracqes::detail
