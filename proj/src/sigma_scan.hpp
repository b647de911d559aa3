#pragma once

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

namespace diracqes::detail {

struct Minimum {
  double x;
  double value;
};

/// Local minima of f on a uniform grid over [lo, hi] (endpoints included), each refined
/// inside its neighbouring cells; keeps those with value < accept, merged within `merge`.
/// f may return +inf for infeasible points.
std::vector<Minimum> refined_minima(const std::function<double(double)>& f, double lo, double hi,
                                    int grid, double accept, double merge);

/// Smallest and largest singular value after scaling every column to unit norm, so the
/// result does not depend on how each unknown is normalised.
std::pair<double, double> singular_range(const Eigen::MatrixXd& m);

} // namespace diracqes::detail
