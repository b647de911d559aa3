#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diracqes::cli {

enum ExitCode { Success = 0, ConfigFailure = 1, VerifyFailure = 2, NumericalFailure = 3 };

/// --sweep param:start:stop:points
struct Sweep {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  double value(int i) const;
};

/// Throws ConfigError unless the bounds are finite, start < stop and points >= 2.
Sweep parse_sweep(const std::string& text);

/// One algebraic root at one sweep point.
struct ScanRoot {
  double fixed_coupling = 0.0;
  double epsilon = 0.0;
  double sigma_min = 0.0;
  /// Energy branch (0 = +, 1 = -); roots only continue within their own energy branch.
  int energy_branch = 0;
};

struct ScanRow {
  double sweep_value = 0.0;
  int branch_id = 0;
  double fixed_coupling = 0.0;
  double epsilon = 0.0;
  double sigma_min = 0.0;
};

/// Assigns continuation ids by nearest-neighbour matching in (fixed_coupling, epsilon)
/// against the linear prediction from the previous two points of each branch. Roots
/// without a partner open a new id. Rows come out ordered by sweep point, then id.
std::vector<ScanRow> track_branches(const std::vector<double>& sweep_values,
                                    const std::vector<std::vector<ScanRoot>>& roots);

/// Entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace diracqes::cli
