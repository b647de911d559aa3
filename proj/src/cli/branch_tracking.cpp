#include "diracqes/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace diracqes::cli {

namespace {

struct Track {
  int id;
  int energy_branch;
  int last_point;
  ScanRoot last;
  ScanRoot previous;
  bool has_previous = false;
};

} // namespace

std::vector<ScanRow> track_branches(const std::vector<double>& sweep_values,
                                    const std::vector<std::vector<ScanRoot>>& roots) {
  std::vector<ScanRow> rows;
  std::vector<Track> tracks;
  int next_id = 0;
  for (size_t p = 0; p < roots.size(); ++p) {
    std::vector<ScanRoot> here = roots[p];
    std::sort(here.begin(), here.end(), [](const ScanRoot& a, const ScanRoot& b) {
      return std::tie(a.energy_branch, a.fixed_coupling, a.epsilon) <
             std::tie(b.energy_branch, b.fixed_coupling, b.epsilon);
    });

    // Candidate pairs from tracks alive at the previous point.
    struct Pair {
      double d;
      size_t track, root;
    };
    std::vector<Pair> pairs;
    for (size_t t = 0; t < tracks.size(); ++t) {
      const Track& tr = tracks[t];
      if (tr.last_point + 1 != static_cast<int>(p)) continue;
      double pc = tr.last.fixed_coupling, pe = tr.last.epsilon;
      if (tr.has_previous) {
        pc = 2.0 * pc - tr.previous.fixed_coupling;
        pe = 2.0 * pe - tr.previous.epsilon;
      }
      for (size_t r = 0; r < here.size(); ++r) {
        if (here[r].energy_branch != tr.energy_branch) continue;
        pairs.push_back({std::hypot(here[r].fixed_coupling - pc, here[r].epsilon - pe), t, r});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return std::tie(a.d, a.track, a.root) < std::tie(b.d, b.track, b.root);
    });
    std::vector<int> owner(here.size(), -1);
    std::vector<bool> used(tracks.size(), false);
    for (const auto& pr : pairs) {
      if (used[pr.track] || owner[pr.root] >= 0) continue;
      used[pr.track] = true;
      owner[pr.root] = static_cast<int>(pr.track);
    }
    for (size_t r = 0; r < here.size(); ++r) {
      if (owner[r] < 0) {
        tracks.push_back({next_id++, here[r].energy_branch, static_cast<int>(p), here[r], here[r], false});
        owner[r] = static_cast<int>(tracks.size()) - 1;
      } else {
        Track& tr = tracks[owner[r]];
        tr.previous = tr.last;
        tr.has_previous = true;
        tr.last = here[r];
        tr.last_point = static_cast<int>(p);
      }
    }
    std::vector<ScanRow> block;
    for (size_t r = 0; r < here.size(); ++r)
      block.push_back({sweep_values[p], tracks[owner[r]].id, here[r].fixed_coupling, here[r].epsilon,
                       here[r].sigma_min});
    std::sort(block.begin(), block.end(), [](const ScanRow& a, const ScanRow& b) { return a.branch_id < b.branch_id; });
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

} // namespace diracqes::cli
