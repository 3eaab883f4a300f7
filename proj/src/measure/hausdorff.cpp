#include "sshyp/measure/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sshyp {

int forced_steps(const TransitionMatrix& a, int s) {
  int steps = 0;
  for (int guard = 0; guard <= a.size(); ++guard) {
    const auto next = a.successors(s);
    if (next.size() != 1) return steps;
    s = next.front();
    ++steps;
  }
  throw std::invalid_argument("forced_steps: continuation never branches (single periodic orbit)");
}

MeasureTree hausdorff_estimate(const SubshiftSystem& sys, const BiSequence& x, LocalSet set, int level, double d,
                               int depth) {
  if (!(d > 0.0)) throw std::invalid_argument("hausdorff_estimate: d must be positive");
  if (level < 0 || depth < 0) throw std::invalid_argument("hausdorff_estimate: level and depth must be non-negative");
  if (!sys.matrix().primitive()) throw std::invalid_argument("hausdorff_estimate: matrix is not primitive");
  // Stable plaques grow to the left: the same DP on the transposed matrix.
  const TransitionMatrix a = set == LocalSet::unstable ? sys.matrix() : sys.matrix().transposed();
  const int n = a.size();
  const double lambda = sys.expanding_factor();
  const double shrink = std::pow(lambda, -d);

  MeasureTree t;
  t.set = set;
  t.d = d;
  t.depth = depth;
  t.level = level;
  t.lambda = lambda;
  t.root_state = set == LocalSet::unstable ? x.at(level) : x.at(-level);
  t.table.assign(static_cast<std::size_t>(depth) + 1, std::vector<double>(static_cast<std::size_t>(n)));
  std::vector<double> cap(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) cap[s] = std::pow(lambda, -forced_steps(a, s) * d);
  t.table[0] = cap;
  for (int r = 1; r <= depth; ++r) {
    for (int s = 0; s < n; ++s) {
      double children = 0.0;
      for (int u : a.successors(s)) children += t.table[r - 1][u];
      t.table[r][s] = std::min(cap[s], shrink * children);
    }
  }
  const double unit = std::pow(lambda, -level * d);
  for (int r = 0; r <= depth; ++r) t.by_depth.push_back(unit * t.table[r][t.root_state]);
  t.value = t.by_depth.back();
  t.leaf_diameter = std::pow(lambda, -(level + depth));
  return t;
}

MeasureEstimate hausdorff_converged(const SubshiftSystem& sys, const BiSequence& x, LocalSet set, int level,
                                    double d, int depth, double threshold) {
  MeasureEstimate e;
  e.value_depth = hausdorff_estimate(sys, x, set, level, d, depth).value;
  e.value_deeper = hausdorff_estimate(sys, x, set, level, d, depth + 2).value;
  e.drift = std::abs(e.value_depth - e.value_deeper) / e.value_deeper;
  e.converged = e.drift < threshold;
  return e;
}

}  // namespace sshyp
