#ifndef SSHYP_MEASURE_HAUSDORFF_HPP
#define SSHYP_MEASURE_HAUSDORFF_HPP

#include <optional>
#include <string>
#include <vector>

#include "sshyp/core/metric_system.hpp"
#include "sshyp/symbolic/sft.hpp"

namespace sshyp {

// Hausdorff premeasure of a local plaque by the cylinder-cover DP. The plaque
// at level k through x is {y : y(i) = x(i), i <= k} (unstable) or
// {y : y(i) = x(i), i >= -k} (stable), of nominal diameter lambda^-k.
//
// Every set of diameter < lambda^-m lies in one cylinder, so cylinder covers
// are optimal and
//   m(w) = min(diam(w)^d, sum over children m(w a)),  leaves valued diam^d.
// Diameters are actual ones: a cylinder whose continuation is forced for j
// steps has diameter lambda^-(level + j). Values depend only on the last
// fixed symbol and the remaining depth, so the table g[r][s] is kept in units
// of the node's nominal diameter:
//   g[0][s] = lambda^(-j(s) d),  g[r][s] = min(g[0][s], lambda^-d sum_t g[r-1][t]).
struct MeasureTree {
  LocalSet set = LocalSet::unstable;
  double d = 0.0;
  int depth = 0;
  int level = 0;
  int root_state = 0;
  double lambda = 0.0;
  std::vector<std::vector<double>> table;  // table[r][s], r = 0..depth
  double value = 0.0;                      // mu^d_{r(depth)} of the root plaque
  double leaf_diameter = 0.0;              // nominal r(depth) = lambda^-(level + depth)
  std::vector<double> by_depth;            // root value for depth 0..depth, non-increasing
  std::string method = "cylinder-dp";
};

int forced_steps(const TransitionMatrix& a, int s);

MeasureTree hausdorff_estimate(const SubshiftSystem& sys, const BiSequence& x, LocalSet set, int level, double d,
                               int depth);

// Depth policy: run depth and depth + 2; converged iff the relative drift is
// below the threshold. No value is reported when it is not.
struct MeasureEstimate {
  double value_depth = 0.0;
  double value_deeper = 0.0;
  double drift = 0.0;
  bool converged = false;
  std::optional<double> value() const { return converged ? std::optional<double>(value_deeper) : std::nullopt; }
};

MeasureEstimate hausdorff_converged(const SubshiftSystem& sys, const BiSequence& x, LocalSet set, int level,
                                    double d, int depth, double threshold = 0.01);

}  // namespace sshyp

#endif  // SSHYP_MEASURE_HAUSDORFF_HPP
