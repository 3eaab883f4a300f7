#ifndef SSHYP_MEASURE_INTRINSIC_HPP
#define SSHYP_MEASURE_INTRINSIC_HPP

#include <vector>

#include "sshyp/measure/hausdorff.hpp"
#include "sshyp/symbolic/sft.hpp"
#include "sshyp/torus/toral_system.hpp"

namespace sshyp {

// d = ent / (2 log lambda) with ent = 2 log rho(A) (two-sided convention).
double intrinsic_exponent(const SubshiftSystem& sys);
// d = log |b| / log lambda for the unstable eigenvalue b.
double intrinsic_exponent(const ToralSystemd& sys);

// Product measure of the box fixing `word` on [start, start + |word|), with
// start <= 0 <= last index: the stable plaque at level -start times the
// unstable plaque at level last.
struct BoxMeasure {
  double stable = 0.0;
  double unstable = 0.0;
  double product = 0.0;
  // Relative change of the product when both plaques are recomputed through a
  // second point of the box (holonomy replacement).
  double holonomy_gap = 0.0;
  bool admissible = true;
};

// Zero measure for inadmissible words; throws when the box does not contain 0.
BoxMeasure box_measure(const SubshiftSystem& sys, const Cylinder& box, int depth);
BoxMeasure box_measure(const SubshiftSystem& sys, const Cylinder& box, int depth, double d);

// mu^d(f(W)) / mu^d(W) for W = W^u_xi(x) or W^s_xi(x), both sides evaluated
// at the same absolute leaf resolution (W at the given depth).
struct ScalingReport {
  LocalSet set = LocalSet::unstable;
  double measure = 0.0;
  double image_measure = 0.0;
  double ratio = 0.0;
  double expected = 0.0;  // lambda^d, or lambda^-d for stable sets
  double deviation = 0.0;
};

ScalingReport scaling_check(const SubshiftSystem& sys, const BiSequence& x, LocalSet set, double d, int depth);

// Boxes C^n(x) fixing x on [-k, k + n]: stable window at scale lambda^-k,
// unstable window at scale lambda^-(k + n).
struct HomogeneityRow {
  int n = 0;
  std::vector<double> masses;  // one per base point
  double ratio = 1.0;          // max / min over base points
  double parry_ratio = 0.0;    // max / min Parry mass over all admissible boxes (n <= 6 only)
};

struct HomogeneityReport {
  int k = 1;
  std::vector<HomogeneityRow> rows;
  double c_observed = 1.0;
  // Product of the extremal plaque-measure ratios; independent of n.
  double c_bound = 1.0;
  double trend_slope = 0.0;  // least-squares slope of log ratio against n
  bool bounded = false;
  bool flat = false;
  bool pass() const { return bounded && flat; }
};

HomogeneityReport homogeneity_check(const SubshiftSystem& sys, const std::vector<BiSequence>& xs, int n_first,
                                    int n_last, int k, int depth);

struct ParryRow {
  Word word;
  double dp_mass = 0.0;  // normalized over all boxes of this length
  double parry_mass = 0.0;
  double relative_gap = 0.0;
};

struct ParryComparison {
  int length = 0;
  std::vector<ParryRow> rows;
  double max_gap = 0.0;
  double total_dp = 0.0;  // sum of normalized masses, 1 up to rounding
};

// All admissible words of the given length, boxes starting at index 0.
ParryComparison parry_compare(const SubshiftSystem& sys, int length, int depth);

// p_ij read off the normalized length-2 box masses against A_ij v_j / (rho v_i).
struct ConditionalRow {
  int from = 0;
  int to = 0;
  double dp = 0.0;
  double closed_form = 0.0;
};
std::vector<ConditionalRow> dp_conditionals(const SubshiftSystem& sys, int depth);

// Closed-form toral box check: the stable and unstable plaques are segments
// of half-lengths s, u; with |.|^e metrics the Hausdorff measure at d is
// (2s)^(e_s d) times (2u)^(e_u d), which at the intrinsic exponent is the
// product of lengths, a constant multiple of the Euclidean area.
struct ToralBoxMeasure {
  double d = 0.0;
  double stable = 0.0;
  double unstable = 0.0;
  double product = 0.0;
  double area = 0.0;
  double ratio = 0.0;  // product / area
};

ToralBoxMeasure toral_box_measure(const ToralSystemd& sys, double s_half, double u_half);

}  // namespace sshyp

#endif  // SSHYP_MEASURE_INTRINSIC_HPP
