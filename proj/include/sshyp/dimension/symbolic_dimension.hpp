#ifndef SSHYP_DIMENSION_SYMBOLIC_DIMENSION_HPP
#define SSHYP_DIMENSION_SYMBOLIC_DIMENSION_HPP

#include <vector>

#include "sshyp/core/metric_system.hpp"
#include "sshyp/dimension/reports.hpp"
#include "sshyp/symbolic/sft.hpp"

namespace sshyp {

// eps_j = 2^-j for j = first..last.
std::vector<double> dyadic_schedule(int first, int last);
// eps_j = lambda^-j for j = first..last. Symbolic covers only change at powers
// of lambda, so other schedules sample the staircase unevenly and bias fits.
std::vector<double> lambda_schedule(double lambda, int first, int last);

// cov_eps on the symbolic space: exact_cov, or 1 once eps exceeds the
// diameter lambda.
CoverPoint cov_eps(const SubshiftSystem& sys, double eps);

// Exact cover counts at each scale.
CoverReport symbolic_cover(const SubshiftSystem& sys, const std::vector<double>& eps);

// Minimal cover of M by sets of d_mode-diameter < eps. Every d_mode-small set
// lies in one cylinder over the union of the shifted central windows.
BigInt cov_dynamic(const SubshiftSystem& sys, const LambdaPower& eps, DynMode mode);

// Least-squares slope of log cov against -log eps with the two largest scales
// dropped. Needs at least 4 scales after dropping.
CapacityFit capacity(const SubshiftSystem& sys, const std::vector<double>& eps);
// Capacity of the local unstable set W^u_xi(x).
CapacityFit capacity_unstable(const SubshiftSystem& sys, const BiSequence& x, const std::vector<double>& eps);

// Growth of cov_xi under d_n^f, d_n^+ and d_n^- for n = 1..n_max; each rate is
// the least-squares slope over the upper half of the n range.
EntropyReport entropy(const SubshiftSystem& sys, int n_max);

FundamentalReport check_fundamental(const SubshiftSystem& sys, const std::vector<double>& eps, int n_max);
FundamentalReport check_fundamental_unstable(const SubshiftSystem& sys, const BiSequence& x,
                                             const std::vector<double>& eps, int n_max);

// Both sides of cov_{xi/lambda^k}(M, dist) = cov_xi(M, d_k^f), as exact integers.
std::vector<CovIdentityRow> cov_identity_check(const SubshiftSystem& sys, int k_first, int k_last);

// ent^+(W^u_xi(x)): slope of log(# continuations of x past index 1 relevant to d_n^+).
double local_unstable_entropy(const SubshiftSystem& sys, const BiSequence& x, int n_max);
LocalEntropyReport local_entropy_homogeneity(const SubshiftSystem& sys, const std::vector<BiSequence>& xs,
                                             int n_max);

// e^(ent / dim); throws for dim = 0.
double ideal_factor(double ent, int dim);
// dim * log(lambda) <= ent.
bool dimension_bound_holds(double ent, int dim, double lambda);

double log_big(const BigInt& v);

}  // namespace sshyp

#endif  // SSHYP_DIMENSION_SYMBOLIC_DIMENSION_HPP
