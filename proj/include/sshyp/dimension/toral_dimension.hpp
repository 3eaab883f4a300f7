#ifndef SSHYP_DIMENSION_TORAL_DIMENSION_HPP
#define SSHYP_DIMENSION_TORAL_DIMENSION_HPP

#include <utility>
#include <vector>

#include "sshyp/core/metric_system.hpp"
#include "sshyp/dimension/reports.hpp"
#include "sshyp/torus/toral_system.hpp"

namespace sshyp {

// Geometric covers on a regular G x G sample ((i + 1/2)/G, (j + 1/2)/G) of the
// torus. The sample density delta is the largest d_mode from a sample point to
// a corner of its cell, so every point of the torus is within delta of a sample.
//
//   upper: greedy cover by balls of radius eps/2 - delta (times 1 - 1e-12),
//          whose delta-fattenings have diameter < eps;
//   lower: maximal eps-separated subset of the sample.
struct GeometricCover {
  double epsilon = 0.0;
  int grid = 0;
  double delta = 0.0;
  long upper = 0;
  long lower = 0;
};

// d_mode(x, x + w) for a displacement w, iterating the displacement modulo Z^2.
double toral_dyn_rho(const ToralSystemd& sys, const Eigen::Vector2d& w, DynMode mode);

double sample_density(const ToralSystemd& sys, int grid, DynMode mode);
// Smallest grid with delta <= ratio * eps; throws past max_grid.
int grid_for(const ToralSystemd& sys, double eps, DynMode mode, double ratio = 1.0 / 12.0, int max_grid = 4096);
// Upper bound for the diameter of the torus in the metric.
double toral_diameter(const ToralSystemd& sys);
// Largest eps a cover accepts: eps (1 + lambda) <= rho_min keeps balls linear.
double toral_max_cover_eps(const ToralSystemd& sys);

// Refuses (std::invalid_argument) when delta > eps / 4; returns {1, 1} when eps
// exceeds the diameter.
GeometricCover toral_cover(const ToralSystemd& sys, int grid, double eps, DynMode mode);

// eps_j = top * 2^(-j/2), j = 0..count-1.
std::vector<double> half_octave_schedule(double top, int count);

CapacityFit toral_capacity(const ToralSystemd& sys, const std::vector<double>& eps, double ratio = 1.0 / 12.0);

// Cover growth under d_n^f, d_n^+, d_n^- at threshold eps for n = 1..n_max.
// The cover threshold stays inside the linear regime, where the growth has no
// transient, so the rates are fitted over the whole n range.
EntropyReport toral_entropy(const ToralSystemd& sys, double eps, int n_max, double ratio = 1.0 / 12.0);

FundamentalReport toral_check_fundamental(const ToralSystemd& sys, const std::vector<double>& eps,
                                          double entropy_eps, int n_max);

// Unstable-segment version: capacity of W^u_xi(x) against ent^+ / log lambda.
FundamentalReport toral_check_fundamental_unstable(const ToralSystemd& sys, const std::vector<double>& eps,
                                                   int n_max);

// cov_{xi/lambda^k}(M, dist) against cov_xi(M, d_k^f): both sides as [lower, upper] brackets; equal means
// the brackets overlap.
std::vector<CovIdentityRow> toral_cov_identity(const ToralSystemd& sys, int k_first, int k_last,
                                               double ratio = 1.0 / 12.0);

// ent^+(W^u_xi(x)) from covers of the unstable segment through x under d_n^+.
double toral_local_unstable_entropy(const ToralSystemd& sys, const Eigen::Vector2d& x, int n_max,
                                    double ratio = 1.0 / 12.0);

}  // namespace sshyp

#endif  // SSHYP_DIMENSION_TORAL_DIMENSION_HPP
