#ifndef SSHYP_CORE_DYNAMICS_HPP
#define SSHYP_CORE_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sshyp/core/distance.hpp"
#include "sshyp/core/metric_system.hpp"

namespace sshyp {

template <class P>
using PointPair = std::pair<P, P>;

// Max of dist over the orbit window selected by mode; dist(x, y) when n == 0.
template <MetricSystem S>
typename S::Distance dyn_metric(const S& sys, const typename S::Point& x,
                                const typename S::Point& y, DynMode mode) {
  if (mode.n < 0) throw std::invalid_argument("dyn_metric: window must be non-negative");
  auto best = sys.distance(x, y);
  if (mode.side != Sidedness::backward) {
    auto a = x;
    auto b = y;
    for (int k = 1; k <= mode.n; ++k) {
      a = sys.forward(a);
      b = sys.forward(b);
      best = std::max(best, sys.distance(a, b));
    }
  }
  if (mode.side != Sidedness::forward) {
    auto a = x;
    auto b = y;
    for (int k = 1; k <= mode.n; ++k) {
      a = sys.backward(a);
      b = sys.backward(b);
      best = std::max(best, sys.distance(a, b));
    }
  }
  return best;
}

struct RejectedPair {
  std::size_t index = 0;
  std::string reason;
};

struct VerificationReport {
  double tolerance = 0.0;
  std::size_t checked = 0;
  std::size_t within_tolerance = 0;
  double max_deviation = 0.0;
  std::optional<std::size_t> worst_pair;
  // |r - 1| per input pair; NaN for rejected pairs.
  std::vector<double> deviations;
  std::vector<RejectedPair> rejected;

  bool pass() const { return rejected.empty() && within_tolerance == checked; }
};

// For every pair with 0 < dist <= xi, compares the larger one-step image
// distance against lambda * dist. Positively expansive systems only have the
// forward image.
template <MetricSystem S>
VerificationReport verify_self_similar(const S& sys,
                                       std::span<const PointPair<typename S::Point>> pairs,
                                       double tol) {
  const double lambda = sys.expanding_factor();
  const auto xi = sys.expansive_constant();
  VerificationReport report;
  report.tolerance = tol;
  report.deviations.assign(pairs.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [p, q] = pairs[i];
    const auto d = sys.distance(p, q);
    if (is_zero(d)) {
      report.rejected.push_back({i, "coincident points"});
      continue;
    }
    if (d > xi) {
      report.rejected.push_back({i, "distance exceeds the expansive constant"});
      continue;
    }
    auto image = sys.distance(sys.forward(p), sys.forward(q));
    if (sys.invertible()) image = std::max(image, sys.distance(sys.backward(p), sys.backward(q)));
    const double dev = relative_deviation(image, scale(d, lambda, 1), lambda);
    report.deviations[i] = dev;
    ++report.checked;
    if (dev <= tol) ++report.within_tolerance;
    if (!report.worst_pair || dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_pair = i;
    }
  }
  return report;
}

struct ExpansionLawReport {
  // Direction in which the first step expanded by exactly lambda.
  std::optional<Sidedness> direction;
  int steps_checked = 0;
  double max_deviation = 0.0;
};

// If one step expands by exactly lambda, the following steps in the same
// direction keep expanding by lambda as long as lambda^(k-1) dist <= xi.
template <MetricSystem S>
ExpansionLawReport expansion_law_check(const S& sys, const typename S::Point& x,
                                       const typename S::Point& y, double tol) {
  const double lambda = sys.expanding_factor();
  const auto xi = sys.expansive_constant();
  const auto d0 = sys.distance(x, y);
  if (is_zero(d0)) throw std::invalid_argument("expansion_law_check: coincident points");

  ExpansionLawReport report;
  auto run = [&](auto step, Sidedness side) {
    auto a = step(x);
    auto b = step(y);
    if (relative_deviation(sys.distance(a, b), scale(d0, lambda, 1), lambda) > tol) return false;
    report.direction = side;
    for (int k = 2; scale(d0, lambda, k - 1) <= xi; ++k) {
      a = step(a);
      b = step(b);
      const double dev = relative_deviation(sys.distance(a, b), scale(d0, lambda, k), lambda);
      report.max_deviation = std::max(report.max_deviation, dev);
      ++report.steps_checked;
    }
    return true;
  };
  if (run([&](const auto& p) { return sys.forward(p); }, Sidedness::forward)) return report;
  if (sys.invertible()) run([&](const auto& p) { return sys.backward(p); }, Sidedness::backward);
  return report;
}

struct ContractionReport {
  LocalSet set = LocalSet::stable;
  // dist(f^n x, f^n y) * lambda^n / dist(x, y) for n = 1..n_max (f^-n for unstable).
  std::vector<double> ratios;
  double max_deviation = 0.0;
  // First iterate that left the xi-neighbourhood, if any: y was not in the local set.
  std::optional<int> separated_at;

  bool precondition_ok() const { return !separated_at.has_value(); }
  bool pass(double tol) const { return precondition_ok() && max_deviation <= tol; }
};

template <MetricSystem S>
ContractionReport stable_contraction_check(const S& sys, const typename S::Point& x,
                                           const typename S::Point& y, LocalSet set, int n_max) {
  const double lambda = sys.expanding_factor();
  const auto xi = sys.expansive_constant();
  const auto d0 = sys.distance(x, y);
  if (is_zero(d0)) throw std::invalid_argument("stable_contraction_check: coincident points");
  if (set == LocalSet::unstable && !sys.invertible()) {
    throw std::invalid_argument("stable_contraction_check: unstable sets need an invertible map");
  }
  ContractionReport report;
  report.set = set;
  if (d0 > xi) {
    report.separated_at = 0;
    return report;
  }
  auto a = x;
  auto b = y;
  for (int n = 1; n <= n_max; ++n) {
    if (set == LocalSet::stable) {
      a = sys.forward(a);
      b = sys.forward(b);
    } else {
      a = sys.backward(a);
      b = sys.backward(b);
    }
    const auto dn = sys.distance(a, b);
    if (dn > xi) {
      report.separated_at = n;
      return report;
    }
    const auto rescaled = scale(dn, lambda, n);
    report.ratios.push_back(to_real(rescaled, lambda) / to_real(d0, lambda));
    report.max_deviation = std::max(report.max_deviation, relative_deviation(rescaled, d0, lambda));
  }
  return report;
}

struct TriangleReport {
  double c0 = 0.0;  // dist(x, y)
  double a = 0.0;   // dist(x, z)
  double b = 0.0;   // dist(z, y)
  std::optional<double> ratio;  // c0 / max{a, b}
  double deviation = 0.0;       // |ratio - 1|, exact for symbolic distances
  int scale_bucket = 0;         // dyadic bucket: floor(-log2 c0)
  bool dynamical_scale = false; // dist(x, y) <= xi / (2 lambda)
};

// Third vertex z = W^u(x) ∩ W^s(y), i.e. bracket(y, x).
template <BracketSystem S>
TriangleReport triangle_ratio(const S& sys, const typename S::Point& x,
                              const typename S::Point& y) {
  const double lambda = sys.expanding_factor();
  const auto c0 = sys.distance(x, y);
  if (is_zero(c0)) throw std::invalid_argument("triangle_ratio: degenerate triangle (x == y)");
  if (!sys.in_bracket_domain(y, x)) {
    throw std::invalid_argument("triangle_ratio: pair outside the bracket domain");
  }
  const auto z = sys.bracket(y, x);
  const auto a = sys.distance(x, z);
  const auto b = sys.distance(z, y);
  const auto longest = std::max(a, b);

  TriangleReport report;
  report.c0 = to_real(c0, lambda);
  report.a = to_real(a, lambda);
  report.b = to_real(b, lambda);
  report.scale_bucket = static_cast<int>(std::floor(-std::log2(report.c0)));
  report.dynamical_scale =
      2.0 * lambda * report.c0 <= to_real(sys.expansive_constant(), lambda) * (1.0 + 1e-12);
  if (!is_zero(longest)) {
    report.ratio = report.c0 / to_real(longest, lambda);
    report.deviation = relative_deviation(c0, longest, lambda);
  }
  return report;
}

template <class P>
struct HolonomySample {
  P p, q;
  P proj_p, proj_q;
};

struct HolonomyReport {
  double observed = 0.0;         // |dist(pi p, pi q) / dist(p, q) - 1|
  int m = 0;                     // xi/lambda^(m+1) < max distance <= xi/lambda^m
  std::optional<double> bound;   // 2 / (lambda^(m-1) - 2), when lambda^(m-1) > 2
  bool within_bound() const { return !bound || observed <= *bound * (1.0 + 1e-12) + 1e-15; }
};

// pi(p) for the holonomy along stable sets onto the unstable plaque through
// plaque_point: the point of W^s(p) ∩ W^u(plaque_point).
template <BracketSystem S>
typename S::Point project_along_stable(const S& sys, const typename S::Point& p,
                                       const typename S::Point& plaque_point) {
  if (!sys.in_bracket_domain(p, plaque_point)) {
    throw std::invalid_argument("project_along_stable: point outside the bracket domain");
  }
  return sys.bracket(p, plaque_point);
}

template <MetricSystem S>
HolonomyReport holonomy_deviation(const S& sys, const typename S::Point& p,
                                  const typename S::Point& q, const typename S::Point& proj_p,
                                  const typename S::Point& proj_q) {
  const double lambda = sys.expanding_factor();
  const auto xi = sys.expansive_constant();
  const auto d = sys.distance(p, q);
  const auto dp = sys.distance(proj_p, proj_q);
  if (is_zero(d) || is_zero(dp)) {
    throw std::invalid_argument("holonomy_deviation: ratio undefined for coincident points");
  }
  if (!(sys.distance(p, proj_p) < xi) || !(sys.distance(q, proj_q) < xi)) {
    throw std::invalid_argument("holonomy_deviation: projection moves a point by xi or more");
  }
  const auto longest = std::max(d, dp);
  if (longest > xi) {
    throw std::invalid_argument("holonomy_deviation: plaque pair wider than xi");
  }
  HolonomyReport report;
  report.observed = relative_deviation(dp, d, lambda);
  report.m = scale_index(xi, longest, lambda);
  const double grow = std::pow(lambda, report.m - 1);
  if (grow > 2.0) report.bound = 2.0 / (grow - 2.0);
  return report;
}

}  // namespace sshyp

#endif  // SSHYP_CORE_DYNAMICS_HPP
