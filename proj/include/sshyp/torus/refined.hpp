#ifndef SSHYP_TORUS_REFINED_HPP
#define SSHYP_TORUS_REFINED_HPP

#include <cmath>
#include <random>
#include <vector>

#include "sshyp/core/refine.hpp"
#include "sshyp/torus/toral_system.hpp"

namespace sshyp {

using TorusPoint = Eigen::Vector2d;

// Flat metric on the torus with the automorphism's dynamics: adapted but not
// self-similar. Brackets are the linear ones, defined below bracket_radius in
// whichever metric the wrapped system carries.
inline WrappedSystem<TorusPoint> euclidean_toral_base(const ToralSystemd& sys, double xi, double bracket_radius) {
  WrappedSystem<TorusPoint>::Parts parts;
  parts.forward = [sys](const TorusPoint& p) { return sys.forward(p); };
  parts.backward = [sys](const TorusPoint& p) { return sys.backward(p); };
  parts.distance = [](const TorusPoint& p, const TorusPoint& q) {
    const TorusPoint d = q - p;
    return TorusPoint(d(0) - std::round(d(0)), d(1) - std::round(d(1))).norm();
  };
  parts.lambda = std::abs(sys.unstable_eigenvalue());
  parts.xi = xi;
  parts.diameter = std::sqrt(0.5);
  parts.bracket = [sys](const TorusPoint& x, const TorusPoint& y) {
    const TorusPoint d = y - x;
    const auto c = sys.su_split(TorusPoint(d(0) - std::round(d(0)), d(1) - std::round(d(1))));
    return ToralSystemd::wrap(x + c.s * sys.stable_unit());
  };
  parts.bracket_radius = bracket_radius;
  return WrappedSystem<TorusPoint>(std::move(parts));
}

// Sup-refinement of the flat metric at a factor below |b|. Self-similar with
// constant xi up to the truncation tolerance.
inline WrappedSystem<TorusPoint> refined_toral(const ToralSystemd& sys, double lambda = 1.8, double xi = 0.08,
                                               double tol = 1e-12) {
  return refine_metric(euclidean_toral_base(sys, xi, xi), RefineOptions{lambda, tol, false, xi});
}

// Doubling map x -> 2x mod 1 with the arc metric, positively expansive.
inline WrappedSystem<double> doubling_base() {
  WrappedSystem<double>::Parts parts;
  parts.forward = [](double x) {
    const double y = 2.0 * x;
    return y - std::floor(y);
  };
  parts.distance = [](double x, double y) {
    const double d = std::abs(x - y);
    return std::min(d, 1.0 - d);
  };
  parts.lambda = 2.0;
  parts.xi = 0.25;
  parts.diameter = 0.5;
  return WrappedSystem<double>(std::move(parts));
}

inline WrappedSystem<double> refined_doubling(double tol = 1e-12) {
  return refine_metric(doubling_base(), RefineOptions{2.0, tol, true, 0.25});
}

// Holonomy samples: p, q on the unstable segment through x, projected along
// stable sets onto the unstable plaque through x + s0 e_s. Offsets are drawn
// with rho <= scale; the projection uses the bracket of `sys`. Draws outside
// its bracket domain are rejected, which matters when sys stretches the
// geometric scale (a refined metric at a factor well below |b|).
template <class S>
std::vector<HolonomySample<TorusPoint>> toral_holonomy_samples(const ToralSystemd& geom, const S& sys,
                                                               double scale, std::size_t count,
                                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double ru = std::pow(scale, 1.0 / geom.exponent_u());
  const double rs = std::pow(scale, 1.0 / geom.exponent_s());
  std::vector<HolonomySample<TorusPoint>> out;
  out.reserve(count);
  const std::size_t max_draws = 1000 * count + 1000;
  for (std::size_t draws = 0; out.size() < count; ++draws) {
    if (draws == max_draws) throw std::invalid_argument("toral_holonomy_samples: scale too large for the bracket domain");
    const TorusPoint x = geom.random_point(rng);
    const TorusPoint p = geom.offset(x, 0.0, ru * unit(rng));
    const TorusPoint q = geom.offset(x, 0.0, ru * unit(rng));
    const TorusPoint y = geom.offset(x, rs * unit(rng), 0.0);
    const double xi = sys.expansive_constant();
    if (sys.distance(p, q) == 0.0 || !(sys.distance(p, q) <= xi)) continue;
    if (!sys.in_bracket_domain(p, y) || !sys.in_bracket_domain(q, y)) continue;
    const TorusPoint pp = project_along_stable(sys, p, y);
    const TorusPoint pq = project_along_stable(sys, q, y);
    if (!(sys.distance(pp, pq) <= xi) || !(sys.distance(p, pp) < xi) || !(sys.distance(q, pq) < xi)) continue;
    out.push_back({p, q, pp, pq});
  }
  return out;
}

}  // namespace sshyp

#endif  // SSHYP_TORUS_REFINED_HPP
