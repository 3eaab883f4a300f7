#ifndef SSHYP_CORE_REFINE_HPP
#define SSHYP_CORE_REFINE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sshyp/core/dynamics.hpp"
#include "sshyp/core/metric_system.hpp"

namespace sshyp {

// A system given by callables. Used for base metrics that are only adapted
// (not self-similar) and for the output of refine_metric.
template <class P>
class WrappedSystem {
 public:
  using Point = P;
  using Distance = double;
  using Map = std::function<P(const P&)>;
  using Metric = std::function<double(const P&, const P&)>;
  using Bracket = std::function<P(const P&, const P&)>;

  struct Parts {
    Map forward;
    Map backward;  // may be empty when the map is only positively expansive
    Metric distance;
    double lambda = 2.0;
    double xi = 0.0;
    double diameter = 0.0;  // upper bound for the metric on the whole space
    double tolerance = 0.0;
    Bracket bracket;        // optional
    double bracket_radius = 0.0;
  };

  explicit WrappedSystem(Parts parts) : parts_(std::make_shared<const Parts>(std::move(parts))) {
    if (!parts_->forward || !parts_->distance) {
      throw std::invalid_argument("WrappedSystem: forward map and metric are required");
    }
    if (!(parts_->lambda > 1.0)) throw std::invalid_argument("WrappedSystem: lambda must exceed 1");
    if (!(parts_->xi > 0.0)) throw std::invalid_argument("WrappedSystem: xi must be positive");
  }

  P forward(const P& p) const { return parts_->forward(p); }
  P backward(const P& p) const {
    if (!parts_->backward) throw std::logic_error("WrappedSystem: map is not invertible");
    return parts_->backward(p);
  }
  double distance(const P& p, const P& q) const { return parts_->distance(p, q); }
  double expanding_factor() const { return parts_->lambda; }
  double expansive_constant() const { return parts_->xi; }
  double tolerance() const { return parts_->tolerance; }
  bool invertible() const { return static_cast<bool>(parts_->backward); }
  double diameter() const { return parts_->diameter; }

  bool has_bracket() const { return static_cast<bool>(parts_->bracket); }
  bool in_bracket_domain(const P& x, const P& y) const {
    return has_bracket() && distance(x, y) < parts_->bracket_radius;
  }
  P bracket(const P& x, const P& y) const {
    if (!in_bracket_domain(x, y)) throw std::invalid_argument("WrappedSystem: outside bracket domain");
    return parts_->bracket(x, y);
  }

  const Parts& parts() const { return *parts_; }

 private:
  std::shared_ptr<const Parts> parts_;
};

struct RefineOptions {
  double lambda = 2.0;
  double tol = 1e-9;
  bool one_sided = false;          // i >= 0 only (positively expansive maps)
  std::optional<double> xi;        // defaults to the base xi
};

// Truncation window: omitted terms are at most diam / lambda^(N+1) < tol.
inline int refinement_window(double diameter, double lambda, double tol) {
  if (!(lambda > 1.0)) throw std::invalid_argument("refine_metric: lambda must exceed 1");
  if (!(tol > 0.0)) throw std::invalid_argument("refine_metric: tolerance must be positive");
  if (!(diameter > 0.0) || !std::isfinite(diameter)) {
    throw std::invalid_argument("refine_metric: base diameter must be positive and finite");
  }
  return std::max(0, static_cast<int>(std::ceil(std::log(diameter / tol) / std::log(lambda))));
}

// dist(x, y) = max_{|i| <= N} dist_F(f^i x, f^i y) / lambda^|i|.
template <class P>
WrappedSystem<P> refine_metric(const WrappedSystem<P>& base, const RefineOptions& opt) {
  const int window = refinement_window(base.diameter(), opt.lambda, opt.tol);
  if (!opt.one_sided && !base.invertible()) {
    throw std::invalid_argument("refine_metric: two-sided refinement needs an invertible map");
  }
  auto parts = base.parts();
  const double lambda = opt.lambda;
  const bool one_sided = opt.one_sided;
  parts.distance = [base, window, lambda, one_sided](const P& x, const P& y) {
    double best = base.distance(x, y);
    if (!std::isfinite(best)) throw std::invalid_argument("refine_metric: non-finite base distance");
    double weight = 1.0;
    P a = x, b = y;
    for (int i = 1; i <= window; ++i) {
      weight /= lambda;
      a = base.forward(a);
      b = base.forward(b);
      best = std::max(best, base.distance(a, b) * weight);
    }
    if (!one_sided) {
      weight = 1.0;
      a = x;
      b = y;
      for (int i = 1; i <= window; ++i) {
        weight /= lambda;
        a = base.backward(a);
        b = base.backward(b);
        best = std::max(best, base.distance(a, b) * weight);
      }
    }
    return best;
  };
  parts.lambda = lambda;
  parts.xi = opt.xi.value_or(base.expansive_constant());
  parts.tolerance = opt.tol;
  if (one_sided) parts.backward = nullptr;
  return WrappedSystem<P>(std::move(parts));
}

struct HolderViolation {
  std::size_t index = 0;
  double base = 0.0;
  double refined = 0.0;
};

struct HolderReport {
  double alpha = 0.0;
  double c = 0.0;  // minimal c with refined <= c * base^alpha on the samples
  std::vector<HolderViolation> violations;  // pairs with base > refined
};

// Sandwich base <= refined <= c * base^alpha with alpha = log lambda / log k.
template <class P>
HolderReport holder_check(const WrappedSystem<P>& base, const WrappedSystem<P>& refined,
                          std::span<const PointPair<P>> samples, double k) {
  const double lambda = refined.expanding_factor();
  if (samples.empty()) throw std::invalid_argument("holder_check: empty sample set");
  if (!(lambda > 1.0) || k < lambda) {
    throw std::invalid_argument("holder_check: need k >= lambda > 1");
  }
  HolderReport report;
  report.alpha = std::log(lambda) / std::log(k);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [p, q] = samples[i];
    const double b = base.distance(p, q);
    const double r = refined.distance(p, q);
    if (b == 0.0) throw std::invalid_argument("holder_check: coincident sample pair");
    if (b > r * (1.0 + 1e-12)) report.violations.push_back({i, b, r});
    report.c = std::max(report.c, r / std::pow(b, report.alpha));
  }
  return report;
}

}  // namespace sshyp

#endif  // SSHYP_CORE_REFINE_HPP
