#ifndef SSHYP_CORE_METRIC_SYSTEM_HPP
#define SSHYP_CORE_METRIC_SYSTEM_HPP

#include <concepts>
#include <stdexcept>
#include <string>

#include "sshyp/core/distance.hpp"

namespace sshyp {

// A homeomorphism (or a positively expansive map, when !invertible()) of a
// compact space together with a metric, its expanding factor lambda and its
// expansive constant xi.
template <class S>
concept MetricSystem = requires(const S& s, const typename S::Point& p) {
  typename S::Point;
  typename S::Distance;
  { s.forward(p) } -> std::same_as<typename S::Point>;
  { s.backward(p) } -> std::same_as<typename S::Point>;
  { s.distance(p, p) } -> std::same_as<typename S::Distance>;
  { s.expanding_factor() } -> std::convertible_to<double>;
  { s.expansive_constant() } -> std::same_as<typename S::Distance>;
  { s.tolerance() } -> std::convertible_to<double>;
  { s.invertible() } -> std::convertible_to<bool>;
};

// Systems with canonical coordinates: bracket(x, y) is the point of
// W^s(x) ∩ W^u(y), defined when in_bracket_domain(x, y).
template <class S>
concept BracketSystem = MetricSystem<S> && requires(const S& s, const typename S::Point& p) {
  { s.bracket(p, p) } -> std::same_as<typename S::Point>;
  { s.in_bracket_domain(p, p) } -> std::convertible_to<bool>;
};

enum class Sidedness { two_sided, forward, backward };

// Orbit window for the dynamical metrics d_n^f (two-sided), d_n^+ and d_n^-.
struct DynMode {
  Sidedness side = Sidedness::two_sided;
  int n = 0;

  static DynMode two_sided(int n) { return {Sidedness::two_sided, n}; }
  static DynMode forward(int n) { return {Sidedness::forward, n}; }
  static DynMode backward(int n) { return {Sidedness::backward, n}; }
};

enum class LocalSet { stable, unstable };

inline std::string to_string(Sidedness s) {
  switch (s) {
    case Sidedness::two_sided: return "two_sided";
    case Sidedness::forward: return "forward";
    case Sidedness::backward: return "backward";
  }
  return "?";
}

inline std::string to_string(LocalSet s) { return s == LocalSet::stable ? "stable" : "unstable"; }

}  // namespace sshyp

#endif  // SSHYP_CORE_METRIC_SYSTEM_HPP
