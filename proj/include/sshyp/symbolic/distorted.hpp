#ifndef SSHYP_SYMBOLIC_DISTORTED_HPP
#define SSHYP_SYMBOLIC_DISTORTED_HPP

#include <algorithm>

#include "sshyp/core/refine.hpp"
#include "sshyp/symbolic/sft.hpp"

namespace sshyp {

// min(dist, cap) on the subshift: adapted, but self-similarity fails once
// lambda * dist exceeds the cap.
inline WrappedSystem<BiSequence> truncated_shift_base(const SubshiftSystem& sys, double cap = 0.3,
                                                      double xi = 0.125) {
  WrappedSystem<BiSequence>::Parts parts;
  const double lambda = sys.expanding_factor();
  parts.forward = [sys](const BiSequence& x) { return sys.forward(x); };
  parts.backward = [sys](const BiSequence& x) { return sys.backward(x); };
  parts.distance = [sys, lambda, cap](const BiSequence& x, const BiSequence& y) {
    return std::min(to_real(sys.distance(x, y), lambda), cap);
  };
  parts.lambda = lambda;
  parts.xi = xi;
  parts.diameter = cap;
  parts.bracket = [sys](const BiSequence& x, const BiSequence& y) { return sys.bracket(x, y); };
  // Any distance below the cap forces agreement at index 0.
  parts.bracket_radius = std::min(cap, 1.0);
  return WrappedSystem<BiSequence>(std::move(parts));
}

inline WrappedSystem<BiSequence> refined_shift(const SubshiftSystem& sys, double cap = 0.3, double xi = 0.125,
                                               double tol = 1e-6) {
  return refine_metric(truncated_shift_base(sys, cap, xi), RefineOptions{sys.expanding_factor(), tol, false, xi});
}

}  // namespace sshyp

#endif  // SSHYP_SYMBOLIC_DISTORTED_HPP
