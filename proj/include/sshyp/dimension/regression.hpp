#ifndef SSHYP_DIMENSION_REGRESSION_HPP
#define SSHYP_DIMENSION_REGRESSION_HPP

#include <span>

namespace sshyp {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the residuals
  int points = 0;
};

// Ordinary least squares y = slope * x + intercept. Throws for fewer than two
// points or when all x coincide.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace sshyp

#endif  // SSHYP_DIMENSION_REGRESSION_HPP
