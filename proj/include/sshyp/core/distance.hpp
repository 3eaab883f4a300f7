#ifndef SSHYP_CORE_DISTANCE_HPP
#define SSHYP_CORE_DISTANCE_HPP

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>

namespace sshyp {

// A distance that is an exact integer power of the expanding factor, or zero.
// Symbolic metrics only ever produce values of this form, so every identity
// involving them can be checked with integer arithmetic on the exponent.
class LambdaPower {
 public:
  constexpr LambdaPower() = default;

  static constexpr LambdaPower zero() { return LambdaPower(); }
  static constexpr LambdaPower power(int exponent) { return LambdaPower(exponent); }

  constexpr bool is_zero() const { return zero_; }
  constexpr int exponent() const { return exponent_; }

  double value(double lambda) const {
    return zero_ ? 0.0 : std::pow(lambda, static_cast<double>(exponent_));
  }

  // lambda^k * this
  constexpr LambdaPower scaled(int k) const {
    return zero_ ? LambdaPower() : LambdaPower(exponent_ + k);
  }

  constexpr bool operator==(const LambdaPower& other) const {
    if (zero_ || other.zero_) return zero_ == other.zero_;
    return exponent_ == other.exponent_;
  }

  constexpr std::strong_ordering operator<=>(const LambdaPower& other) const {
    if (zero_ && other.zero_) return std::strong_ordering::equal;
    if (zero_) return std::strong_ordering::less;
    if (other.zero_) return std::strong_ordering::greater;
    return exponent_ <=> other.exponent_;
  }

  friend std::ostream& operator<<(std::ostream& os, const LambdaPower& d) {
    if (d.zero_) return os << "0";
    return os << "lambda^" << d.exponent_;
  }

 private:
  constexpr explicit LambdaPower(int exponent) : zero_(false), exponent_(exponent) {}

  bool zero_ = true;
  int exponent_ = 0;
};

// Free-function vocabulary shared by floating and exact distances. Generic
// dynamics code is written against these overloads only.

template <std::floating_point T>
double to_real(T d, double /*lambda*/) {
  return static_cast<double>(d);
}
inline double to_real(const LambdaPower& d, double lambda) { return d.value(lambda); }

template <std::floating_point T>
T scale(T d, double lambda, int k) {
  return d * static_cast<T>(std::pow(lambda, static_cast<double>(k)));
}
inline LambdaPower scale(const LambdaPower& d, double /*lambda*/, int k) { return d.scaled(k); }

template <std::floating_point T>
bool is_zero(T d) {
  return d == T(0);
}
inline bool is_zero(const LambdaPower& d) { return d.is_zero(); }

// |observed / expected - 1|; infinite when expected is zero and observed is not.
template <std::floating_point T>
double relative_deviation(T observed, T expected, double /*lambda*/) {
  if (expected == T(0)) {
    return observed == T(0) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(std::abs(observed / expected - T(1)));
}

inline double relative_deviation(const LambdaPower& observed, const LambdaPower& expected,
                                 double lambda) {
  if (observed == expected) return 0.0;
  if (expected.is_zero()) return std::numeric_limits<double>::infinity();
  if (observed.is_zero()) return 1.0;
  return std::abs(std::pow(lambda, observed.exponent() - expected.exponent()) - 1.0);
}

// Scale index m with bound / lambda^(m+1) < d <= bound / lambda^m.
template <std::floating_point T>
int scale_index(T bound, T d, double lambda) {
  // Nudge so that exact powers land on the closed side of the interval.
  const double x = std::log(static_cast<double>(bound / d)) / std::log(lambda);
  return static_cast<int>(std::floor(x + 1e-9));
}

inline int scale_index(const LambdaPower& bound, const LambdaPower& d, double /*lambda*/) {
  return bound.exponent() - d.exponent();
}

}  // namespace sshyp

#endif  // SSHYP_CORE_DISTANCE_HPP
