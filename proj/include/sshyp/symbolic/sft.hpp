#ifndef SSHYP_SYMBOLIC_SFT_HPP
#define SSHYP_SYMBOLIC_SFT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <vector>

#include "sshyp/core/distance.hpp"
#include "sshyp/core/dynamics.hpp"
#include "sshyp/symbolic/bisequence.hpp"
#include "sshyp/symbolic/transition_matrix.hpp"

namespace sshyp {

using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

// Shift on the subshift of finite type with dist(a, b) = lambda^-T(a, b), where
// T is the largest n with a(i) = b(i) for |i| <= n, and dist = lambda when
// a(0) != b(0). With D the first disagreement (by |i|), dist = lambda^(1 - D).
class SubshiftSystem {
 public:
  using Point = BiSequence;
  using Distance = LambdaPower;

  SubshiftSystem(TransitionMatrix matrix, double lambda);

  const TransitionMatrix& matrix() const { return matrix_; }

  Point forward(const Point& x) const { return x.shifted(1); }
  Point backward(const Point& x) const { return x.shifted(-1); }
  Distance distance(const Point& x, const Point& y) const;
  double expanding_factor() const { return lambda_; }
  Distance expansive_constant() const { return LambdaPower::power(-1); }
  double tolerance() const { return 0.0; }
  bool invertible() const { return true; }

  // z(i) = x(i) for i >= 0, y(i) for i < 0: the point of W^s(x) ∩ W^u(y).
  Point bracket(const Point& x, const Point& y) const;
  bool in_bracket_domain(const Point& x, const Point& y) const { return x.at(0) == y.at(0); }

  bool contains(const Point& x) const { return x.admissible(matrix_); }

 private:
  TransitionMatrix matrix_;
  double lambda_;
};

// Sft built from the matrix, checked for admissibility of inputs.
SubshiftSystem sft_new(const TransitionMatrix& matrix, double lambda);

BigInt count_words(const TransitionMatrix& a, int length);
// Number of admissible words of the given length starting with symbol s.
BigInt count_words_from(const TransitionMatrix& a, int s, int length);

// Strict diameter rule: m(eps) = min{m >= 0 : lambda^-m < eps}. Any set of
// diameter < eps lies in one central (2m+1)-cylinder.
int cover_radius(double eps, double lambda);
int cover_radius(const LambdaPower& eps);

BigInt exact_cov(const SubshiftSystem& sys, double eps);
BigInt exact_cov(const SubshiftSystem& sys, const LambdaPower& eps);

struct Cylinder {
  long start = 0;
  Word word;
};

// Throws when the word is not admissible.
Cylinder make_cylinder(const TransitionMatrix& a, long start, Word word);

// The set {y : y(i) = representative(i) for all i <= m}.
struct UnstableCylinder {
  BiSequence representative;
  long m = 0;
  // Nominal diameter lambda^-m (m >= 0); the actual diameter is smaller when
  // the continuation is forced for a few steps.
  LambdaPower nominal_diameter() const { return LambdaPower::power(static_cast<int>(-m)); }
};

std::vector<UnstableCylinder> enumerate_unstable_children(const SubshiftSystem& sys,
                                                         const UnstableCylinder& parent);

// Admissible sequence agreeing with w on [start, start + |w|), continued on
// both sides along shortest paths to the nearest cycles. Deterministic.
BiSequence complete_word(const TransitionMatrix& a, const Word& w, long start);
// Same, but first extends w by uniformly chosen admissible symbols: `extra`
// steps on each side.
BiSequence random_extension(const TransitionMatrix& a, Rng& rng, const Word& w, long start, int extra);
BiSequence random_point(const TransitionMatrix& a, Rng& rng, int radius);

// Pairs with 0 < dist <= xi: agreement on |i| <= T for T uniform in [1, t_max].
std::vector<PointPair<BiSequence>> random_close_pairs(const SubshiftSystem& sys, Rng& rng,
                                                      std::size_t count, int t_max);
// y in W^s_xi(x) (agreement on i >= -1) or W^u_xi(x) (agreement on i <= 1), y != x.
std::vector<PointPair<BiSequence>> random_local_pairs(const SubshiftSystem& sys, Rng& rng,
                                                      std::size_t count, LocalSet set, int reach);

// p, q agreeing on i <= j (j uniform in [2, reach]) projected along stable sets
// onto the unstable plaque through a point agreeing with p on i >= -2.
std::vector<HolonomySample<BiSequence>> random_holonomy_samples(const SubshiftSystem& sys, Rng& rng,
                                                                std::size_t count, int reach);

}  // namespace sshyp

#endif  // SSHYP_SYMBOLIC_SFT_HPP
