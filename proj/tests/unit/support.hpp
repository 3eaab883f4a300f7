#ifndef SSHYP_TESTS_SUPPORT_HPP
#define SSHYP_TESTS_SUPPORT_HPP

// Shared oracles and hand-rolled generators. Oracles here are deliberately
// naive (brute-force scans and enumerations) and never call the code paths
// they are used to check.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "sshyp/symbolic/bisequence.hpp"
#include "sshyp/symbolic/sft.hpp"
#include "sshyp/symbolic/transition_matrix.hpp"

namespace sshyp::test {

inline constexpr double kPhi = std::numbers::phi;
inline const double kCatMu = (3.0 + std::sqrt(5.0)) / 2.0;

// All-zeros except value 1 at the listed indices.
inline BiSequence zeros_with_ones(std::initializer_list<long> at) {
  BiSequence x = BiSequence::constant(0);
  for (long i : at) x = x.with_symbol(i, 1);
  return x;
}

// First disagreement by |i|, scanning outward; tails are eventually periodic
// so a wide scan is exhaustive for the sequences the generators build.
inline std::optional<long> scan_disagreement(const BiSequence& a, const BiSequence& b, long reach = 200) {
  for (long n = 0; n <= reach; ++n) {
    if (a.at(n) != b.at(n) || a.at(-n) != b.at(-n)) return n;
  }
  return std::nullopt;
}

// dist = lambda^(1 - D), capped at lambda when D = 0.
inline double oracle_distance(const BiSequence& a, const BiSequence& b, double lambda) {
  const auto d = scan_disagreement(a, b);
  if (!d) return 0.0;
  return std::pow(lambda, 1.0 - static_cast<double>(*d));
}

// Words of length L over n symbols, filtered by the matrix, by brute force.
inline std::vector<Word> brute_words(const TransitionMatrix& a, int length) {
  std::vector<Word> out;
  const int n = a.size();
  long total = 1;
  for (int i = 0; i < length; ++i) total *= n;
  for (long code = 0; code < total; ++code) {
    Word w(static_cast<std::size_t>(length));
    long c = code;
    for (int i = length - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<Symbol>(c % n);
      c /= n;
    }
    bool ok = true;
    for (int i = 0; i + 1 < length && ok; ++i) ok = a.allowed(w[i], w[i + 1]);
    if (ok) out.push_back(std::move(w));
  }
  return out;
}

// Random admissible sequence with a random word on [-radius, radius].
inline BiSequence gen_point(const TransitionMatrix& a, Rng& rng, int radius = 8) {
  return random_point(a, rng, radius);
}

inline int gen_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool gen_bool(Rng& rng) { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }
inline double gen_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// y differing from x first at |i| = d (requires an admissible alternative).
// Returns nullopt when no symbol can be changed there within the matrix.
inline std::optional<BiSequence> gen_perturbed(const TransitionMatrix& a, const BiSequence& x, long i) {
  for (int s = 0; s < a.size(); ++s) {
    if (s == x.at(i)) continue;
    const BiSequence y = x.with_symbol(i, static_cast<Symbol>(s));
    if (a.allowed(y.at(i - 1), y.at(i)) && a.allowed(y.at(i), y.at(i + 1))) return y;
  }
  return std::nullopt;
}

}  // namespace sshyp::test

#endif  // SSHYP_TESTS_SUPPORT_HPP
