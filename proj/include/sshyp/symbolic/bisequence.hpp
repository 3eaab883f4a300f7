#ifndef SSHYP_SYMBOLIC_BISEQUENCE_HPP
#define SSHYP_SYMBOLIC_BISEQUENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sshyp/symbolic/transition_matrix.hpp"

namespace sshyp {

using Word = std::vector<Symbol>;

// Bi-infinite sequence with eventually periodic tails:
//   ... L L [center] R R ...
// center occupies [lo, hi), left_.back() sits at lo - 1, right_.front() at hi.
// Kept canonical: tails are primitive words and absorb matching center ends.
class BiSequence {
 public:
  BiSequence(Word left, Word center, long lo, Word right);

  static BiSequence constant(Symbol s) { return BiSequence({s}, {}, 0, {s}); }
  // Word placed at [start, start + |w|) between constant tails.
  static BiSequence with_constant_tails(Symbol left, const Word& w, long start, Symbol right) {
    return BiSequence({left}, w, start, {right});
  }

  Symbol at(long i) const;
  Symbol operator[](long i) const { return at(i); }
  Word window(long from, long to_inclusive) const;

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(center_.size()); }
  const Word& left_tail() const { return left_; }
  const Word& center() const { return center_; }
  const Word& right_tail() const { return right_; }

  // (sigma^k a)_n = a_{n+k}.
  BiSequence shifted(long k) const;

  // Period word of the left tail read so that its last symbol sits at k - 1 (k <= lo).
  Word left_tail_at(long k) const;
  // Period word of the right tail read from position k (k >= hi).
  Word right_tail_at(long k) const;

  // z(i) = past(i) for i < cut, future(i) for i >= cut.
  static BiSequence splice(const BiSequence& past, const BiSequence& future, long cut);
  // Overwrite coordinates [start, start + |w|).
  BiSequence with_window(const Word& w, long start) const;
  BiSequence with_symbol(long i, Symbol s) const { return with_window({s}, i); }

  bool admissible(const TransitionMatrix& a) const;

  std::string to_string() const;

 private:
  void canonicalize();

  Word left_;
  Word center_;
  long lo_ = 0;
  Word right_;
};

// Smallest |i| with a(i) != b(i); nullopt when the sequences are equal.
std::optional<long> first_disagreement(const BiSequence& a, const BiSequence& b);

bool operator==(const BiSequence& a, const BiSequence& b);

}  // namespace sshyp

#endif  // SSHYP_SYMBOLIC_BISEQUENCE_HPP
