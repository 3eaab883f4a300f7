#ifndef SSHYP_SYMBOLIC_TRANSITION_MATRIX_HPP
#define SSHYP_SYMBOLIC_TRANSITION_MATRIX_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sshyp {

using Symbol = std::uint8_t;

// 0/1 transition matrix of a subshift of finite type. Every symbol has a
// successor and a predecessor, so every admissible word extends both ways.
class TransitionMatrix {
 public:
  static constexpr int kMaxSize = 64;

  explicit TransitionMatrix(const std::vector<std::vector<int>>& rows);

  static TransitionMatrix full_shift(int n);
  static TransitionMatrix golden_mean();
  // Non-transitive 4-symbol example: {0,1} feeds {2,3}, never back.
  static TransitionMatrix four_symbol();

  int size() const { return n_; }
  bool allowed(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)] != 0; }
  bool admissible(const std::vector<Symbol>& word) const;
  std::vector<int> successors(int i) const;
  std::vector<int> predecessors(int j) const;

  TransitionMatrix transposed() const;
  // Some power A^m with m <= N^2 - 2N + 2 is strictly positive.
  bool primitive() const;

  std::vector<std::vector<int>> rows() const;
  std::string to_text() const;

  bool operator==(const TransitionMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> a_;
};

}  // namespace sshyp

#endif  // SSHYP_SYMBOLIC_TRANSITION_MATRIX_HPP
