#include "sshyp/symbolic/transition_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace sshyp {

TransitionMatrix::TransitionMatrix(const std::vector<std::vector<int>>& rows) {
  n_ = static_cast<int>(rows.size());
  if (n_ == 0) throw std::invalid_argument("transition matrix: empty");
  if (n_ > kMaxSize) throw std::invalid_argument("transition matrix: more than 64 symbols");
  a_.assign(static_cast<std::size_t>(n_ * n_), 0);
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(rows[i].size()) != n_) {
      throw std::invalid_argument("transition matrix: not square");
    }
    for (int j = 0; j < n_; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) throw std::invalid_argument("transition matrix: entries must be 0 or 1");
      a_[static_cast<std::size_t>(i * n_ + j)] = static_cast<std::uint8_t>(v);
    }
  }
  for (int i = 0; i < n_; ++i) {
    if (successors(i).empty()) {
      throw std::invalid_argument("transition matrix: symbol " + std::to_string(i) +
                                  " has no successor (all-zero row)");
    }
    if (predecessors(i).empty()) {
      throw std::invalid_argument("transition matrix: symbol " + std::to_string(i) +
                                  " has no predecessor (all-zero column)");
    }
  }
}

TransitionMatrix TransitionMatrix::full_shift(int n) {
  return TransitionMatrix(std::vector<std::vector<int>>(static_cast<std::size_t>(n),
                                                        std::vector<int>(static_cast<std::size_t>(n), 1)));
}

TransitionMatrix TransitionMatrix::golden_mean() { return TransitionMatrix({{1, 1}, {1, 0}}); }

TransitionMatrix TransitionMatrix::four_symbol() {
  return TransitionMatrix({{1, 1, 1, 1}, {1, 1, 1, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}});
}

bool TransitionMatrix::admissible(const std::vector<Symbol>& word) const {
  for (Symbol s : word) {
    if (s >= n_) return false;
  }
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (!allowed(word[i - 1], word[i])) return false;
  }
  return true;
}

std::vector<int> TransitionMatrix::successors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    if (allowed(i, j)) out.push_back(j);
  }
  return out;
}

std::vector<int> TransitionMatrix::predecessors(int j) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i) {
    if (allowed(i, j)) out.push_back(i);
  }
  return out;
}

TransitionMatrix TransitionMatrix::transposed() const {
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) t[j][i] = allowed(i, j) ? 1 : 0;
  }
  return TransitionMatrix(t);
}

bool TransitionMatrix::primitive() const {
  // Boolean powers; Wielandt's bound caps the exponent.
  const int bound = n_ * n_ - 2 * n_ + 2;
  std::vector<std::uint8_t> p = a_;
  for (int m = 1; m <= bound; ++m) {
    bool positive = true;
    for (auto v : p) {
      if (!v) {
        positive = false;
        break;
      }
    }
    if (positive) return true;
    std::vector<std::uint8_t> next(p.size(), 0);
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < n_; ++k) {
        if (!p[static_cast<std::size_t>(i * n_ + k)]) continue;
        for (int j = 0; j < n_; ++j) {
          if (allowed(k, j)) next[static_cast<std::size_t>(i * n_ + j)] = 1;
        }
      }
    }
    p = std::move(next);
  }
  return false;
}

std::vector<std::vector<int>> TransitionMatrix::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out[i][j] = allowed(i, j) ? 1 : 0;
  }
  return out;
}

std::string TransitionMatrix::to_text() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) os << (allowed(i, j) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

}  // namespace sshyp
