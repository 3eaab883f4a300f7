#include "sshyp/symbolic/bisequence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sshyp {
namespace {

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return Word(w.begin(), w.begin() + static_cast<long>(p));
  }
  return w;
}

}  // namespace

BiSequence::BiSequence(Word left, Word center, long lo, Word right)
    : left_(std::move(left)), center_(std::move(center)), lo_(lo), right_(std::move(right)) {
  if (left_.empty() || right_.empty()) throw std::invalid_argument("BiSequence: tails must be non-empty");
  canonicalize();
}

void BiSequence::canonicalize() {
  left_ = primitive_root(left_);
  right_ = primitive_root(right_);
  // The left pattern continued one step to the right reads left_.front().
  while (!center_.empty() && center_.front() == left_.front()) {
    std::rotate(left_.begin(), left_.begin() + 1, left_.end());
    center_.erase(center_.begin());
    ++lo_;
  }
  // The right pattern continued one step to the left reads right_.back().
  while (!center_.empty() && center_.back() == right_.back()) {
    std::rotate(right_.rbegin(), right_.rbegin() + 1, right_.rend());
    center_.pop_back();
  }
}

Symbol BiSequence::at(long i) const {
  const long h = hi();
  if (i >= lo_ && i < h) return center_[static_cast<std::size_t>(i - lo_)];
  if (i >= h) return right_[static_cast<std::size_t>(floor_mod(i - h, static_cast<long>(right_.size())))];
  const long n = static_cast<long>(left_.size());
  return left_[static_cast<std::size_t>(n - 1 - floor_mod(lo_ - 1 - i, n))];
}

Word BiSequence::window(long from, long to_inclusive) const {
  Word w;
  for (long i = from; i <= to_inclusive; ++i) w.push_back(at(i));
  return w;
}

BiSequence BiSequence::shifted(long k) const {
  BiSequence out = *this;
  out.lo_ -= k;
  return out;
}

Word BiSequence::left_tail_at(long k) const {
  if (k > lo_) throw std::invalid_argument("left_tail_at: position inside the center window");
  const long n = static_cast<long>(left_.size());
  return window(k - n, k - 1);
}

Word BiSequence::right_tail_at(long k) const {
  if (k < hi()) throw std::invalid_argument("right_tail_at: position inside the center window");
  return window(k, k + static_cast<long>(right_.size()) - 1);
}

BiSequence BiSequence::splice(const BiSequence& past, const BiSequence& future, long cut) {
  const long left_edge = std::min(past.lo(), cut);
  const long right_edge = std::max(future.hi(), cut);
  Word center;
  for (long i = left_edge; i < cut; ++i) center.push_back(past.at(i));
  for (long i = cut; i < right_edge; ++i) center.push_back(future.at(i));
  return BiSequence(past.left_tail_at(left_edge), std::move(center), left_edge,
                    future.right_tail_at(right_edge));
}

BiSequence BiSequence::with_window(const Word& w, long start) const {
  const long end = start + static_cast<long>(w.size());
  const long left_edge = std::min(lo_, start);
  const long right_edge = std::max(hi(), end);
  Word center;
  for (long i = left_edge; i < right_edge; ++i) {
    center.push_back(i >= start && i < end ? w[static_cast<std::size_t>(i - start)] : at(i));
  }
  return BiSequence(left_tail_at(left_edge), std::move(center), left_edge, right_tail_at(right_edge));
}

bool BiSequence::admissible(const TransitionMatrix& a) const {
  // One full period past each junction covers every adjacent pair.
  const long from = lo_ - static_cast<long>(left_.size()) - 1;
  const long to = hi() + static_cast<long>(right_.size());
  for (long i = from; i <= to; ++i) {
    const Symbol s = at(i);
    const Symbol t = at(i + 1);
    if (s >= a.size() || t >= a.size() || !a.allowed(s, t)) return false;
  }
  return true;
}

std::string BiSequence::to_string() const {
  std::ostringstream os;
  auto put = [&os](const Word& w) {
    for (Symbol s : w) os << static_cast<int>(s);
  };
  os << "(";
  put(left_);
  os << ")~ [" << lo_ << ":";
  put(center_);
  os << "] (";
  put(right_);
  os << ")~";
  return os.str();
}

std::optional<long> first_disagreement(const BiSequence& a, const BiSequence& b) {
  // Beyond both center windows each sequence is periodic, so agreement on one
  // common period on each side propagates to the whole tail.
  const long period_left = std::lcm(static_cast<long>(a.left_tail().size()),
                                    static_cast<long>(b.left_tail().size()));
  const long period_right = std::lcm(static_cast<long>(a.right_tail().size()),
                                     static_cast<long>(b.right_tail().size()));
  const long left_start = std::min(a.lo(), b.lo());
  const long right_start = std::max(a.hi(), b.hi());
  const long horizon = std::max({std::abs(left_start) + period_left, std::abs(right_start) + period_right,
                                 std::abs(a.lo()), std::abs(b.hi())}) + 1;
  for (long n = 0; n <= horizon; ++n) {
    if (a.at(n) != b.at(n) || a.at(-n) != b.at(-n)) return n;
  }
  return std::nullopt;
}

bool operator==(const BiSequence& a, const BiSequence& b) { return !first_disagreement(a, b).has_value(); }

}  // namespace sshyp
