#include "sshyp/symbolic/sft.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace sshyp {
namespace {

// Shortest path from `from` to `to` following edges (forward) or reversed
// edges (backward), excluding `from`; empty optional when unreachable.
std::optional<std::vector<int>> shortest_path(const TransitionMatrix& a, int from, int to, bool forward,
                                              bool allow_empty) {
  if (allow_empty && from == to) return std::vector<int>{};
  const int n = a.size();
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::deque<int> queue;
  for (int v : forward ? a.successors(from) : a.predecessors(from)) {
    if (parent[v] == -2) {
      parent[v] = -1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == to) {
      std::vector<int> path;
      for (int v = u; v != -1; v = parent[v]) path.insert(path.begin(), v);
      return path;
    }
    for (int v : forward ? a.successors(u) : a.predecessors(u)) {
      if (parent[v] == -2) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  return std::nullopt;
}

// Cycle through t as the symbols visited after t, ending with t itself.
std::optional<std::vector<int>> cycle_through(const TransitionMatrix& a, int t) {
  return shortest_path(a, t, t, true, false);
}

// Nearest state on a cycle, reached along edges in the given direction.
std::pair<std::vector<int>, std::vector<int>> path_to_cycle(const TransitionMatrix& a, int s, bool forward) {
  // Breadth-first over distance; ties broken by symbol order.
  std::vector<int> order{s};
  std::vector<int> parent(static_cast<std::size_t>(a.size()), -2);
  parent[s] = -1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int u = order[head];
    if (auto cyc = cycle_through(a, u)) {
      std::vector<int> path;
      for (int v = u; v != s; v = parent[v]) path.insert(path.begin(), v);
      return {path, *cyc};
    }
    for (int v : forward ? a.successors(u) : a.predecessors(u)) {
      if (parent[v] == -2) {
        parent[v] = u;
        order.push_back(v);
      }
    }
  }
  throw std::logic_error("path_to_cycle: no cycle reachable (matrix invariants violated)");
}

Word to_word(const std::vector<int>& v) { return Word(v.begin(), v.end()); }

}  // namespace

SubshiftSystem::SubshiftSystem(TransitionMatrix matrix, double lambda)
    : matrix_(std::move(matrix)), lambda_(lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) throw std::invalid_argument("sft: lambda must exceed 1");
}

LambdaPower SubshiftSystem::distance(const Point& x, const Point& y) const {
  const auto d = first_disagreement(x, y);
  if (!d) return LambdaPower::zero();
  return LambdaPower::power(static_cast<int>(1 - *d));
}

BiSequence SubshiftSystem::bracket(const Point& x, const Point& y) const {
  if (!in_bracket_domain(x, y)) throw std::invalid_argument("bracket: x(0) != y(0)");
  BiSequence z = BiSequence::splice(y, x, 0);
  if (!z.admissible(matrix_)) throw std::logic_error("bracket: splice produced a forbidden transition");
  return z;
}

SubshiftSystem sft_new(const TransitionMatrix& matrix, double lambda) { return SubshiftSystem(matrix, lambda); }

BigInt count_words(const TransitionMatrix& a, int length) {
  if (length < 1) throw std::invalid_argument("count_words: length must be positive");
  BigInt total = 0;
  for (int s = 0; s < a.size(); ++s) total += count_words_from(a, s, length);
  return total;
}

BigInt count_words_from(const TransitionMatrix& a, int s, int length) {
  if (length < 1) throw std::invalid_argument("count_words: length must be positive");
  const int n = a.size();
  // v[i] = number of admissible words of the current length starting at i.
  std::vector<BigInt> v(static_cast<std::size_t>(n), 1);
  for (int step = 1; step < length; ++step) {
    std::vector<BigInt> next(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (a.allowed(i, j)) next[i] += v[j];
      }
    }
    v = std::move(next);
  }
  return v[static_cast<std::size_t>(s)];
}

int cover_radius(double eps, double lambda) {
  if (!(eps > 0.0) || eps > lambda) throw std::invalid_argument("cover: epsilon must lie in (0, lambda]");
  const int m = static_cast<int>(std::floor(-std::log(eps) / std::log(lambda) + 1e-9)) + 1;
  return std::max(0, m);
}

int cover_radius(const LambdaPower& eps) {
  if (eps.is_zero() || eps.exponent() > 1) throw std::invalid_argument("cover: epsilon must lie in (0, lambda]");
  return std::max(0, 1 - eps.exponent());
}

BigInt exact_cov(const SubshiftSystem& sys, double eps) {
  return count_words(sys.matrix(), 2 * cover_radius(eps, sys.expanding_factor()) + 1);
}

BigInt exact_cov(const SubshiftSystem& sys, const LambdaPower& eps) {
  return count_words(sys.matrix(), 2 * cover_radius(eps) + 1);
}

Cylinder make_cylinder(const TransitionMatrix& a, long start, Word word) {
  if (word.empty() || !a.admissible(word)) throw std::invalid_argument("cylinder: inadmissible word");
  return Cylinder{start, std::move(word)};
}

std::vector<UnstableCylinder> enumerate_unstable_children(const SubshiftSystem& sys,
                                                         const UnstableCylinder& parent) {
  std::vector<UnstableCylinder> out;
  const auto& a = sys.matrix();
  const long next = parent.m + 1;
  for (int t : a.successors(parent.representative.at(parent.m))) {
    BiSequence tail = complete_word(a, {static_cast<Symbol>(t)}, next);
    out.push_back({BiSequence::splice(parent.representative, tail, next), next});
  }
  return out;
}

BiSequence complete_word(const TransitionMatrix& a, const Word& w, long start) {
  if (w.empty() || !a.admissible(w)) throw std::invalid_argument("complete_word: inadmissible word");
  Word center = w;
  long lo = start;

  auto [right_path, right_cycle] = path_to_cycle(a, w.back(), true);
  center.insert(center.end(), right_path.begin(), right_path.end());
  // Tail read after the cycle state t: c1 .. ck t.
  Word right = to_word(right_cycle);

  auto [left_path, left_cycle] = path_to_cycle(a, w.front(), false);
  // left_path lists predecessors walking away from w.front(); reverse it.
  Word prefix(left_path.rbegin(), left_path.rend());
  center.insert(center.begin(), prefix.begin(), prefix.end());
  lo -= static_cast<long>(prefix.size());
  const int t = left_path.empty() ? w.front() : left_path.back();
  // t c1 .. ck: the cycle word whose last symbol precedes t.
  Word left{static_cast<Symbol>(t)};
  for (std::size_t i = 0; i + 1 < left_cycle.size(); ++i) left.push_back(static_cast<Symbol>(left_cycle[i]));
  return BiSequence(std::move(left), std::move(center), lo, std::move(right));
}

BiSequence random_extension(const TransitionMatrix& a, Rng& rng, const Word& w, long start, int extra) {
  if (w.empty()) throw std::invalid_argument("random_extension: empty word");
  Word ext = w;
  long lo = start;
  auto pick = [&rng](const std::vector<int>& options) {
    std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
    return static_cast<Symbol>(options[dist(rng)]);
  };
  for (int k = 0; k < extra; ++k) ext.push_back(pick(a.successors(ext.back())));
  for (int k = 0; k < extra; ++k) {
    ext.insert(ext.begin(), pick(a.predecessors(ext.front())));
    --lo;
  }
  return complete_word(a, ext, lo);
}

BiSequence random_point(const TransitionMatrix& a, Rng& rng, int radius) {
  std::uniform_int_distribution<int> sym(0, a.size() - 1);
  return random_extension(a, rng, {static_cast<Symbol>(sym(rng))}, 0, radius);
}

std::vector<PointPair<BiSequence>> random_close_pairs(const SubshiftSystem& sys, Rng& rng, std::size_t count,
                                                      int t_max) {
  if (t_max < 1) throw std::invalid_argument("random_close_pairs: t_max must be at least 1");
  const auto& a = sys.matrix();
  std::vector<PointPair<BiSequence>> out;
  out.reserve(count);
  std::uniform_int_distribution<int> agree(1, t_max);
  std::uniform_int_distribution<int> spread(1, 6);
  while (out.size() < count) {
    BiSequence x = random_point(a, rng, t_max + 6);
    const int t = agree(rng);
    BiSequence y = random_extension(a, rng, x.window(-t, t), -t, spread(rng));
    if (is_zero(sys.distance(x, y))) continue;
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

std::vector<PointPair<BiSequence>> random_local_pairs(const SubshiftSystem& sys, Rng& rng, std::size_t count,
                                                      LocalSet set, int reach) {
  if (reach < 1) throw std::invalid_argument("random_local_pairs: reach must be at least 1");
  const auto& a = sys.matrix();
  std::vector<PointPair<BiSequence>> out;
  out.reserve(count);
  std::uniform_int_distribution<int> depth(1, reach);
  while (out.size() < count) {
    BiSequence x = random_point(a, rng, reach + 6);
    const int j = depth(rng);
    BiSequence y = x;
    if (set == LocalSet::stable) {
      // Agreement on i >= -j.
      BiSequence past = random_extension(a, rng, {x.at(-j)}, -j, reach + 6);
      y = BiSequence::splice(past, x, -j);
    } else {
      // Agreement on i <= j.
      BiSequence future = random_extension(a, rng, {x.at(j)}, j, reach + 6);
      y = BiSequence::splice(x, future, j + 1);
    }
    if (is_zero(sys.distance(x, y))) continue;
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

std::vector<HolonomySample<BiSequence>> random_holonomy_samples(const SubshiftSystem& sys, Rng& rng,
                                                                std::size_t count, int reach) {
  if (reach < 2) throw std::invalid_argument("random_holonomy_samples: reach must be at least 2");
  const auto& a = sys.matrix();
  std::uniform_int_distribution<int> depth(2, reach);
  std::vector<HolonomySample<BiSequence>> out;
  out.reserve(count);
  while (out.size() < count) {
    const BiSequence p = random_point(a, rng, reach + 6);
    const int j = depth(rng);
    const BiSequence q = BiSequence::splice(p, random_extension(a, rng, {p.at(j)}, j, reach + 6), j + 1);
    if (is_zero(sys.distance(p, q))) continue;
    const BiSequence y = BiSequence::splice(random_extension(a, rng, {p.at(-2)}, -2, reach + 6), p, -2);
    out.push_back({p, q, project_along_stable(sys, p, y), project_along_stable(sys, q, y)});
  }
  return out;
}

}  // namespace sshyp
