#include "sshyp/measure/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "sshyp/dimension/regression.hpp"
#include "sshyp/symbolic/perron.hpp"

namespace sshyp {

namespace {

void for_each_word(const TransitionMatrix& a, int length, const std::function<void(const Word&)>& visit) {
  Word w;
  std::function<void()> rec = [&] {
    if (static_cast<int>(w.size()) == length) {
      visit(w);
      return;
    }
    if (w.empty()) {
      for (int s = 0; s < a.size(); ++s) {
        w.push_back(static_cast<Symbol>(s));
        rec();
        w.pop_back();
      }
      return;
    }
    for (int s : a.successors(w.back())) {
      w.push_back(static_cast<Symbol>(s));
      rec();
      w.pop_back();
    }
  };
  rec();
}

double max_over_min(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

}  // namespace

double intrinsic_exponent(const SubshiftSystem& sys) {
  const double ent = 2.0 * std::log(spectral_radius(sys.matrix()).rho);
  return ent / (2.0 * std::log(sys.expanding_factor()));
}

double intrinsic_exponent(const ToralSystemd& sys) {
  return std::log(std::abs(sys.unstable_eigenvalue())) / std::log(sys.expanding_factor());
}

BoxMeasure box_measure(const SubshiftSystem& sys, const Cylinder& box, int depth) {
  return box_measure(sys, box, depth, intrinsic_exponent(sys));
}

BoxMeasure box_measure(const SubshiftSystem& sys, const Cylinder& box, int depth, double d) {
  const long last = box.start + static_cast<long>(box.word.size()) - 1;
  if (box.word.empty() || box.start > 0 || last < 0) {
    throw std::invalid_argument("box_measure: the box window must contain index 0");
  }
  BoxMeasure m;
  if (!sys.matrix().admissible(box.word)) {
    m.admissible = false;
    return m;
  }
  const int p = static_cast<int>(-box.start);
  const int q = static_cast<int>(last);
  const BiSequence x = complete_word(sys.matrix(), box.word, box.start);
  m.stable = hausdorff_estimate(sys, x, LocalSet::stable, p, d, depth).value;
  m.unstable = hausdorff_estimate(sys, x, LocalSet::unstable, q, d, depth).value;
  m.product = m.stable * m.unstable;

  Rng rng(0x401d);
  const BiSequence z = random_extension(sys.matrix(), rng, box.word, box.start, 6);
  const double moved = hausdorff_estimate(sys, z, LocalSet::stable, p, d, depth).value *
                       hausdorff_estimate(sys, z, LocalSet::unstable, q, d, depth).value;
  m.holonomy_gap = std::abs(moved - m.product) / m.product;
  return m;
}

ScalingReport scaling_check(const SubshiftSystem& sys, const BiSequence& x, LocalSet set, double d, int depth) {
  if (depth < 1) throw std::invalid_argument("scaling_check: depth must be at least 1");
  const double lambda = sys.expanding_factor();
  const BiSequence fx = sys.forward(x);
  ScalingReport r;
  r.set = set;
  r.measure = hausdorff_estimate(sys, x, set, 1, d, depth).value;
  if (set == LocalSet::unstable) {
    // f(W^u_xi(x)) = {y : y(i) = fx(i), i <= 0}.
    r.image_measure = hausdorff_estimate(sys, fx, set, 0, d, depth + 1).value;
    r.expected = std::pow(lambda, d);
  } else {
    // f(W^s_xi(x)) = {y : y(i) = fx(i), i >= -2}.
    r.image_measure = hausdorff_estimate(sys, fx, set, 2, d, depth - 1).value;
    r.expected = std::pow(lambda, -d);
  }
  r.ratio = r.image_measure / r.measure;
  r.deviation = std::abs(r.ratio - r.expected) / r.expected;
  return r;
}

HomogeneityReport homogeneity_check(const SubshiftSystem& sys, const std::vector<BiSequence>& xs, int n_first,
                                    int n_last, int k, int depth) {
  if (xs.empty()) throw std::invalid_argument("homogeneity_check: no base points");
  if (n_first < 0 || n_last < n_first || k < 1) throw std::invalid_argument("homogeneity_check: bad n range or k");
  const double d = intrinsic_exponent(sys);
  HomogeneityReport rep;
  rep.k = k;

  const BiSequence any = xs.front();
  const auto gu = hausdorff_estimate(sys, any, LocalSet::unstable, 0, d, depth).table.back();
  const auto gs = hausdorff_estimate(sys, any, LocalSet::stable, 0, d, depth).table.back();
  rep.c_bound = max_over_min(gu) * max_over_min(gs);

  const ParryMeasure parry(sys.matrix());
  std::vector<double> ns, logs;
  for (int n = n_first; n <= n_last; ++n) {
    HomogeneityRow row;
    row.n = n;
    for (const auto& x : xs) {
      const Cylinder box{-k, x.window(-k, k + n)};
      row.masses.push_back(box_measure(sys, box, depth, d).product);
    }
    row.ratio = max_over_min(row.masses);
    if (n <= 6) {
      std::vector<double> all;
      for_each_word(sys.matrix(), 2 * k + n + 1, [&](const Word& w) { all.push_back(parry.cylinder(w)); });
      row.parry_ratio = max_over_min(all);
    }
    rep.c_observed = std::max(rep.c_observed, row.ratio);
    ns.push_back(n);
    logs.push_back(std::log(row.ratio));
    rep.rows.push_back(std::move(row));
  }
  rep.bounded = rep.c_observed <= rep.c_bound * (1.0 + 1e-9);
  if (ns.size() >= 2) rep.trend_slope = least_squares(ns, logs).slope;
  // Growth extrapolated across the range must stay within the bound's width.
  const double span = static_cast<double>(n_last - n_first);
  rep.flat = rep.trend_slope * span <= std::log(rep.c_bound) + 1e-9;
  return rep;
}

ParryComparison parry_compare(const SubshiftSystem& sys, int length, int depth) {
  if (length < 1) throw std::invalid_argument("parry_compare: length must be positive");
  const double d = intrinsic_exponent(sys);
  const ParryMeasure parry(sys.matrix());
  ParryComparison c;
  c.length = length;
  double total = 0.0;
  for_each_word(sys.matrix(), length, [&](const Word& w) {
    ParryRow row;
    row.word = w;
    row.dp_mass = box_measure(sys, Cylinder{0, w}, depth, d).product;
    row.parry_mass = parry.cylinder(w);
    total += row.dp_mass;
    c.rows.push_back(std::move(row));
  });
  for (auto& row : c.rows) {
    row.dp_mass /= total;
    row.relative_gap = std::abs(row.dp_mass - row.parry_mass) / row.parry_mass;
    c.max_gap = std::max(c.max_gap, row.relative_gap);
    c.total_dp += row.dp_mass;
  }
  return c;
}

std::vector<ConditionalRow> dp_conditionals(const SubshiftSystem& sys, int depth) {
  const ParryComparison two = parry_compare(sys, 2, depth);
  const ParryMeasure parry(sys.matrix());
  const int n = sys.matrix().size();
  std::vector<double> row_sum(static_cast<std::size_t>(n), 0.0);
  for (const auto& r : two.rows) row_sum[r.word[0]] += r.dp_mass;
  std::vector<ConditionalRow> out;
  for (const auto& r : two.rows) {
    out.push_back({r.word[0], r.word[1], r.dp_mass / row_sum[r.word[0]], parry.transition(r.word[0], r.word[1])});
  }
  return out;
}

ToralBoxMeasure toral_box_measure(const ToralSystemd& sys, double s_half, double u_half) {
  if (!(s_half > 0.0) || !(u_half > 0.0)) throw std::invalid_argument("toral_box_measure: half-lengths must be positive");
  ToralBoxMeasure m;
  m.d = intrinsic_exponent(sys);
  m.stable = std::pow(2.0 * s_half, sys.exponent_s() * m.d);
  m.unstable = std::pow(2.0 * u_half, sys.exponent_u() * m.d);
  m.product = m.stable * m.unstable;
  const auto& es = sys.stable_unit();
  const auto& eu = sys.unstable_unit();
  m.area = 4.0 * s_half * u_half * std::abs(es(0) * eu(1) - es(1) * eu(0));
  m.ratio = m.product / m.area;
  return m;
}

}  // namespace sshyp
