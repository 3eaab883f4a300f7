#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "sshyp/measure/hausdorff.hpp"
#include "sshyp/measure/intrinsic.hpp"
#include "sshyp/symbolic/perron.hpp"
#include "support.hpp"

using namespace sshyp;
using sshyp::test::kPhi;

namespace {

SubshiftSystem full2() { return SubshiftSystem(TransitionMatrix::full_shift(2), 2.0); }
SubshiftSystem golden() { return SubshiftSystem(TransitionMatrix::golden_mean(), 2.0); }

const double kGoldenD = std::log(kPhi) / std::log(2.0);

// Brute-force premeasure oracle on the explicit cylinder tree: every node
// is min(diam^d, sum of children), diameters read off the actual branching.
double tree_oracle(const TransitionMatrix& a, int state, int remaining, int level, double lambda, double d) {
  // Actual diameter: the continuation is forced until the first branching.
  int forced = 0;
  int s = state;
  while (a.successors(s).size() == 1) {
    s = a.successors(s).front();
    ++forced;
  }
  const double own = std::pow(lambda, -(level + forced) * d);
  if (remaining == 0) return own;
  double sum = 0.0;
  for (int t : a.successors(state)) sum += tree_oracle(a, t, remaining - 1, level + 1, lambda, d);
  return std::min(own, sum);
}

// Parry mass from the closed-form golden-mean conditionals.
double golden_parry(const Word& w) {
  const double p[2][2] = {{1.0 / kPhi, 1.0 / (kPhi * kPhi)}, {1.0, 0.0}};
  double m = w[0] == 0 ? kPhi * kPhi / (1.0 + kPhi * kPhi) : 1.0 / (1.0 + kPhi * kPhi);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) m *= p[w[i]][w[i + 1]];
  return m;
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("full 2-shift at d = 1: the unstable plaque keeps its diameter as mass") {
  const auto sys = full2();
  const auto x = BiSequence::constant(0);
  // W^u_{1/2}(x) fixes i <= 1 and has diameter 1/2; every cover level sums to 1/2.
  for (int depth = 2; depth <= 10; ++depth) {
    const auto t = hausdorff_estimate(sys, x, LocalSet::unstable, 1, 1.0, depth);
    CHECK(t.value == 0.5);
    CHECK(t.leaf_diameter == std::ldexp(1.0, -(1 + depth)));
  }
  // The level-0 plaque (i <= 0, diameter 1) has mass exactly 1.
  CHECK(hausdorff_estimate(sys, x, LocalSet::unstable, 0, 1.0, 8).value == 1.0);
  CHECK(hausdorff_estimate(sys, x, LocalSet::stable, 0, 1.0, 8).value == 1.0);
  CHECK(tree_oracle(sys.matrix(), 0, 8, 1, 2.0, 1.0) == 0.5);
}

TEST_CASE("full 2-shift at d = 1.5: subdivision keeps lowering the sum") {
  const auto sys = full2();
  const auto t = hausdorff_estimate(sys, BiSequence::constant(0), LocalSet::unstable, 1, 1.5, 8);
  // 2^-1.5 * (2 * 2^-1.5)^8 = 2^-5.5.
  CHECK(t.value == doctest::Approx(std::pow(2.0, -5.5)).epsilon(1e-14));
  CHECK(std::abs(t.value - 0.0220971) < 1e-7);
  CHECK(t.value < std::pow(0.5, 1.5));
  CHECK(t.value == doctest::Approx(tree_oracle(sys.matrix(), 0, 8, 1, 2.0, 1.5)).epsilon(1e-14));
  for (std::size_t i = 1; i < t.by_depth.size(); ++i) CHECK(t.by_depth[i] <= t.by_depth[i - 1]);
}

TEST_CASE("golden mean at its intrinsic exponent") {
  const auto sys = golden();
  const auto x = BiSequence::constant(0);
  std::vector<double> values;
  for (int depth = 10; depth <= 14; ++depth) {
    const double v = hausdorff_estimate(sys, x, LocalSet::unstable, 1, kGoldenD, depth).value;
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(tree_oracle(sys.matrix(), x.at(1), depth, 1, 2.0, kGoldenD)).epsilon(1e-12));
    values.push_back(v);
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  CHECK((*hi - *lo) / *lo <= 0.03);
  const auto est = hausdorff_converged(sys, x, LocalSet::unstable, 1, kGoldenD, 12);
  CHECK(est.converged);
  REQUIRE(est.value().has_value());
  CHECK(*est.value() == doctest::Approx(values.back()).epsilon(0.03));
}

TEST_CASE("an unconverged estimate reports no value") {
  // Above the similarity dimension the premeasure halves every level.
  const auto est = hausdorff_converged(full2(), BiSequence::constant(0), LocalSet::unstable, 1, 1.5, 8);
  CHECK_FALSE(est.converged);
  CHECK_FALSE(est.value().has_value());
  CHECK(est.drift == doctest::Approx(1.0));
  // Below it, no subdivision helps and the value is the root diameter^d.
  const auto low = hausdorff_converged(full2(), BiSequence::constant(0), LocalSet::unstable, 1, 0.5, 8);
  CHECK(low.converged);
  CHECK(*low.value() == doctest::Approx(std::pow(0.5, 0.5)));
}

TEST_CASE("measure preconditions") {
  const auto x = BiSequence::constant(0);
  CHECK_THROWS_AS(hausdorff_estimate(full2(), x, LocalSet::unstable, 1, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff_estimate(full2(), x, LocalSet::unstable, -1, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff_estimate(full2(), x, LocalSet::unstable, 1, 1.0, -1), std::invalid_argument);
  const SubshiftSystem four(TransitionMatrix::four_symbol(), 2.0);
  CHECK_THROWS_AS(hausdorff_estimate(four, x, LocalSet::unstable, 1, 1.0, 4), std::invalid_argument);
}

TEST_CASE("forced steps") {
  const auto gm = TransitionMatrix::golden_mean();
  CHECK(forced_steps(gm, 0) == 0);
  CHECK(forced_steps(gm, 1) == 1);
  CHECK(forced_steps(TransitionMatrix::full_shift(2), 1) == 0);
  CHECK_THROWS_AS(forced_steps(TransitionMatrix({{0, 1}, {1, 0}}), 0), std::invalid_argument);
}

TEST_CASE("intrinsic exponents") {
  CHECK(intrinsic_exponent(full2()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(intrinsic_exponent(golden()) - kGoldenD) < 1e-12);
  CHECK(std::abs(intrinsic_exponent(golden()) - 0.6942) < 1e-4);
  CHECK(intrinsic_exponent(ToralSystemd(cat_map_matrix())) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("box measures") {
  const auto sys = full2();
  const auto a = box_measure(sys, Cylinder{-1, {0, 0, 0}}, 8);
  const auto b = box_measure(sys, Cylinder{-1, {1, 0, 1}}, 8);
  // Stable window at scale 1/2, unstable window at scale 1/2.
  CHECK(a.stable == 0.5);
  CHECK(a.unstable == 0.5);
  CHECK(a.product == 0.25);
  CHECK(a.product == b.product);
  CHECK(a.holonomy_gap == 0.0);

  const auto gm = golden();
  const auto m00 = box_measure(gm, Cylinder{0, {0, 0}}, 10);
  const auto m01 = box_measure(gm, Cylinder{0, {0, 1}}, 10);
  CHECK(std::abs(m00.product / m01.product / kPhi - 1.0) <= 0.05);
  CHECK(m00.holonomy_gap < 1e-12);

  const auto bad = box_measure(gm, Cylinder{0, {1, 1}}, 10);
  CHECK_FALSE(bad.admissible);
  CHECK(bad.product == 0.0);
  CHECK_THROWS_AS(box_measure(gm, Cylinder{1, {0, 0}}, 10), std::invalid_argument);
  CHECK_THROWS_AS(box_measure(gm, Cylinder{-3, {0, 0}}, 10), std::invalid_argument);
}

TEST_CASE("scaling law") {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const auto x = test::gen_point(TransitionMatrix::full_shift(2), rng);
    const auto u = scaling_check(full2(), x, LocalSet::unstable, 1.0, 10);
    CHECK(u.ratio == 2.0);
    CHECK(u.deviation == 0.0);
    const auto s = scaling_check(full2(), x, LocalSet::stable, 1.0, 10);
    CHECK(s.ratio == 0.5);
  }
  for (int i = 0; i < 5; ++i) {
    const auto x = test::gen_point(TransitionMatrix::golden_mean(), rng);
    const auto u = scaling_check(golden(), x, LocalSet::unstable, kGoldenD, 12);
    CHECK(u.expected == doctest::Approx(kPhi).epsilon(1e-12));
    CHECK(std::abs(u.ratio / kPhi - 1.0) <= 0.03);
    const auto s = scaling_check(golden(), x, LocalSet::stable, kGoldenD, 12);
    CHECK(std::abs(s.ratio * kPhi - 1.0) <= 0.03);
  }
  CHECK_THROWS_AS(scaling_check(golden(), BiSequence::constant(0), LocalSet::stable, kGoldenD, 0),
                  std::invalid_argument);
}

TEST_CASE("homogeneity of box masses") {
  Rng rng(33);
  std::vector<BiSequence> fs, gs;
  for (int i = 0; i < 20; ++i) fs.push_back(test::gen_point(TransitionMatrix::full_shift(2), rng, 16));
  for (int i = 0; i < 20; ++i) gs.push_back(test::gen_point(TransitionMatrix::golden_mean(), rng, 16));

  const auto f = homogeneity_check(full2(), fs, 1, 10, 1, 12);
  for (const auto& row : f.rows) CHECK(row.ratio == 1.0);
  CHECK(f.pass());

  const auto g = homogeneity_check(golden(), gs, 1, 10, 1, 12);
  CHECK(g.c_bound == doctest::Approx(kPhi * kPhi).epsilon(1e-9));
  CHECK(g.c_observed <= kPhi * kPhi * (1 + 1e-9));
  CHECK(g.pass());

  // Brute-force bound over all admissible boxes for n <= 6.
  for (const auto& row : g.rows) {
    if (row.n > 6) continue;
    double lo = 1e300, hi = 0.0;
    for (const auto& w : test::brute_words(TransitionMatrix::golden_mean(), 2 + row.n + 1)) {
      lo = std::min(lo, golden_parry(w));
      hi = std::max(hi, golden_parry(w));
    }
    CHECK(hi / lo <= kPhi * kPhi * (1 + 1e-9));
    CHECK(row.parry_ratio == doctest::Approx(hi / lo).epsilon(1e-9));
  }

  const auto single = homogeneity_check(golden(), {gs.front()}, 1, 10, 1, 12);
  for (const auto& row : single.rows) CHECK(row.ratio == 1.0);
  CHECK_THROWS_AS(homogeneity_check(golden(), {}, 1, 10, 1, 12), std::invalid_argument);
}

TEST_CASE("normalized box masses against the Parry measure") {
  const auto f = parry_compare(full2(), 3, 8);
  CHECK(f.rows.size() == 8);
  CHECK(f.max_gap < 1e-12);

  const auto g = parry_compare(golden(), 8, 8);
  CHECK(g.rows.size() == 55);
  CHECK(g.max_gap < 0.05);
  CHECK(g.total_dp == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& r : g.rows) CHECK(r.parry_mass == doctest::Approx(golden_parry(r.word)).epsilon(1e-12));

  std::map<std::pair<int, int>, double> expect{{{0, 0}, 1.0 / kPhi}, {{0, 1}, 1.0 / (kPhi * kPhi)}, {{1, 0}, 1.0}};
  const auto cond = dp_conditionals(golden(), 2);
  CHECK(cond.size() == 3);
  for (const auto& c : cond) CHECK(std::abs(c.dp - expect.at({c.from, c.to})) < 1e-9);
}

TEST_CASE("toral boxes: product of plaque measures is proportional to area") {
  const ToralSystemd cat(cat_map_matrix());
  const double ref = toral_box_measure(cat, 1e-3, 1e-3).ratio;
  for (double s : {1e-4, 3e-3, 1e-2}) {
    for (double u : {2e-4, 5e-3}) {
      const auto m = toral_box_measure(cat, s, u);
      CHECK(m.product == doctest::Approx(4.0 * s * u).epsilon(1e-12));
      CHECK(std::abs(m.ratio / ref - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(toral_box_measure(cat, 0.0, 1e-3), std::invalid_argument);
}

}  // TEST_SUITE
