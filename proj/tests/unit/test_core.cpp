#include <doctest.h>

#include <cmath>
#include <vector>

#include "sshyp/core/dynamics.hpp"
#include "sshyp/symbolic/sft.hpp"
#include "sshyp/torus/refined.hpp"
#include "sshyp/torus/toral_system.hpp"
#include "support.hpp"

using namespace sshyp;
using sshyp::test::zeros_with_ones;

namespace {

SubshiftSystem full2() { return SubshiftSystem(TransitionMatrix::full_shift(2), 2.0); }

double real(const SubshiftSystem& s, LambdaPower d) { return to_real(d, s.expanding_factor()); }

}  // namespace

TEST_SUITE("core") {

TEST_CASE("dyn_metric on the full 2-shift") {
  const auto sys = full2();
  const auto x = BiSequence::constant(0);
  const auto y = zeros_with_ones({3});
  // First disagreement at |i| = 3: T = 2.
  CHECK(real(sys, dyn_metric(sys, x, y, DynMode::two_sided(0))) == 0.25);
  CHECK(test::oracle_distance(x, y, 2.0) == 0.25);
  // Three forward shifts bring the disagreement to index 0: the capped value lambda.
  CHECK(real(sys, dyn_metric(sys, x, y, DynMode::two_sided(3))) == 2.0);
  CHECK(real(sys, dyn_metric(sys, x, y, DynMode::backward(3))) == 0.25);
  CHECK(real(sys, dyn_metric(sys, x, y, DynMode::forward(2))) == 1.0);
  for (int n : {0, 1, 5}) CHECK(is_zero(dyn_metric(sys, x, x, DynMode::two_sided(n))));
  CHECK_THROWS_AS(dyn_metric(sys, x, y, DynMode::two_sided(-1)), std::invalid_argument);
}

TEST_CASE("verify_self_similar exact on a single shift pair") {
  const auto sys = full2();
  const auto x = BiSequence::constant(0);
  const auto y = zeros_with_ones({2});
  CHECK(real(sys, sys.distance(x, y)) == 0.5);
  CHECK(real(sys, sys.distance(sys.forward(x), sys.forward(y))) == 1.0);
  CHECK(real(sys, sys.distance(sys.backward(x), sys.backward(y))) == 0.25);

  const std::vector<PointPair<BiSequence>> pairs{{x, y}};
  const auto r = verify_self_similar(sys, std::span<const PointPair<BiSequence>>(pairs), 0.0);
  CHECK(r.pass());
  CHECK(r.checked == 1);
  CHECK(r.max_deviation == 0.0);
  CHECK(r.deviations[0] == 0.0);
}

TEST_CASE("verify_self_similar rejects pairs outside (0, xi]") {
  const auto sys = full2();
  const auto x = BiSequence::constant(0);
  const std::vector<PointPair<BiSequence>> pairs{
      {x, zeros_with_ones({0})},  // dist = lambda > xi
      {x, x},                     // coincident
      {x, zeros_with_ones({4})},
  };
  const auto r = verify_self_similar(sys, std::span<const PointPair<BiSequence>>(pairs), 0.0);
  CHECK_FALSE(r.pass());
  REQUIRE(r.rejected.size() == 2);
  CHECK(r.rejected[0].index == 0);
  CHECK(r.rejected[1].index == 1);
  CHECK(r.checked == 1);
  CHECK(std::isnan(r.deviations[0]));
  CHECK(r.deviations[2] == 0.0);
}

TEST_CASE("expansion law on the shift") {
  const auto sys = full2();
  const auto x = BiSequence::constant(0);
  // Disagreement at 6: forward steps expand by lambda until the pair hits xi.
  const auto r = expansion_law_check(sys, x, zeros_with_ones({6}), 0.0);
  REQUIRE(r.direction.has_value());
  CHECK(*r.direction == Sidedness::forward);
  CHECK(r.steps_checked == 4);
  CHECK(r.max_deviation == 0.0);
  const auto b = expansion_law_check(sys, x, zeros_with_ones({-6}), 0.0);
  REQUIRE(b.direction.has_value());
  CHECK(*b.direction == Sidedness::backward);
  CHECK(b.max_deviation == 0.0);
}

TEST_CASE("symbolic bracket splices future of x onto past of y") {
  const auto sys = full2();
  const auto x = zeros_with_ones({3});
  const auto y = zeros_with_ones({-3});
  CHECK(sys.bracket(x, y) == zeros_with_ones({3, -3}));
  CHECK(sys.bracket(y, x) == BiSequence::constant(0));
  CHECK(sys.bracket(x, x) == x);
  CHECK_FALSE(sys.in_bracket_domain(x, zeros_with_ones({0})));
}

TEST_CASE("toral bracket of a stable displacement") {
  const ToralSystemd cat(cat_map_matrix());
  const TorusPoint x(0.0, 0.0);
  const TorusPoint y = cat.offset(x, 0.001, 0.0);
  // y is on W^s(x), so W^s(x) ∩ W^u(y) = {y}; W^s(y) ∩ W^u(x) = {x}.
  CHECK((cat.bracket(x, y) - y).norm() < 1e-15);
  CHECK((cat.bracket(y, x) - x).norm() < 1e-15);
  CHECK_THROWS_AS(cat.bracket(x, cat.offset(x, 0.0, 0.2)), std::invalid_argument);
}

TEST_CASE("contraction along stable and unstable sets of the shift") {
  const auto sys = full2();
  const auto x = BiSequence::constant(0);

  const auto s = stable_contraction_check(sys, x, zeros_with_ones({-5}), LocalSet::stable, 3);
  CHECK(s.precondition_ok());
  CHECK(s.ratios == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(s.pass(0.0));

  const auto u = stable_contraction_check(sys, x, zeros_with_ones({5}), LocalSet::unstable, 3);
  CHECK(u.ratios == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(u.pass(0.0));

  // A future disagreement is not in the stable set: forward iterates grow
  // until the pair leaves the xi-ball at the fourth step.
  const auto wrong = stable_contraction_check(sys, x, zeros_with_ones({5}), LocalSet::stable, 6);
  REQUIRE(wrong.separated_at.has_value());
  CHECK(*wrong.separated_at == 4);
  CHECK_FALSE(wrong.pass(0.0));

  CHECK_THROWS_AS(stable_contraction_check(sys, x, x, LocalSet::stable, 3), std::invalid_argument);
}

TEST_CASE("toral contraction along the stable line") {
  const ToralSystemd cat(cat_map_matrix());
  const TorusPoint x(0.3, 0.7);
  const auto r = stable_contraction_check(cat, x, cat.offset(x, 1e-4, 0.0), LocalSet::stable, 5);
  CHECK(r.precondition_ok());
  CHECK(r.ratios.size() == 5);
  CHECK(r.max_deviation < 1e-9);
  const auto u = stable_contraction_check(cat, x, cat.offset(x, 0.0, 1e-2), LocalSet::unstable, 5);
  CHECK(u.max_deviation < 1e-9);
}

TEST_CASE("triangle ratio on the splice example") {
  const auto sys = full2();
  const auto r = triangle_ratio(sys, zeros_with_ones({3}), zeros_with_ones({-3}));
  CHECK(r.a == 0.25);
  CHECK(r.b == 0.25);
  CHECK(r.c0 == 0.25);
  REQUIRE(r.ratio.has_value());
  CHECK(*r.ratio == 1.0);
  CHECK(r.deviation == 0.0);
  CHECK(r.scale_bucket == 2);
  // c0 = 1/4 exceeds xi / (2 lambda) = 1/8.
  CHECK_FALSE(r.dynamical_scale);
  CHECK(triangle_ratio(sys, zeros_with_ones({5}), zeros_with_ones({-6})).dynamical_scale);
  CHECK_THROWS_AS(triangle_ratio(sys, zeros_with_ones({3}), zeros_with_ones({3})), std::invalid_argument);
}

TEST_CASE("triangle ratio on the cat map") {
  const ToralSystemd cat(cat_map_matrix());
  const auto pairs = cat.sample_pairs(1e-3, 200, 11);
  for (const auto& [x, y] : pairs) {
    const auto r = triangle_ratio(cat, x, y);
    REQUIRE(r.ratio.has_value());
    CHECK(std::abs(*r.ratio - 1.0) < 1e-9);
    CHECK(r.dynamical_scale);
  }
}

TEST_CASE("holonomy on the shift: far-past change leaves distances fixed") {
  const auto sys = full2();
  const auto p = BiSequence::constant(0);
  const auto q = zeros_with_ones({3});       // shares the past of p
  const auto plaque = zeros_with_ones({-4});  // near p, differs far in the past
  const auto pp = project_along_stable(sys, p, plaque);
  const auto pq = project_along_stable(sys, q, plaque);
  CHECK(pp == zeros_with_ones({-4}));
  CHECK(pq == zeros_with_ones({-4, 3}));
  const auto r = holonomy_deviation(sys, p, q, pp, pq);
  CHECK(r.observed == 0.0);
  CHECK(r.within_bound());
  CHECK_THROWS_AS(holonomy_deviation(sys, p, p, pp, pp), std::invalid_argument);
}

TEST_CASE("holonomy bound on the cat map near 2^-10 xi") {
  const ToralSystemd cat(cat_map_matrix());
  const double lambda = cat.expanding_factor();
  const double scale = std::ldexp(0.05, -10);
  const auto samples = toral_holonomy_samples(cat, cat, scale, 300, 5);
  const double xi = cat.expansive_constant();
  for (const auto& s : samples) {
    const auto r = holonomy_deviation(cat, s.p, s.q, s.proj_p, s.proj_q);
    // m is pinned by xi / lambda^(m+1) < longest <= xi / lambda^m.
    const double longest = std::max(cat.distance(s.p, s.q), cat.distance(s.proj_p, s.proj_q));
    CHECK(xi / std::pow(lambda, r.m + 1) < longest * (1 + 1e-9));
    CHECK(longest <= xi / std::pow(lambda, r.m) * (1 + 1e-9));
    CHECK(r.m >= 5);
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == doctest::Approx(2.0 / (std::pow(lambda, r.m - 1) - 2.0)));
    CHECK(r.within_bound());
  }
}

TEST_CASE("LambdaPower arithmetic and ordering") {
  const auto a = LambdaPower::power(-3);
  CHECK(a.scaled(2) == LambdaPower::power(-1));
  CHECK(LambdaPower::zero() < a);
  CHECK(a < LambdaPower::power(0));
  CHECK(LambdaPower::zero().scaled(5).is_zero());
  CHECK(a.value(2.0) == 0.125);
  CHECK(relative_deviation(a, a, 2.0) == 0.0);
  CHECK(relative_deviation(LambdaPower::power(1), LambdaPower::power(0), 2.0) == 1.0);
  CHECK(scale_index(LambdaPower::power(-1), LambdaPower::power(-5), 2.0) == 4);
  CHECK(scale_index(1.0, 0.125, 2.0) == 3);
}

}  // TEST_SUITE
