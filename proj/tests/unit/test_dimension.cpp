#include <doctest.h>

#include <cmath>
#include <vector>

#include "sshyp/dimension/symbolic_dimension.hpp"
#include "sshyp/dimension/toral_dimension.hpp"
#include "sshyp/symbolic/perron.hpp"
#include "support.hpp"

using namespace sshyp;
using sshyp::test::kCatMu;
using sshyp::test::kPhi;

namespace {

SubshiftSystem full2(double lambda = 2.0) { return SubshiftSystem(TransitionMatrix::full_shift(2), lambda); }
SubshiftSystem golden() { return SubshiftSystem(TransitionMatrix::golden_mean(), 2.0); }

}  // namespace

TEST_SUITE("dimension") {

TEST_CASE("cov_eps on the full 2-shift") {
  const auto sys = full2();
  // m = min{m : 2^-m < 1/4} = 3: central words of length 7.
  const auto p = cov_eps(sys, 0.25);
  CHECK(p.cov == "128");
  CHECK(p.cov == (BigInt(1) << 7).str());
  CHECK(p.method == CoverMethod::exact_symbolic);
  CHECK(cov_eps(sys, 3.0).cov == "1");
  CHECK(p.log_cov == doctest::Approx(7 * std::log(2.0)));
}

TEST_CASE("cover counts are non-increasing in epsilon") {
  for (const auto& sys : {full2(), golden()}) {
    const auto rep = symbolic_cover(sys, dyadic_schedule(-1, 10));
    for (std::size_t i = 1; i < rep.points.size(); ++i) {
      CHECK(rep.points[i].epsilon < rep.points[i - 1].epsilon);
      CHECK(rep.points[i].log_cov >= rep.points[i - 1].log_cov);
    }
  }
}

TEST_CASE("capacity of the shipped subshifts") {
  const auto eps = dyadic_schedule(4, 14);
  const auto f = capacity(full2(), eps);
  CHECK(std::abs(f.slope - 2.0) <= 0.02);
  const double gm_ref = 2.0 * std::log(kPhi) / std::log(2.0);
  CHECK(std::abs(gm_ref - 1.3885) < 1e-4);
  const auto g = capacity(golden(), eps);
  CHECK(std::abs(g.slope / gm_ref - 1.0) <= 0.02);
  CHECK(g.points_used == 9);
  CHECK(g.eps_max == std::ldexp(1.0, -6));
  CHECK_THROWS_AS(capacity(golden(), dyadic_schedule(4, 8)), std::invalid_argument);
}

TEST_CASE("lambda-adic schedule lands on the cover steps") {
  const auto d = dyadic_schedule(4, 14);
  CHECK(lambda_schedule(2.0, 4, 14) == d);
  CHECK_THROWS_AS(lambda_schedule(1.0, 4, 14), std::invalid_argument);
  CHECK_THROWS_AS(lambda_schedule(1e10, 4, 40), std::invalid_argument);
  // 3 symbols with spectral radius 2 at lambda = 3: dyadic scales repeat
  // counts and bias the slope; lambda-adic scales step once per point.
  const SubshiftSystem sys(TransitionMatrix({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), 3.0);
  const double expected = 2.0 * std::log(2.0) / std::log(3.0);
  const auto fit = capacity(sys, lambda_schedule(3.0, 4, 14));
  CHECK(std::abs(fit.slope / expected - 1.0) <= 0.02);
  const auto counts = symbolic_cover(sys, lambda_schedule(3.0, 4, 14));
  for (std::size_t i = 1; i < counts.points.size(); ++i) CHECK(counts.points[i].cov != counts.points[i - 1].cov);
}

TEST_CASE("capacity times log lambda is invariant") {
  const auto eps = dyadic_schedule(4, 14);
  const auto at4 = capacity(full2(4.0), eps);
  CHECK(std::abs(at4.slope - 1.0) <= 0.02);
  CHECK(std::abs(at4.slope * std::log(4.0) / (2.0 * std::log(2.0)) - 1.0) <= 0.02);
  const auto fr = check_fundamental(full2(4.0), eps, 16);
  CHECK(fr.relative_gap <= 0.02);
}

TEST_CASE("entropy in the two-sided convention") {
  const auto f = entropy(full2(), 12);
  CHECK(std::abs(f.ent - 2.0 * std::log(2.0)) < 1e-12);
  CHECK(std::abs(f.ent_plus - std::log(2.0)) < 1e-12);
  CHECK(std::abs(f.ent_minus - std::log(2.0)) < 1e-12);
  CHECK(std::abs(f.standard() - std::log(2.0)) < 1e-12);
  CHECK(f.consistency_gap() < 1e-12);

  const auto g = entropy(golden(), 12);
  CHECK(std::abs(g.ent / (2.0 * std::log(kPhi)) - 1.0) <= 0.01);
  CHECK(std::abs(g.ent - 0.9624) < 0.01 * 0.9624);
  CHECK_THROWS_AS(entropy(golden(), 3), std::invalid_argument);
}

TEST_CASE("fundamental equation on the golden mean") {
  const auto r = check_fundamental(golden(), dyadic_schedule(4, 14), 16);
  CHECK(r.capacity == doctest::Approx(1.3885).epsilon(0.02));
  CHECK(r.ent_over_log_lambda == doctest::Approx(1.3885).epsilon(0.02));
  CHECK(r.relative_gap < 0.02);
  const auto u = check_fundamental_unstable(golden(), BiSequence::constant(0), dyadic_schedule(4, 14), 16);
  CHECK(u.relative_gap < 0.02);
  CHECK(u.ent_over_log_lambda == doctest::Approx(std::log(kPhi) / std::log(2.0)).epsilon(0.02));
}

TEST_CASE("covering identity against brute-force window counts") {
  // d_k^f < xi fixes the window [-k-2, k+2].
  for (const auto& sys : {full2(), golden()}) {
    const auto rows = cov_identity_check(sys, 0, 6);
    REQUIRE(rows.size() == 7);
    for (const auto& r : rows) {
      CHECK(r.equal);
      CHECK(r.lhs == r.rhs);
      if (r.k <= 3) CHECK(r.lhs == std::to_string(test::brute_words(sys.matrix(), 2 * r.k + 5).size()));
    }
  }
  CHECK(cov_identity_check(full2(), 1, 1)[0].lhs == "128");
  CHECK(cov_identity_check(golden(), 0, 0)[0].rhs == "13");
}

TEST_CASE("ideal expanding factor and dimension bound") {
  CHECK(std::abs(ideal_factor(2.0 * std::log(kCatMu), 2) - kCatMu) < 1e-12);
  CHECK(std::abs(ideal_factor(2.0 * std::log(kCatMu), 2) - 2.618034) < 1e-6);
  CHECK(ideal_factor(0.0, 1) == 1.0);
  CHECK_THROWS_AS(ideal_factor(1.0, 0), std::invalid_argument);
  CHECK(dimension_bound_holds(2.0 * std::log(kCatMu), 2, kCatMu));
  CHECK_FALSE(dimension_bound_holds(2.0 * std::log(kCatMu), 2, 2.7));
}

TEST_CASE("local unstable entropy") {
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    const auto x = test::gen_point(TransitionMatrix::full_shift(2), rng);
    CHECK(std::abs(local_unstable_entropy(full2(), x, 16) - std::log(2.0)) < 1e-12);
  }
  const auto x0 = BiSequence::constant(0);
  const auto x1 = test::zeros_with_ones({1});
  const double e0 = local_unstable_entropy(golden(), x0, 16);
  const double e1 = local_unstable_entropy(golden(), x1, 16);
  CHECK(std::abs(e0 / std::log(kPhi) - 1.0) <= 0.01);
  CHECK(std::abs(e1 / std::log(kPhi) - 1.0) <= 0.01);
  const auto rep = local_entropy_homogeneity(golden(), {x0, x1}, 16);
  CHECK(rep.spread <= 0.01);
  CHECK(rep.max_gap <= 0.01);
  CHECK_THROWS_AS(local_entropy_homogeneity(golden(), {}, 16), std::invalid_argument);
}

TEST_CASE("geometric covers on the cat map") {
  const ToralSystemd cat(cat_map_matrix());
  CHECK(toral_cover(cat, 16, 10.0, DynMode::two_sided(0)).upper == 1);
  CHECK(toral_cover(cat, 16, 10.0, DynMode::two_sided(0)).lower == 1);
  CHECK_THROWS_AS(toral_cover(cat, 8, 0.1, DynMode::two_sided(0)), std::invalid_argument);
  CHECK_THROWS_AS(toral_cover(cat, 64, 0.0, DynMode::two_sided(0)), std::invalid_argument);

  // 316^2 ~ 10^5 samples at eps = 0.1: upper within a factor 4 of lower.
  const auto c = toral_cover(cat, 316, 0.1, DynMode::two_sided(0));
  CHECK(c.delta <= 0.1 / 4);
  CHECK(c.upper >= c.lower);
  CHECK(static_cast<double>(c.upper) <= 4.0 * static_cast<double>(c.lower));
  // Packing at eps against the area bound: disjoint eps/2-boxes of area eps^2 |det(e_s, e_u)|.
  const double det = std::abs(cat.stable_unit()(0) * cat.unstable_unit()(1) - cat.stable_unit()(1) * cat.unstable_unit()(0));
  CHECK(static_cast<double>(c.lower) <= 1.0 / (0.1 * 0.1 * det) + 1);
}

TEST_CASE("toral dynamical metric on a displacement") {
  const ToralSystemd cat(cat_map_matrix());
  const Eigen::Vector2d w = cat.from_su(1e-3, 2e-4);
  CHECK(toral_dyn_rho(cat, w, DynMode::two_sided(0)) == doctest::Approx(1e-3));
  CHECK(toral_dyn_rho(cat, w, DynMode::forward(2)) == doctest::Approx(2e-4 * kCatMu * kCatMu));
  CHECK(toral_dyn_rho(cat, w, DynMode::backward(2)) == doctest::Approx(1e-3 * kCatMu * kCatMu));
}

TEST_CASE("half-octave schedule and grid policy") {
  const auto s = half_octave_schedule(0.2, 4);
  REQUIRE(s.size() == 4);
  CHECK(s[2] == doctest::Approx(0.1));
  const ToralSystemd cat(cat_map_matrix());
  const int g = grid_for(cat, 0.1, DynMode::two_sided(0));
  CHECK(sample_density(cat, g, DynMode::two_sided(0)) <= 0.1 / 12);
  CHECK(sample_density(cat, g - 1, DynMode::two_sided(0)) > 0.1 / 12);
}

}  // TEST_SUITE
