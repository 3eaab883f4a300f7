#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "sshyp/core/dynamics.hpp"
#include "sshyp/torus/toral_system.hpp"
#include "support.hpp"

using namespace sshyp;
using sshyp::test::kCatMu;
using sshyp::test::kPhi;

namespace {

// Euclidean lengths of the stable and unstable parts of v, from a generic
// dense eigen-decomposition rather than the closed-form eigenvectors.
std::pair<double, double> oracle_split_lengths(const Eigen::Matrix2d& m, const Eigen::Vector2d& v) {
  Eigen::EigenSolver<Eigen::Matrix2d> es(m);
  const Eigen::Matrix2d vecs = es.eigenvectors().real();
  const Eigen::Vector2d vals = es.eigenvalues().real();
  const Eigen::Vector2d coef = vecs.colPivHouseholderQr().solve(v);
  const int stable = std::abs(vals(0)) < 1.0 ? 0 : 1;
  return {std::abs(coef(stable)) * vecs.col(stable).norm(), std::abs(coef(1 - stable)) * vecs.col(1 - stable).norm()};
}

}  // namespace

TEST_SUITE("torus") {

TEST_CASE("cat map defaults") {
  const ToralSystemd cat(cat_map_matrix());
  CHECK(std::abs(cat.expanding_factor() - kCatMu) < 1e-12);
  CHECK(std::abs(cat.expanding_factor() - 2.618034) < 1e-6);
  CHECK(std::abs(cat.exponent_s() - 1.0) < 1e-12);
  CHECK(std::abs(cat.exponent_u() - 1.0) < 1e-12);
  CHECK(std::abs(cat.unstable_eigenvalue() - kCatMu) < 1e-12);
  CHECK(std::abs(cat.stable_eigenvalue() - 1.0 / kCatMu) < 1e-12);
  CHECK(cat.expansive_constant() == 0.05);
}

TEST_CASE("halving log lambda halves the exponents") {
  const auto sys = toral_new(cat_map_matrix(), std::sqrt(kCatMu));
  CHECK(std::abs(sys.exponent_s() - 0.5) < 1e-12);
  CHECK(std::abs(sys.exponent_u() - 0.5) < 1e-12);
}

TEST_CASE("construction errors") {
  Eigen::Matrix2i parabolic;
  parabolic << 1, 1, 0, 1;
  CHECK_THROWS_AS(ToralSystemd{parabolic}, std::invalid_argument);
  Eigen::Matrix2i rotation;
  rotation << 0, -1, 1, 0;
  CHECK_THROWS_AS(ToralSystemd{rotation}, std::invalid_argument);
  Eigen::Matrix2i singular;
  singular << 2, 1, 2, 1;
  CHECK_THROWS_AS(ToralSystemd{singular}, std::invalid_argument);
  CHECK_THROWS_AS(toral_new(cat_map_matrix(), 3.0), std::invalid_argument);
  CHECK_THROWS_AS(toral_new(cat_map_matrix(), 1.0), std::invalid_argument);
  ToralOptions big;
  big.xi = 0.5;
  CHECK_THROWS_AS(ToralSystemd(cat_map_matrix(), big), std::invalid_argument);
}

TEST_CASE("eigen-splitting against a dense eigen-solve") {
  const ToralSystemd cat(cat_map_matrix());
  const Eigen::Matrix2d m = cat_map_matrix().cast<double>();
  const Eigen::Vector2d v(0.01, 0.0);
  const auto [os, ou] = oracle_split_lengths(m, v);
  // Closed form: v = alpha (1, -phi) + beta (1, 1/phi), alpha = 0.01 / (1 + phi^2).
  const double alpha = 0.01 / (1.0 + kPhi * kPhi);
  CHECK(std::abs(os - alpha * std::sqrt(1.0 + kPhi * kPhi)) < 1e-15);
  const auto c = cat.su_split(v);
  CHECK(std::abs(std::abs(c.s) - os) < 1e-15);
  CHECK(std::abs(std::abs(c.u) - ou) < 1e-15);
  CHECK(std::abs(std::abs(c.s) - 0.005257) < 5e-7);
  CHECK(std::abs(std::abs(c.u) - 0.008507) < 5e-7);
  CHECK((cat.from_su(c.s, c.u) - v).norm() < 1e-17);

  const auto zero = cat.su_split(Eigen::Vector2d::Zero());
  CHECK(zero.s == 0.0);
  CHECK(zero.u == 0.0);
  const auto axis = cat.su_split(cat.unstable_unit());
  CHECK(std::abs(axis.s) < 1e-15);
  CHECK(std::abs(axis.u - 1.0) < 1e-15);
}

TEST_CASE("forward and inverse maps") {
  const ToralSystemd cat(cat_map_matrix());
  CHECK(cat.apply(Eigen::Vector2d(0, 0)) == Eigen::Vector2d(0, 0));
  CHECK(cat.apply(Eigen::Vector2d(0.5, 0.5)) == Eigen::Vector2d(0.5, 0.0));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto x = cat.random_point(rng);
    const auto back = cat.apply_inv(cat.apply(x));
    CHECK(cat.distance(x, back) < 1e-14);
    CHECK(back(0) >= 0.0);
    CHECK(back(0) < 1.0);
  }
}

TEST_CASE("sample_pairs") {
  const ToralSystemd cat(cat_map_matrix());
  const auto pairs = cat.sample_pairs(1e-3, 100, 7);
  CHECK(pairs.size() == 100);
  for (const auto& [p, q] : pairs) {
    const double d = cat.distance(p, q);
    CHECK(d >= 5e-4 * (1 - 1e-12));
    CHECK(d <= 1e-3 * (1 + 1e-12));
  }
  const auto again = cat.sample_pairs(1e-3, 100, 7);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(pairs[i].first == again[i].first);
    CHECK(pairs[i].second == again[i].second);
  }
  CHECK_THROWS_AS(cat.sample_pairs(0.05, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(cat.sample_pairs(0.2, 10, 1), std::invalid_argument);
}

TEST_CASE("self-similarity of the cat-map metric") {
  const ToralSystemd cat(cat_map_matrix());
  const auto pairs = cat.sample_pairs_within(0.05, 10000, 2024);
  const auto r = verify_self_similar(cat, std::span<const PointPair<Eigen::Vector2d>>(pairs), 1e-9);
  CHECK(r.pass());
  CHECK(r.max_deviation < 1e-9);

  const auto half = toral_new(cat_map_matrix(), std::sqrt(kCatMu));
  const auto hp = half.sample_pairs_within(0.05, 2000, 9);
  CHECK(verify_self_similar(half, std::span<const PointPair<Eigen::Vector2d>>(hp), 1e-9).pass());
}

TEST_CASE("metric is the minimum over lattice translates") {
  const ToralSystemd cat(cat_map_matrix());
  const Eigen::Vector2d x(0.999, 0.5), y(0.001, 0.5);
  CHECK(std::abs(cat.distance(x, y) - cat.rho(Eigen::Vector2d(0.002, 0.0))) < 1e-13);
  CHECK(cat.rho_min() > 2.0 * cat.expanding_factor() * cat.expansive_constant());
}

}  // TEST_SUITE
