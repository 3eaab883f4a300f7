#ifndef SSHYP_TORUS_TORAL_SYSTEM_HPP
#define SSHYP_TORUS_TORAL_SYSTEM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshyp/core/dynamics.hpp"

namespace sshyp {

// Coordinates of an ambient vector in the unit eigenbasis: v = s e_s + u e_u.
template <std::floating_point Scalar>
struct SUCoords {
  Scalar s = 0;
  Scalar u = 0;
};

struct ToralOptions {
  std::optional<double> lambda;  // defaults to min(1/|a|, |b|)
  double xi = 0.05;
  bool validate = true;           // self-similarity sweep at construction
  std::size_t validation_pairs = 10000;
  std::uint64_t validation_seed = 0x5eed;
};

// Hyperbolic 2x2 integer automorphism of R^2/Z^2 with
//   rho(v) = max(|s|^e_s, |u|^e_u),  e_s = log lambda / log(1/|a|), e_u = log lambda / log|b|,
//   dist(x, y) = min over the 9 nearest lattice translates w of rho(y - x + w).
template <std::floating_point Scalar = double>
class ToralSystem {
 public:
  using Point = Eigen::Matrix<Scalar, 2, 1>;
  using Distance = Scalar;
  using Vec = Point;
  using SU = SUCoords<Scalar>;

  explicit ToralSystem(const Eigen::Matrix2i& matrix, const ToralOptions& opt = {}) : m_(matrix) {
    const long det = static_cast<long>(matrix(0, 0)) * matrix(1, 1) - static_cast<long>(matrix(0, 1)) * matrix(1, 0);
    if (det != 1 && det != -1) throw std::invalid_argument("toral: |det| must be 1");
    const Scalar tr = static_cast<Scalar>(matrix(0, 0) + matrix(1, 1));
    const Scalar disc = tr * tr - Scalar(4) * static_cast<Scalar>(det);
    if (!(disc > 0)) throw std::invalid_argument("toral: eigenvalues are not real and distinct");
    const Scalar r = std::sqrt(disc);
    Scalar e1 = (tr + r) / 2, e2 = (tr - r) / 2;
    if (std::abs(e1) < std::abs(e2)) std::swap(e1, e2);
    if (!(std::abs(e1) > Scalar(1) + Scalar(1e-12)) || !(std::abs(e2) < Scalar(1) - Scalar(1e-12))) {
      throw std::invalid_argument("toral: matrix is not hyperbolic (eigenvalue on the unit circle)");
    }
    b_ = e1;
    a_ = e2;
    eu_ = eigenvector(b_);
    es_ = eigenvector(a_);
    basis_.col(0) = es_;
    basis_.col(1) = eu_;
    basis_inv_ = basis_.inverse();
    minv_ << matrix(1, 1), -matrix(0, 1), -matrix(1, 0), matrix(0, 0);
    minv_ *= static_cast<int>(det);

    lambda_max_ = std::min(Scalar(1) / std::abs(a_), std::abs(b_));
    const Scalar lambda = opt.lambda ? static_cast<Scalar>(*opt.lambda) : lambda_max_;
    if (!(lambda > Scalar(1)) || lambda > lambda_max_ * (Scalar(1) + Scalar(1e-12))) {
      throw std::invalid_argument("toral: lambda must lie in (1, min(1/|a|, |b|)]");
    }
    lambda_ = lambda;
    exp_s_ = std::log(lambda_) / std::log(Scalar(1) / std::abs(a_));
    exp_u_ = std::log(lambda_) / std::log(std::abs(b_));
    rho_min_ = compute_rho_min();
    xi_ = static_cast<Scalar>(opt.xi);
    if (!(xi_ > 0)) throw std::invalid_argument("toral: xi must be positive");
    // One step from xi must stay where the nearest translate is unique.
    if (lambda_ * xi_ > linear_radius()) {
      throw std::invalid_argument("toral: xi too large, lambda * xi exceeds half the lattice injectivity scale");
    }
    if (opt.validate) validate(opt.validation_pairs, opt.validation_seed);
  }

  // Closed-form unit eigenvector for eigenvalue mu.
  Vec eigenvector(Scalar mu) const {
    const Scalar p = m_(0, 0), q = m_(0, 1), r = m_(1, 0), t = m_(1, 1);
    Vec v;
    if (q != 0) {
      v << q, mu - p;
    } else if (r != 0) {
      v << mu - t, r;
    } else {
      v = std::abs(mu - p) < std::abs(mu - t) ? Vec(1, 0) : Vec(0, 1);
    }
    return v / v.norm();
  }

  const Eigen::Matrix2i& matrix() const { return m_; }
  const Eigen::Matrix2i& inverse_matrix() const { return minv_; }
  Scalar stable_eigenvalue() const { return a_; }
  Scalar unstable_eigenvalue() const { return b_; }
  const Vec& stable_unit() const { return es_; }
  const Vec& unstable_unit() const { return eu_; }
  Scalar exponent_s() const { return exp_s_; }
  Scalar exponent_u() const { return exp_u_; }
  Scalar lambda_max() const { return lambda_max_; }
  // Smallest rho over non-zero lattice vectors.
  Scalar rho_min() const { return rho_min_; }
  // Below this rho the nearest translate is unique and the metric is linear.
  Scalar linear_radius() const { return rho_min_ / 2; }

  SU su_split(const Vec& v) const {
    const Vec c = basis_inv_ * v;
    return {c(0), c(1)};
  }
  Vec from_su(Scalar s, Scalar u) const { return s * es_ + u * eu_; }

  Scalar rho(const Vec& v) const { return rho(su_split(v)); }
  Scalar rho(const SU& c) const {
    return std::max(std::pow(std::abs(c.s), exp_s_), std::pow(std::abs(c.u), exp_u_));
  }

  static Point wrap(const Vec& v) {
    Point p(v(0) - std::floor(v(0)), v(1) - std::floor(v(1)));
    // floor can return 1 - ulp + 1 == 1 for tiny negatives.
    for (int i = 0; i < 2; ++i) {
      if (p(i) >= Scalar(1)) p(i) -= Scalar(1);
    }
    return p;
  }

  // Translate of d minimizing rho among the 9 around the rounded one.
  Vec min_translate(const Vec& d) const {
    const Vec base(d(0) - std::round(d(0)), d(1) - std::round(d(1)));
    Vec best = base;
    Scalar best_rho = rho(base);
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        if (i == 0 && j == 0) continue;
        const Vec w = base + Vec(i, j);
        const Scalar r = rho(w);
        if (r < best_rho) {
          best_rho = r;
          best = w;
        }
      }
    }
    return best;
  }

  Point forward(const Point& x) const { return wrap(m_.cast<Scalar>() * x); }
  Point backward(const Point& x) const { return wrap(minv_.cast<Scalar>() * x); }
  Point apply(const Point& x) const { return forward(x); }
  Point apply_inv(const Point& x) const { return backward(x); }

  Distance distance(const Point& x, const Point& y) const { return rho(min_translate(y - x)); }
  double expanding_factor() const { return static_cast<double>(lambda_); }
  Distance expansive_constant() const { return xi_; }
  double tolerance() const { return 1e-9; }
  bool invertible() const { return true; }

  bool in_bracket_domain(const Point& x, const Point& y) const { return distance(x, y) < xi_; }
  // Point of W^s(x) ∩ W^u(y): x plus the stable component of y - x.
  Point bracket(const Point& x, const Point& y) const {
    if (!in_bracket_domain(x, y)) throw std::invalid_argument("toral bracket: dist(x, y) >= xi");
    const SU c = su_split(min_translate(y - x));
    return wrap(x + c.s * es_);
  }

  Point offset(const Point& x, Scalar s, Scalar u) const { return wrap(x + from_su(s, u)); }

  // Seeded pairs with dist in [scale/2, scale], stratified from unstable-
  // dominated to stable-dominated displacements.
  std::vector<PointPair<Point>> sample_pairs(Scalar scale, std::size_t count, std::uint64_t seed) const {
    if (!(scale > 0) || scale >= xi_) throw std::invalid_argument("sample_pairs: scale must lie in (0, xi)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PointPair<Point>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const Scalar r = scale * static_cast<Scalar>(0.5 + 0.5 * unit(rng));
      const Scalar mix = (static_cast<Scalar>(i) + static_cast<Scalar>(unit(rng))) / static_cast<Scalar>(count);
      out.push_back(pair_at(rng, r, mix));
    }
    return out;
  }

  // Seeded pairs with dist log-uniform in [lo, radius], lo = radius * 1e-4
  // raised so the dominant displacement stays above 1e-6: below that,
  // rounding of unit-scale coordinates alone exceeds the 1e-9 tolerance.
  std::vector<PointPair<Point>> sample_pairs_within(Scalar radius, std::size_t count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PointPair<Point>> out;
    out.reserve(count);
    const Scalar lo = std::max(radius * Scalar(1e-4), std::pow(Scalar(1e-6), std::min(exp_s_, exp_u_)));
    const double decades = lo < radius ? std::log10(static_cast<double>(radius / lo)) : 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Scalar r = radius * static_cast<Scalar>(std::pow(10.0, -decades * unit(rng)));
      out.push_back(pair_at(rng, r, static_cast<Scalar>(unit(rng))));
    }
    return out;
  }

  Point random_point(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Scalar px = static_cast<Scalar>(unit(rng));
    const Scalar py = static_cast<Scalar>(unit(rng));
    return Point(px, py);
  }

 private:
  // rho(displacement) == r exactly; mix < 1/2 lets the unstable part dominate.
  PointPair<Point> pair_at(std::mt19937_64& rng, Scalar r, Scalar mix) const {
    std::uniform_int_distribution<int> coin(0, 1);
    const Point x = random_point(rng);
    Scalar s_mag, u_mag;
    if (mix < Scalar(0.5)) {
      u_mag = std::pow(r, Scalar(1) / exp_u_);
      s_mag = std::pow(r * 2 * mix, Scalar(1) / exp_s_);
    } else {
      s_mag = std::pow(r, Scalar(1) / exp_s_);
      u_mag = std::pow(r * 2 * (1 - mix), Scalar(1) / exp_u_);
    }
    const Scalar s = coin(rng) ? s_mag : -s_mag;
    const Scalar u = coin(rng) ? u_mag : -u_mag;
    return {x, offset(x, s, u)};
  }

  Scalar compute_rho_min() const {
    Scalar best = std::numeric_limits<Scalar>::infinity();
    constexpr int kReach = 12;
    for (int i = -kReach; i <= kReach; ++i) {
      for (int j = -kReach; j <= kReach; ++j) {
        if (i == 0 && j == 0) continue;
        best = std::min(best, rho(Vec(i, j)));
      }
    }
    return best;
  }

  void validate(std::size_t count, std::uint64_t seed) const {
    const auto pairs = sample_pairs_within(xi_, count, seed);
    const auto report = verify_self_similar(*this, std::span<const PointPair<Point>>(pairs), tolerance());
    if (!report.pass()) {
      throw std::runtime_error("toral: self-similarity validation failed at xi (max deviation " +
                               std::to_string(report.max_deviation) + ")");
    }
  }

  Eigen::Matrix2i m_;
  Eigen::Matrix2i minv_;
  Scalar a_ = 0, b_ = 0;
  Vec es_, eu_;
  Eigen::Matrix<Scalar, 2, 2> basis_, basis_inv_;
  Scalar lambda_max_ = 0, lambda_ = 0, exp_s_ = 1, exp_u_ = 1, rho_min_ = 0, xi_ = 0;
};

using ToralSystemd = ToralSystem<double>;

inline Eigen::Matrix2i cat_map_matrix() {
  Eigen::Matrix2i m;
  m << 2, 1, 1, 1;
  return m;
}

template <std::floating_point Scalar = double>
ToralSystem<Scalar> toral_new(const Eigen::Matrix2i& matrix, std::optional<double> lambda = std::nullopt) {
  ToralOptions opt;
  opt.lambda = lambda;
  return ToralSystem<Scalar>(matrix, opt);
}

}  // namespace sshyp

#endif  // SSHYP_TORUS_TORAL_SYSTEM_HPP
