#include "sshyp/dimension/toral_dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sshyp/dimension/regression.hpp"

namespace sshyp {
namespace {

using Vec2 = Eigen::Vector2d;

struct Offset {
  int di, dj;
};

int steps_s(DynMode m) { return m.side == Sidedness::forward ? 0 : m.n; }
int steps_u(DynMode m) { return m.side == Sidedness::backward ? 0 : m.n; }

// Balls of radius R in d_mode are exactly their linear su-boxes when
// (1 + lambda) R <= rho_min: the first iterate leaving the R-ball is still
// within lambda R of the origin and at least rho_min - lambda R from any other
// lattice point.
void require_linear_ball(const ToralSystemd& sys, double radius) {
  if (radius * (1.0 + sys.expanding_factor()) > sys.rho_min()) {
    throw std::invalid_argument("toral cover: radius outside the linear regime of the metric");
  }
}

// All grid offsets (di, dj) / grid with d_mode <= radius (or < radius when strict).
std::vector<Offset> stencil(const ToralSystemd& sys, int grid, double radius, bool strict, DynMode mode) {
  require_linear_ball(sys, radius);
  const double lambda = sys.expanding_factor();
  const double slack = 1.0 + 1e-9;
  const double s_max = std::pow(radius / std::pow(lambda, steps_s(mode)), 1.0 / sys.exponent_s()) * slack;
  const double u_max = std::pow(radius / std::pow(lambda, steps_u(mode)), 1.0 / sys.exponent_u()) * slack;
  const auto sx = sys.su_split(Vec2(1, 0));
  const auto sy = sys.su_split(Vec2(0, 1));
  const Vec2 es = sys.stable_unit(), eu = sys.unstable_unit();
  const double g = static_cast<double>(grid);
  const int rows = static_cast<int>(std::ceil(g * (std::abs(es.y()) * s_max + std::abs(eu.y()) * u_max))) + 1;
  std::vector<Offset> out;
  for (int dj = -rows; dj <= rows; ++dj) {
    const double dy = dj / g;
    double lo = -1e300, hi = 1e300;
    auto clip = [&](double a, double b, double bound) {
      // |a dx + b dy| <= bound
      if (std::abs(a) < 1e-15) {
        if (std::abs(b * dy) > bound) hi = lo - 1;
        return;
      }
      double l = (-bound - b * dy) / a, h = (bound - b * dy) / a;
      if (l > h) std::swap(l, h);
      lo = std::max(lo, l);
      hi = std::min(hi, h);
    };
    clip(sx.s, sy.s, s_max);
    clip(sx.u, sy.u, u_max);
    if (lo > hi) continue;
    const int i0 = static_cast<int>(std::floor(lo * g)) - 1;
    const int i1 = static_cast<int>(std::ceil(hi * g)) + 1;
    if (2 * std::max(std::abs(i0), std::abs(i1)) >= grid || 2 * std::abs(dj) >= grid) {
      throw std::invalid_argument("toral cover: ball does not fit in the grid period");
    }
    for (int di = i0; di <= i1; ++di) {
      const double d = toral_dyn_rho(sys, Vec2(di / g, dy), mode);
      if (strict ? d < radius : d <= radius) out.push_back({di, dj});
    }
  }
  return out;
}

// Greedy cover: visit samples in order, and every sample still unmarked when
// visited opens a set marking its stencil. `seeds` are visited first, then
// all samples row-major.
long greedy_mark(int grid, const std::vector<Offset>& offsets, const std::vector<Offset>& seeds = {}) {
  std::vector<std::uint8_t> marked(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid), 0);
  long count = 0;
  auto visit = [&](int i, int j) {
    if (marked[static_cast<std::size_t>(j) * grid + i]) return;
    ++count;
    for (const auto& o : offsets) {
      const int jj = (j + o.dj % grid + grid) % grid;
      const int ii = (i + o.di % grid + grid) % grid;
      marked[static_cast<std::size_t>(jj) * grid + ii] = 1;
    }
  };
  for (const auto& s : seeds) visit(s.di, s.dj);
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) visit(i, j);
  }
  return count;
}

// Centers of a near-tiling of [0,1)^2 by su-boxes of half-widths (s_half,
// u_half): lattice steps are grid vectors just short of the box sides, so
// neighbouring balls overlap slightly. Seams where the lattice meets its
// wrapped copy are left to the row-major pass.
std::vector<Offset> tiling_seeds(const ToralSystemd& sys, int grid, double s_half, double u_half) {
  const double g = static_cast<double>(grid);
  auto step = [&](const Vec2& dir, double len) {
    const Vec2 v = dir * len * g;
    Offset o{static_cast<int>(std::lround(v.x())), static_cast<int>(std::lround(v.y()))};
    // Shrink until the rounded step stays inside the box side.
    for (double f = 1.0; f > 0.5; f -= 0.02) {
      const Vec2 w = dir * len * f * g;
      o = {static_cast<int>(std::lround(w.x())), static_cast<int>(std::lround(w.y()))};
      const auto c = sys.su_split(Vec2(o.di / g, o.dj / g));
      if (std::abs(c.s) <= 2.0 * s_half && std::abs(c.u) <= 2.0 * u_half) break;
    }
    return o;
  };
  const Offset a = step(sys.stable_unit(), 2.0 * s_half);
  const Offset b = step(sys.unstable_unit(), 2.0 * u_half);
  const double det = static_cast<double>(a.di) * b.dj - static_cast<double>(a.dj) * b.di;
  std::vector<Offset> out;
  if (std::abs(det) < 0.5) return out;
  // Lattice coordinates of the grid square's corners bound the index range.
  double lo_p = 1e300, hi_p = -1e300, lo_q = 1e300, hi_q = -1e300;
  for (double cx : {0.0, g}) {
    for (double cy : {0.0, g}) {
      const double p = (cx * b.dj - cy * b.di) / det;
      const double q = (a.di * cy - a.dj * cx) / det;
      lo_p = std::min(lo_p, p);
      hi_p = std::max(hi_p, p);
      lo_q = std::min(lo_q, q);
      hi_q = std::max(hi_q, q);
    }
  }
  for (long q = static_cast<long>(std::floor(lo_q)); q <= static_cast<long>(std::ceil(hi_q)); ++q) {
    for (long p = static_cast<long>(std::floor(lo_p)); p <= static_cast<long>(std::ceil(hi_p)); ++p) {
      const long i = p * a.di + q * b.di;
      const long j = p * a.dj + q * b.dj;
      if (i >= 0 && i < grid && j >= 0 && j < grid) out.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return out;
}

double log_mid(long upper, long lower) {
  return 0.5 * (std::log(static_cast<double>(upper)) + std::log(static_cast<double>(lower)));
}

// Covers of the unstable segment {x + t e_u : |t|^e_u <= xi}; the metric is
// translation invariant, so only offsets along the segment matter.
GeometricCover segment_cover(const ToralSystemd& sys, double eps, DynMode mode, double ratio) {
  const double half = std::pow(static_cast<double>(sys.expansive_constant()), 1.0 / sys.exponent_u());
  const Vec2 eu = sys.unstable_unit();
  auto d_at = [&](double t) { return toral_dyn_rho(sys, t * eu, mode); };
  const double lambda = sys.expanding_factor();
  double step = 2.0 * std::pow(ratio * eps / std::pow(lambda, steps_u(mode)), 1.0 / sys.exponent_u());
  while (d_at(step / 2) > ratio * eps) step *= 0.9;
  const long count = static_cast<long>(std::ceil(2.0 * half / step));
  step = 2.0 * half / static_cast<double>(count);

  GeometricCover out;
  out.epsilon = eps;
  out.grid = static_cast<int>(count);
  out.delta = d_at(step / 2);
  if (out.delta > eps / 4) throw std::invalid_argument("segment cover: sample too sparse");
  require_linear_ball(sys, eps);
  auto reach = [&](double radius, bool strict) {
    long k = 0;
    while (true) {
      const double d = d_at(static_cast<double>(k + 1) * step);
      if (strict ? !(d < radius) : !(d <= radius)) return k;
      ++k;
    }
  };
  const long k_cover = reach((eps / 2 - out.delta) * (1 - 1e-12), false);
  const long k_pack = reach(eps, true);
  for (long i = 0; i < count; i += k_cover + 1) ++out.upper;
  for (long i = 0; i < count; i += k_pack + 1) ++out.lower;
  return out;
}

}  // namespace

double toral_dyn_rho(const ToralSystemd& sys, const Eigen::Vector2d& w, DynMode mode) {
  const Vec2 v0 = sys.min_translate(w);
  double best = sys.rho(v0);
  const Eigen::Matrix2d m = sys.matrix().cast<double>();
  const Eigen::Matrix2d minv = sys.inverse_matrix().cast<double>();
  Vec2 v = v0;
  for (int k = 1; k <= steps_u(mode); ++k) {
    v = sys.min_translate(m * v);
    best = std::max(best, sys.rho(v));
  }
  v = v0;
  for (int k = 1; k <= steps_s(mode); ++k) {
    v = sys.min_translate(minv * v);
    best = std::max(best, sys.rho(v));
  }
  return best;
}

double sample_density(const ToralSystemd& sys, int grid, DynMode mode) {
  if (grid < 1) throw std::invalid_argument("sample_density: grid must be positive");
  const double h = 0.5 / grid;
  double best = 0.0;
  for (double sx : {-h, h}) {
    for (double sy : {-h, h}) best = std::max(best, toral_dyn_rho(sys, Vec2(sx, sy), mode));
  }
  return best;
}

int grid_for(const ToralSystemd& sys, double eps, DynMode mode, double ratio, int max_grid) {
  const double target = ratio * eps;
  int hi = 8;
  while (sample_density(sys, hi, mode) > target) {
    hi *= 2;
    if (hi > 2 * max_grid) throw std::invalid_argument("grid_for: required grid exceeds the cap");
  }
  int lo = hi / 2;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (sample_density(sys, mid, mode) > target ? lo : hi) = mid;
  }
  if (hi > max_grid) throw std::invalid_argument("grid_for: required grid exceeds the cap");
  return hi;
}

double toral_diameter(const ToralSystemd& sys) {
  constexpr int kSteps = 100;
  double best = 0.0;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; j <= kSteps; ++j) {
      const Vec2 v(-0.5 + static_cast<double>(i) / kSteps, -0.5 + static_cast<double>(j) / kSteps);
      best = std::max(best, sys.rho(sys.min_translate(v)));
    }
  }
  // Every point is within half a cell of the lattice of probes.
  const double h = 0.5 / kSteps;
  double pad = 0.0;
  for (double sx : {-h, h}) {
    for (double sy : {-h, h}) pad = std::max(pad, sys.rho(Vec2(sx, sy)));
  }
  return best + pad;
}

double toral_max_cover_eps(const ToralSystemd& sys) { return sys.rho_min() / (1.0 + sys.expanding_factor()); }

GeometricCover toral_cover(const ToralSystemd& sys, int grid, double eps, DynMode mode) {
  if (!(eps > 0.0)) throw std::invalid_argument("toral_cover: epsilon must be positive");
  GeometricCover out;
  out.epsilon = eps;
  out.grid = grid;
  if (eps > toral_diameter(sys)) {
    out.upper = out.lower = 1;
    return out;
  }
  out.delta = sample_density(sys, grid, mode);
  if (out.delta > eps / 4) {
    throw std::invalid_argument("toral_cover: sample too sparse (delta > eps/4)");
  }
  const double r = (eps / 2 - out.delta) * (1 - 1e-12);
  const double lambda = sys.expanding_factor();
  const double s_half = std::pow(r / std::pow(lambda, steps_s(mode)), 1.0 / sys.exponent_s());
  const double u_half = std::pow(r / std::pow(lambda, steps_u(mode)), 1.0 / sys.exponent_u());
  out.upper = greedy_mark(grid, stencil(sys, grid, r, false, mode), tiling_seeds(sys, grid, s_half, u_half));
  out.lower = greedy_mark(grid, stencil(sys, grid, eps, true, mode));
  return out;
}

std::vector<double> half_octave_schedule(double top, int count) {
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(top * std::pow(2.0, -0.5 * j));
  return out;
}

CapacityFit toral_capacity(const ToralSystemd& sys, const std::vector<double>& eps, double ratio) {
  std::vector<double> sorted = eps;
  std::sort(sorted.rbegin(), sorted.rend());
  if (sorted.size() < 6) throw std::invalid_argument("capacity: need at least 6 scales (4 after dropping two)");
  CapacityFit fit;
  std::vector<double> x, y_mid, y_up, y_lo;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double e = sorted[i];
    const auto c = toral_cover(sys, grid_for(sys, e, DynMode::two_sided(0), ratio), e, DynMode::two_sided(0));
    fit.cover.points.push_back({e, std::log(static_cast<double>(c.upper)), std::to_string(c.upper),
                                CoverMethod::greedy_upper});
    fit.cover.points.push_back({e, std::log(static_cast<double>(c.lower)), std::to_string(c.lower),
                                CoverMethod::packing_lower});
    if (i < 2) continue;  // transient scales
    x.push_back(-std::log(e));
    y_mid.push_back(log_mid(c.upper, c.lower));
    y_up.push_back(std::log(static_cast<double>(c.upper)));
    y_lo.push_back(std::log(static_cast<double>(c.lower)));
  }
  if (std::all_of(y_mid.begin(), y_mid.end(), [&](double v) { return v == y_mid.front(); })) {
    throw std::invalid_argument("capacity: degenerate fit (all covering numbers equal)");
  }
  const LinearFit f = least_squares(x, y_mid);
  fit.slope = f.slope;
  fit.intercept = f.intercept;
  fit.residual = f.residual;
  fit.points_used = f.points;
  fit.eps_max = sorted[2];
  fit.eps_min = sorted.back();
  fit.slope_upper = least_squares(x, y_up).slope;
  fit.slope_lower = least_squares(x, y_lo).slope;
  return fit;
}

EntropyReport toral_entropy(const ToralSystemd& sys, double eps, int n_max, double ratio) {
  if (n_max < 2) throw std::invalid_argument("toral_entropy: n_max must be at least 2");
  EntropyReport rep;
  rep.method = "greedy/packing midpoint on per-n grids";
  std::vector<double> n, two, fwd, bwd;
  auto measure = [&](DynMode mode) {
    const auto c = toral_cover(sys, grid_for(sys, eps, mode, ratio), eps, mode);
    return log_mid(c.upper, c.lower);
  };
  for (int k = 1; k <= n_max; ++k) {
    EntropyRow row;
    row.n = k;
    row.log_cov_two_sided = measure(DynMode::two_sided(k));
    row.log_cov_forward = measure(DynMode::forward(k));
    row.log_cov_backward = measure(DynMode::backward(k));
    rep.table.push_back(row);
    n.push_back(k);
    two.push_back(row.log_cov_two_sided);
    fwd.push_back(row.log_cov_forward);
    bwd.push_back(row.log_cov_backward);
  }
  rep.ent = least_squares(n, two).slope;
  rep.ent_plus = least_squares(n, fwd).slope;
  rep.ent_minus = least_squares(n, bwd).slope;
  return rep;
}

FundamentalReport toral_check_fundamental(const ToralSystemd& sys, const std::vector<double>& eps,
                                          double entropy_eps, int n_max) {
  FundamentalReport r;
  r.subset = "space";
  r.lambda = sys.expanding_factor();
  r.fit = toral_capacity(sys, eps);
  r.entropy_report = toral_entropy(sys, entropy_eps, n_max);
  r.capacity = r.fit.slope;
  r.entropy = r.entropy_report.ent;
  r.ent_over_log_lambda = r.entropy / std::log(r.lambda);
  r.relative_gap = std::abs(r.capacity - r.ent_over_log_lambda) / r.ent_over_log_lambda;
  return r;
}

FundamentalReport toral_check_fundamental_unstable(const ToralSystemd& sys, const std::vector<double>& eps,
                                                   int n_max) {
  FundamentalReport r;
  r.subset = "unstable-set";
  r.lambda = sys.expanding_factor();
  std::vector<double> sorted = eps;
  std::sort(sorted.rbegin(), sorted.rend());
  if (sorted.size() < 6) throw std::invalid_argument("capacity: need at least 6 scales (4 after dropping two)");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto c = segment_cover(sys, sorted[i], DynMode::two_sided(0), 1.0 / 12.0);
    r.fit.cover.points.push_back({sorted[i], std::log(static_cast<double>(c.upper)), std::to_string(c.upper),
                                  CoverMethod::greedy_upper});
    r.fit.cover.points.push_back({sorted[i], std::log(static_cast<double>(c.lower)), std::to_string(c.lower),
                                  CoverMethod::packing_lower});
    if (i < 2) continue;
    x.push_back(-std::log(sorted[i]));
    y.push_back(log_mid(c.upper, c.lower));
  }
  const LinearFit f = least_squares(x, y);
  r.fit.slope = f.slope;
  r.fit.intercept = f.intercept;
  r.fit.residual = f.residual;
  r.fit.points_used = f.points;
  r.fit.eps_max = sorted[2];
  r.fit.eps_min = sorted.back();
  r.capacity = f.slope;
  r.entropy = toral_local_unstable_entropy(sys, Vec2(0, 0), n_max);
  r.ent_over_log_lambda = r.entropy / std::log(r.lambda);
  r.relative_gap = std::abs(r.capacity - r.ent_over_log_lambda) / r.ent_over_log_lambda;
  return r;
}

std::vector<CovIdentityRow> toral_cov_identity(const ToralSystemd& sys, int k_first, int k_last, double ratio) {
  std::vector<CovIdentityRow> rows;
  const double xi = sys.expansive_constant();
  const double lambda = sys.expanding_factor();
  for (int k = k_first; k <= k_last; ++k) {
    const double e = xi / std::pow(lambda, k);
    const auto lhs = toral_cover(sys, grid_for(sys, e, DynMode::two_sided(0), ratio), e, DynMode::two_sided(0));
    const auto rhs = toral_cover(sys, grid_for(sys, xi, DynMode::two_sided(k), ratio), xi, DynMode::two_sided(k));
    CovIdentityRow row;
    row.k = k;
    row.lhs = std::to_string(lhs.lower) + ".." + std::to_string(lhs.upper);
    row.rhs = std::to_string(rhs.lower) + ".." + std::to_string(rhs.upper);
    row.lhs_lower = static_cast<double>(lhs.lower);
    row.lhs_upper = static_cast<double>(lhs.upper);
    row.rhs_lower = static_cast<double>(rhs.lower);
    row.rhs_upper = static_cast<double>(rhs.upper);
    row.equal = std::max(lhs.lower, rhs.lower) <= std::min(lhs.upper, rhs.upper);
    rows.push_back(std::move(row));
  }
  return rows;
}

double toral_local_unstable_entropy(const ToralSystemd& sys, const Eigen::Vector2d& /*x*/, int n_max,
                                    double ratio) {
  // The metric is translation invariant, so the estimate does not depend on x.
  if (n_max < 4) throw std::invalid_argument("local_unstable_entropy: n_max must be at least 4");
  const double xi = sys.expansive_constant();
  std::vector<double> n, y;
  for (int k = 1; k <= n_max; ++k) {
    const auto c = segment_cover(sys, xi, DynMode::forward(k), ratio);
    n.push_back(k);
    y.push_back(log_mid(c.upper, c.lower));
  }
  const std::size_t start = n.size() / 2;
  return least_squares(std::span<const double>(n).subspan(start), std::span<const double>(y).subspan(start)).slope;
}

}  // namespace sshyp
