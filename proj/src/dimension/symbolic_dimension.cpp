#include "sshyp/dimension/symbolic_dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sshyp/dimension/regression.hpp"

namespace sshyp {
namespace {

struct Interval {
  long lo, hi;
};

// Union of [k - r, k + r] over the shifts k of the mode; must be contiguous.
Interval window_union(int r, DynMode mode) {
  long k_lo = -mode.n, k_hi = mode.n;
  if (mode.side == Sidedness::forward) k_lo = 0;
  if (mode.side == Sidedness::backward) k_hi = 0;
  std::vector<Interval> parts;
  for (long k = k_lo; k <= k_hi; ++k) parts.push_back({k - r, k + r});
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  Interval u = parts.front();
  for (const auto& p : parts) {
    if (p.lo > u.hi + 1) throw std::logic_error("window_union: windows are not contiguous");
    u.hi = std::max(u.hi, p.hi);
  }
  return u;
}

LinearFit upper_half_slope(const std::vector<double>& n, const std::vector<double>& y) {
  const std::size_t start = n.size() / 2;
  return least_squares(std::span<const double>(n).subspan(start), std::span<const double>(y).subspan(start));
}

CapacityFit fit_capacity(CoverReport cover) {
  // Drop the two largest scales: they carry the finite-scale transient.
  std::vector<CoverPoint> pts = cover.points;
  std::sort(pts.begin(), pts.end(), [](const CoverPoint& a, const CoverPoint& b) { return a.epsilon > b.epsilon; });
  if (pts.size() < 6) throw std::invalid_argument("capacity: need at least 6 scales (4 after dropping two)");
  pts.erase(pts.begin(), pts.begin() + 2);
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(-std::log(p.epsilon));
    y.push_back(p.log_cov);
  }
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) {
    throw std::invalid_argument("capacity: degenerate fit (all covering numbers equal)");
  }
  const LinearFit f = least_squares(x, y);
  CapacityFit fit;
  fit.slope = f.slope;
  fit.intercept = f.intercept;
  fit.residual = f.residual;
  fit.points_used = f.points;
  fit.eps_max = pts.front().epsilon;
  fit.eps_min = pts.back().epsilon;
  fit.cover = std::move(cover);
  return fit;
}

CoverPoint exact_point(double eps, const BigInt& count) {
  return CoverPoint{eps, log_big(count), count.str(), CoverMethod::exact_symbolic};
}

}  // namespace

double log_big(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log_big: non-positive value");
  // Scale down by powers of two so the conversion to double stays finite.
  const std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 1000) return std::log(v.convert_to<double>());
  const std::size_t shift = bits - 900;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::vector<double> dyadic_schedule(int first, int last) {
  std::vector<double> out;
  for (int j = first; j <= last; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

std::vector<double> lambda_schedule(double lambda, int first, int last) {
  if (!(lambda > 1.0)) throw std::invalid_argument("lambda_schedule: lambda must exceed 1");
  std::vector<double> out;
  for (int j = first; j <= last; ++j) {
    const double e = std::pow(lambda, -j);
    if (!std::isnormal(e)) throw std::invalid_argument("lambda_schedule: lambda^-last underflows");
    out.push_back(e);
  }
  return out;
}

CoverPoint cov_eps(const SubshiftSystem& sys, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("cov_eps: epsilon must be positive");
  if (eps > sys.expanding_factor()) return exact_point(eps, BigInt(1));
  return exact_point(eps, exact_cov(sys, eps));
}

CoverReport symbolic_cover(const SubshiftSystem& sys, const std::vector<double>& eps) {
  CoverReport r;
  for (double e : eps) r.points.push_back(exact_point(e, exact_cov(sys, e)));
  return r;
}

BigInt cov_dynamic(const SubshiftSystem& sys, const LambdaPower& eps, DynMode mode) {
  if (mode.n < 0) throw std::invalid_argument("cov_dynamic: window must be non-negative");
  const Interval w = window_union(cover_radius(eps), mode);
  return count_words(sys.matrix(), static_cast<int>(w.hi - w.lo + 1));
}

CapacityFit capacity(const SubshiftSystem& sys, const std::vector<double>& eps) {
  return fit_capacity(symbolic_cover(sys, eps));
}

CapacityFit capacity_unstable(const SubshiftSystem& sys, const BiSequence& x, const std::vector<double>& eps) {
  // W^u_xi(x) fixes i <= 1; a set of diameter < eps fixes |i| <= m as well,
  // so the classes are words on [1, m] starting with x(1).
  CoverReport r;
  for (double e : eps) {
    const int m = cover_radius(e, sys.expanding_factor());
    r.points.push_back(exact_point(e, count_words_from(sys.matrix(), x.at(1), std::max(1, m))));
  }
  return fit_capacity(std::move(r));
}

EntropyReport entropy(const SubshiftSystem& sys, int n_max) {
  if (n_max < 4) throw std::invalid_argument("entropy: n_max must be at least 4");
  const LambdaPower xi = sys.expansive_constant();
  EntropyReport rep;
  rep.method = "exact-symbolic";
  std::vector<double> n, two, fwd, bwd;
  for (int k = 1; k <= n_max; ++k) {
    EntropyRow row;
    row.n = k;
    row.log_cov_two_sided = log_big(cov_dynamic(sys, xi, DynMode::two_sided(k)));
    row.log_cov_forward = log_big(cov_dynamic(sys, xi, DynMode::forward(k)));
    row.log_cov_backward = log_big(cov_dynamic(sys, xi, DynMode::backward(k)));
    rep.table.push_back(row);
    n.push_back(k);
    two.push_back(row.log_cov_two_sided);
    fwd.push_back(row.log_cov_forward);
    bwd.push_back(row.log_cov_backward);
  }
  rep.ent = upper_half_slope(n, two).slope;
  rep.ent_plus = upper_half_slope(n, fwd).slope;
  rep.ent_minus = upper_half_slope(n, bwd).slope;
  return rep;
}

FundamentalReport check_fundamental(const SubshiftSystem& sys, const std::vector<double>& eps, int n_max) {
  FundamentalReport r;
  r.subset = "space";
  r.lambda = sys.expanding_factor();
  r.fit = capacity(sys, eps);
  r.entropy_report = entropy(sys, n_max);
  r.capacity = r.fit.slope;
  r.entropy = r.entropy_report.ent;
  r.ent_over_log_lambda = r.entropy / std::log(r.lambda);
  r.relative_gap = std::abs(r.capacity - r.ent_over_log_lambda) / r.ent_over_log_lambda;
  return r;
}

FundamentalReport check_fundamental_unstable(const SubshiftSystem& sys, const BiSequence& x,
                                             const std::vector<double>& eps, int n_max) {
  FundamentalReport r;
  r.subset = "unstable-set";
  r.lambda = sys.expanding_factor();
  r.fit = capacity_unstable(sys, x, eps);
  r.capacity = r.fit.slope;
  r.entropy = local_unstable_entropy(sys, x, n_max);
  r.ent_over_log_lambda = r.entropy / std::log(r.lambda);
  r.relative_gap = std::abs(r.capacity - r.ent_over_log_lambda) / r.ent_over_log_lambda;
  return r;
}

std::vector<CovIdentityRow> cov_identity_check(const SubshiftSystem& sys, int k_first, int k_last) {
  std::vector<CovIdentityRow> rows;
  const LambdaPower xi = sys.expansive_constant();
  for (int k = k_first; k <= k_last; ++k) {
    const BigInt lhs = exact_cov(sys, xi.scaled(-k));
    const BigInt rhs = cov_dynamic(sys, xi, DynMode::two_sided(k));
    CovIdentityRow row;
    row.k = k;
    row.lhs = lhs.str();
    row.rhs = rhs.str();
    row.equal = lhs == rhs;
    rows.push_back(std::move(row));
  }
  return rows;
}

double local_unstable_entropy(const SubshiftSystem& sys, const BiSequence& x, int n_max) {
  if (n_max < 4) throw std::invalid_argument("local_unstable_entropy: n_max must be at least 4");
  // d_n^+ < xi fixes [-2, n + 2]; inside W^u_xi(x) only [2, n + 2] is free.
  std::vector<double> n, y;
  for (int k = 1; k <= n_max; ++k) {
    n.push_back(k);
    y.push_back(log_big(count_words_from(sys.matrix(), x.at(1), k + 2)));
  }
  return upper_half_slope(n, y).slope;
}

LocalEntropyReport local_entropy_homogeneity(const SubshiftSystem& sys, const std::vector<BiSequence>& xs,
                                             int n_max) {
  if (xs.empty()) throw std::invalid_argument("local_entropy_homogeneity: no base points");
  LocalEntropyReport r;
  r.reference = entropy(sys, std::max(n_max, 4)).ent / 2.0;
  for (const auto& x : xs) r.estimates.push_back(local_unstable_entropy(sys, x, n_max));
  const auto [lo, hi] = std::minmax_element(r.estimates.begin(), r.estimates.end());
  r.spread = (*hi - *lo) / r.reference;
  for (double e : r.estimates) r.max_gap = std::max(r.max_gap, std::abs(e - r.reference) / r.reference);
  return r;
}

double ideal_factor(double ent, int dim) {
  if (dim < 1) throw std::invalid_argument("ideal_factor: dimension must be at least 1");
  return std::exp(ent / dim);
}

bool dimension_bound_holds(double ent, int dim, double lambda) {
  if (dim < 1) throw std::invalid_argument("dimension_bound: dimension must be at least 1");
  return dim * std::log(lambda) <= ent * (1.0 + 1e-12);
}

}  // namespace sshyp
