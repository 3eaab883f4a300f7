#ifndef SSHYP_DIMENSION_REPORTS_HPP
#define SSHYP_DIMENSION_REPORTS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace sshyp {

enum class CoverMethod { exact_symbolic, greedy_upper, packing_lower };

inline std::string to_string(CoverMethod m) {
  switch (m) {
    case CoverMethod::exact_symbolic: return "exact-symbolic";
    case CoverMethod::greedy_upper: return "greedy-upper";
    case CoverMethod::packing_lower: return "packing-lower";
  }
  return "?";
}

struct CoverPoint {
  double epsilon = 0.0;
  double log_cov = 0.0;
  std::string cov;  // decimal; exact for symbolic counts
  CoverMethod method = CoverMethod::exact_symbolic;
};

// Covering numbers across scales; cov is non-increasing in epsilon per method.
struct CoverReport {
  std::vector<CoverPoint> points;
};

struct CapacityFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  double eps_min = 0.0;  // scale range used by the fit
  double eps_max = 0.0;
  int points_used = 0;
  // Geometric covers fit the log-midpoint of the bracket; the bracket slopes
  // are reported alongside.
  std::optional<double> slope_upper;
  std::optional<double> slope_lower;
  CoverReport cover;
};

struct EntropyRow {
  int n = 0;
  double log_cov_two_sided = 0.0;
  double log_cov_forward = 0.0;
  double log_cov_backward = 0.0;
};

// Entropies in the two-sided convention (ent = 2 ent^+ = 2 ent^-). The standard
// one-sided value is ent / 2 and is reported explicitly as well.
struct EntropyReport {
  double ent = 0.0;
  double ent_plus = 0.0;
  double ent_minus = 0.0;
  double standard() const { return ent / 2.0; }
  double consistency_gap() const { return std::abs(ent - 2.0 * ent_plus); }
  std::string method;
  std::vector<EntropyRow> table;
};

struct FundamentalReport {
  std::string subset;  // "space" or "unstable-set"
  double lambda = 0.0;
  double capacity = 0.0;
  double entropy = 0.0;               // ent (space) or ent^+ (unstable set)
  double ent_over_log_lambda = 0.0;
  double relative_gap = 0.0;          // |capacity - ent/log lambda| / (ent/log lambda)
  CapacityFit fit;
  EntropyReport entropy_report;
};

struct CovIdentityRow {
  int k = 0;
  std::string lhs;  // cov_{xi/lambda^k}(M, dist)
  std::string rhs;  // cov_xi(M, d_k^f)
  bool equal = false;
  // Toral rows carry brackets [lower, upper] for both sides.
  std::optional<double> lhs_lower, lhs_upper, rhs_lower, rhs_upper;
};

struct LocalEntropyReport {
  std::vector<double> estimates;  // one per base point
  double reference = 0.0;         // ent(M) / 2
  double spread = 0.0;            // (max - min) / reference
  double max_gap = 0.0;           // max |estimate - reference| / reference
};

}  // namespace sshyp

#endif  // SSHYP_DIMENSION_REPORTS_HPP
