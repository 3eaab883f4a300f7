#include "sshyp/dimension/report_io.hpp"

#include <charconv>
#include <cmath>

namespace sshyp {

namespace {

// JSON has no NaN or infinity; they serialize as null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? num(*v) : Json(nullptr);
}

}  // namespace

std::string word_string(const Word& w) {
  std::string s;
  for (Symbol c : w) s += std::to_string(static_cast<int>(c));
  return s;
}

Json to_json(const CoverReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"epsilon", num(p.epsilon)}, {"cov", p.cov}, {"log_cov", num(p.log_cov)},
                   {"method", to_string(p.method)}});
  }
  return pts;
}

Json to_json(const CapacityFit& f) {
  return {{"slope", num(f.slope)},
          {"intercept", num(f.intercept)},
          {"residual", num(f.residual)},
          {"eps_min", num(f.eps_min)},
          {"eps_max", num(f.eps_max)},
          {"points_used", f.points_used},
          {"slope_upper", opt(f.slope_upper)},
          {"slope_lower", opt(f.slope_lower)},
          {"cover", to_json(f.cover)}};
}

Json to_json(const EntropyReport& r) {
  Json table = Json::array();
  for (const auto& row : r.table) {
    table.push_back({{"n", row.n},
                     {"log_cov_two_sided", num(row.log_cov_two_sided)},
                     {"log_cov_forward", num(row.log_cov_forward)},
                     {"log_cov_backward", num(row.log_cov_backward)}});
  }
  return {{"ent", num(r.ent)},
          {"ent_plus", num(r.ent_plus)},
          {"ent_minus", num(r.ent_minus)},
          {"ent_standard", num(r.standard())},
          {"consistency_gap", num(r.consistency_gap())},
          {"method", r.method},
          {"table", table}};
}

Json to_json(const FundamentalReport& r) {
  return {{"subset", r.subset},
          {"lambda", num(r.lambda)},
          {"capacity", num(r.capacity)},
          {"entropy", num(r.entropy)},
          {"ent_over_log_lambda", num(r.ent_over_log_lambda)},
          {"relative_gap", num(r.relative_gap)},
          {"fit", to_json(r.fit)},
          {"entropy_report", to_json(r.entropy_report)}};
}

Json to_json(const std::vector<CovIdentityRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j = {{"k", r.k}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}};
    if (r.lhs_lower) {
      j["lhs_bracket"] = {num(*r.lhs_lower), num(*r.lhs_upper)};
      j["rhs_bracket"] = {num(*r.rhs_lower), num(*r.rhs_upper)};
    }
    out.push_back(j);
  }
  return out;
}

Json to_json(const LocalEntropyReport& r) {
  Json est = Json::array();
  for (double e : r.estimates) est.push_back(num(e));
  return {{"estimates", est}, {"reference", num(r.reference)}, {"spread", num(r.spread)},
          {"max_gap", num(r.max_gap)}};
}

Json to_json(const MeasureTree& t) {
  Json by_depth = Json::array();
  for (double v : t.by_depth) by_depth.push_back(num(v));
  return {{"set", to_string(t.set)},   {"d", num(t.d)},
          {"level", t.level},          {"depth", t.depth},
          {"root_state", t.root_state}, {"value", num(t.value)},
          {"leaf_diameter", num(t.leaf_diameter)}, {"by_depth", by_depth},
          {"method", t.method}};
}

Json to_json(const MeasureEstimate& e) {
  return {{"value_depth", num(e.value_depth)}, {"value_deeper", num(e.value_deeper)}, {"drift", num(e.drift)},
          {"converged", e.converged}, {"value", opt(e.value())}};
}

Json to_json(const BoxMeasure& m) {
  return {{"stable", num(m.stable)}, {"unstable", num(m.unstable)}, {"product", num(m.product)},
          {"holonomy_gap", num(m.holonomy_gap)}, {"admissible", m.admissible}};
}

Json to_json(const ScalingReport& r) {
  return {{"set", to_string(r.set)},  {"measure", num(r.measure)},     {"image_measure", num(r.image_measure)},
          {"ratio", num(r.ratio)},    {"expected", num(r.expected)},   {"deviation", num(r.deviation)}};
}

Json to_json(const HomogeneityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json masses = Json::array();
    for (double m : row.masses) masses.push_back(num(m));
    rows.push_back({{"n", row.n}, {"ratio", num(row.ratio)},
                    {"parry_ratio", row.parry_ratio > 0 ? num(row.parry_ratio) : Json(nullptr)},
                    {"masses", masses}});
  }
  return {{"k", r.k},
          {"c_observed", num(r.c_observed)},
          {"c_bound", num(r.c_bound)},
          {"trend_slope", num(r.trend_slope)},
          {"bounded", r.bounded},
          {"flat", r.flat},
          {"rows", rows}};
}

Json to_json(const ParryComparison& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"word", word_string(r.word)}, {"dp_mass", num(r.dp_mass)}, {"parry_mass", num(r.parry_mass)},
                    {"relative_gap", num(r.relative_gap)}});
  }
  return {{"length", c.length}, {"max_gap", num(c.max_gap)}, {"total_dp", num(c.total_dp)}, {"rows", rows}};
}

Json to_json(const std::vector<ConditionalRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"from", r.from}, {"to", r.to}, {"dp", num(r.dp)}, {"closed_form", num(r.closed_form)}});
  }
  return out;
}

Json to_json(const ToralBoxMeasure& m) {
  return {{"d", num(m.d)},         {"stable", num(m.stable)}, {"unstable", num(m.unstable)},
          {"product", num(m.product)}, {"area", num(m.area)}, {"ratio", num(m.ratio)}};
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const CsvTable& t) {
  os << "# sshyp " << t.name << " v1\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

CsvTable cover_csv(const CoverReport& r) {
  CsvTable t{"cover", {"epsilon", "cov", "log_cov", "method"}, {}};
  for (const auto& p : r.points) {
    t.rows.push_back({csv_number(p.epsilon), p.cov, csv_number(p.log_cov), to_string(p.method)});
  }
  return t;
}

CsvTable entropy_csv(const EntropyReport& r) {
  CsvTable t{"entropy", {"n", "log_cov_two_sided", "log_cov_forward", "log_cov_backward"}, {}};
  for (const auto& row : r.table) {
    t.rows.push_back({std::to_string(row.n), csv_number(row.log_cov_two_sided), csv_number(row.log_cov_forward),
                      csv_number(row.log_cov_backward)});
  }
  return t;
}

CsvTable cov_identity_csv(const std::vector<CovIdentityRow>& rows) {
  CsvTable t{"cov_identity", {"k", "lhs", "rhs", "equal"}, {}};
  for (const auto& r : rows) t.rows.push_back({std::to_string(r.k), r.lhs, r.rhs, r.equal ? "1" : "0"});
  return t;
}

CsvTable measure_depth_csv(const MeasureTree& t) {
  CsvTable c{"measure_depth", {"depth", "value"}, {}};
  for (std::size_t i = 0; i < t.by_depth.size(); ++i) {
    c.rows.push_back({std::to_string(i), csv_number(t.by_depth[i])});
  }
  return c;
}

CsvTable homogeneity_csv(const HomogeneityReport& r) {
  CsvTable t{"homogeneity", {"n", "ratio", "parry_ratio", "min_mass", "max_mass"}, {}};
  for (const auto& row : r.rows) {
    double lo = row.masses.front(), hi = row.masses.front();
    for (double m : row.masses) {
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    t.rows.push_back({std::to_string(row.n), csv_number(row.ratio),
                      row.parry_ratio > 0 ? csv_number(row.parry_ratio) : "", csv_number(lo), csv_number(hi)});
  }
  return t;
}

CsvTable parry_csv(const ParryComparison& c) {
  CsvTable t{"parry", {"word", "dp_mass", "parry_mass", "relative_gap"}, {}};
  for (const auto& r : c.rows) {
    t.rows.push_back({word_string(r.word), csv_number(r.dp_mass), csv_number(r.parry_mass),
                      csv_number(r.relative_gap)});
  }
  return t;
}

}  // namespace sshyp
