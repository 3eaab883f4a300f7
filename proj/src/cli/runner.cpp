#include "sshyp/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <optional>
#include <thread>

#include "sshyp/core/dynamics.hpp"
#include "sshyp/dimension/symbolic_dimension.hpp"
#include "sshyp/dimension/toral_dimension.hpp"
#include "sshyp/measure/intrinsic.hpp"
#include "sshyp/symbolic/perron.hpp"
#include "sshyp/torus/refined.hpp"

namespace sshyp::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
  ExperimentConfig cfg;
  std::optional<SubshiftSystem> sft;
  std::optional<ToralSystemd> torus;
};

using CheckFn = std::function<CheckResult(const Context&, std::uint64_t)>;

struct Task {
  std::string name;
  std::string command;
  CheckFn fn;
};

// FNV-1a of the check name mixed with the run seed: each check draws from its
// own stream, independent of scheduling.
std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull ^ (seed * 0x9e3779b97f4a7c15ull);
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

CheckResult result(bool pass, double value, Json tolerance, std::string method, Json payload) {
  CheckResult r;
  r.pass = pass;
  r.value = value;
  r.tolerance = std::move(tolerance);
  r.method = std::move(method);
  r.payload = std::move(payload);
  return r;
}

double rel_gap(double observed, double expected) { return std::abs(observed - expected) / std::abs(expected); }

template <class P>
std::span<const PointPair<P>> as_span(const std::vector<PointPair<P>>& v) {
  return std::span<const PointPair<P>>(v);
}

Json verification_json(const VerificationReport& r) {
  Json rej = Json::array();
  for (const auto& x : r.rejected) rej.push_back({{"index", x.index}, {"reason", x.reason}});
  return {{"checked", r.checked},
          {"within_tolerance", r.within_tolerance},
          {"max_deviation", r.max_deviation},
          {"worst_pair", r.worst_pair ? Json(*r.worst_pair) : Json(nullptr)},
          {"rejected", rej}};
}

template <class S>
CheckResult expansion_check(const S& sys, const std::vector<PointPair<typename S::Point>>& pairs, double tol) {
  std::size_t expanded = 0;
  int steps = 0;
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    const auto r = expansion_law_check(sys, x, y, tol);
    if (r.direction) ++expanded;
    steps += r.steps_checked;
    worst = std::max(worst, r.max_deviation);
  }
  const bool pass = expanded == pairs.size() && worst <= tol;
  return result(pass, worst, tol, "iterate-until-xi",
                {{"pairs", pairs.size()}, {"expanded_first_step", expanded}, {"steps_checked", steps},
                 {"max_deviation", worst}});
}

template <class S>
CheckResult contraction_check(const S& sys, const std::vector<PointPair<typename S::Point>>& pairs, LocalSet set,
                              int steps, double tol) {
  std::size_t separated = 0;
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    const auto r = stable_contraction_check(sys, x, y, set, steps);
    if (!r.precondition_ok()) ++separated;
    worst = std::max(worst, r.max_deviation);
  }
  const bool pass = separated == 0 && worst <= tol;
  return result(pass, worst, tol, "iterate-n-steps",
                {{"set", to_string(set)}, {"pairs", pairs.size()}, {"steps", steps}, {"separated", separated},
                 {"max_deviation", worst}});
}

template <class S>
CheckResult holonomy_check(const S& sys, const std::vector<HolonomySample<typename S::Point>>& samples) {
  std::size_t bounded = 0, within = 0;
  double worst = 0.0;
  double worst_excess = 0.0;  // observed / bound over bounded samples
  for (const auto& h : samples) {
    const auto r = holonomy_deviation(sys, h.p, h.q, h.proj_p, h.proj_q);
    worst = std::max(worst, r.observed);
    if (r.bound) {
      ++bounded;
      if (r.within_bound()) ++within;
      worst_excess = std::max(worst_excess, *r.bound > 0 ? r.observed / *r.bound : 0.0);
    }
  }
  return result(within == bounded && bounded > 0, worst, "2/(lambda^(m-1)-2)", "sampled-plaque-pairs",
                {{"samples", samples.size()}, {"bounded_samples", bounded}, {"within_bound", within},
                 {"max_observed", worst}, {"max_observed_over_bound", worst_excess}});
}

// ---------------------------------------------------------------- symbolic

std::vector<Task> symbolic_tasks(const std::string& command, bool primitive) {
  std::vector<Task> t;
  // "all" leaves out the checks against closed-form mixing values on
  // reducible systems: there word counts carry polynomial factors that bias
  // finite-scale fits, and the measure checks need primitivity.
  auto add = [&](std::string name, std::string cmd, CheckFn fn) {
    const bool needs_mixing = cmd == "capacity" || cmd == "entropy" || cmd == "measure" || cmd == "homogeneity";
    if (command == cmd || (command == "all" && (primitive || !needs_mixing))) {
      t.push_back({std::move(name), std::move(cmd), std::move(fn)});
    }
  };

  add("self-similarity", "verify", [](const Context& c, std::uint64_t seed) {
    Rng rng(seed);
    const auto pairs = random_close_pairs(*c.sft, rng, static_cast<std::size_t>(c.cfg.params.pairs), c.cfg.params.t_max);
    const auto r = verify_self_similar(*c.sft, as_span(pairs), 0.0);
    return result(r.pass() && r.max_deviation == 0.0, r.max_deviation, 0.0, "exact-exponent", verification_json(r));
  });
  add("expansion-law", "verify", [](const Context& c, std::uint64_t seed) {
    Rng rng(seed);
    const auto pairs = random_close_pairs(*c.sft, rng, static_cast<std::size_t>(c.cfg.params.local_pairs),
                                          c.cfg.params.t_max);
    return expansion_check(*c.sft, pairs, 0.0);
  });
  for (LocalSet set : {LocalSet::stable, LocalSet::unstable}) {
    add("contraction-" + to_string(set), "verify", [set](const Context& c, std::uint64_t seed) {
      Rng rng(seed);
      const auto pairs = random_local_pairs(*c.sft, rng, static_cast<std::size_t>(c.cfg.params.local_pairs), set,
                                            c.cfg.params.t_max);
      return contraction_check(*c.sft, pairs, set, c.cfg.params.contraction_steps, 0.0);
    });
  }

  add("capacity", "capacity", [](const Context& c, std::uint64_t) {
    const auto& sys = *c.sft;
    const double expected = 2.0 * std::log(perron_root(sys.matrix())) / std::log(sys.expanding_factor());
    const auto fit = capacity(sys, lambda_schedule(c.sft->expanding_factor(), c.cfg.params.scale_first, c.cfg.params.scale_last));
    auto r = result(rel_gap(fit.slope, expected) <= 0.02, fit.slope, 0.02, "exact-cylinder-counts",
                    {{"capacity", fit.slope}, {"expected", expected}, {"relative_gap", rel_gap(fit.slope, expected)},
                     {"fit", sshyp::to_json(fit)}});
    r.tables.push_back(cover_csv(fit.cover));
    return r;
  });

  add("entropy", "entropy", [](const Context& c, std::uint64_t) {
    const auto& sys = *c.sft;
    const double expected = 2.0 * std::log(perron_root(sys.matrix()));
    const auto e = entropy(sys, c.cfg.params.n_max);
    const bool pass = rel_gap(e.ent, expected) <= 0.02 && rel_gap(2.0 * e.ent_plus, expected) <= 0.02 &&
                      rel_gap(2.0 * e.ent_minus, expected) <= 0.02;
    auto r = result(pass, e.ent, 0.02, e.method,
                    {{"expected_two_sided", expected}, {"expected_standard", expected / 2.0},
                     {"relative_gap", rel_gap(e.ent, expected)}, {"entropy", sshyp::to_json(e)}});
    r.tables.push_back(entropy_csv(e));
    return r;
  });

  add("fundamental", "fundamental", [](const Context& c, std::uint64_t) {
    const auto f = check_fundamental(*c.sft, lambda_schedule(c.sft->expanding_factor(), c.cfg.params.scale_first, c.cfg.params.scale_last),
                                     c.cfg.params.n_max);
    auto r = result(f.relative_gap <= 0.02, f.capacity, 0.02, "capacity-vs-entropy", sshyp::to_json(f));
    r.tables.push_back(cover_csv(f.fit.cover));
    r.tables.push_back(entropy_csv(f.entropy_report));
    return r;
  });
  add("fundamental-unstable", "fundamental", [](const Context& c, std::uint64_t seed) {
    Rng rng(seed);
    const auto x = random_point(c.sft->matrix(), rng, 4);
    const auto f = check_fundamental_unstable(
        *c.sft, x, lambda_schedule(c.sft->expanding_factor(), c.cfg.params.scale_first, c.cfg.params.scale_last), c.cfg.params.n_max);
    return result(f.relative_gap <= 0.02, f.capacity, 0.02, "capacity-vs-entropy",
                  {{"base_point", x.to_string()}, {"report", sshyp::to_json(f)}});
  });
  add("cov-identity", "fundamental", [](const Context& c, std::uint64_t) {
    const auto rows = cov_identity_check(*c.sft, 0, c.cfg.params.k_max);
    const bool pass = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.equal; });
    auto r = result(pass, static_cast<double>(rows.size()), "exact", "exact-integer", sshyp::to_json(rows));
    r.tables.push_back(cov_identity_csv(rows));
    return r;
  });

  add("triangles", "triangles", [](const Context& c, std::uint64_t seed) {
    Rng rng(seed);
    const auto pairs = random_close_pairs(*c.sft, rng, static_cast<std::size_t>(c.cfg.params.triangle_pairs),
                                          c.cfg.params.t_max);
    double worst = 0.0;
    std::size_t degenerate = 0;
    for (const auto& [x, y] : pairs) {
      const auto t = triangle_ratio(*c.sft, x, y);
      if (!t.ratio) ++degenerate;
      worst = std::max(worst, t.deviation);
    }
    return result(worst == 0.0 && degenerate == 0, worst, 0.0, "exact-exponent",
                  {{"pairs", pairs.size()}, {"degenerate", degenerate}, {"max_deviation", worst}});
  });

  add("holonomy", "holonomy", [](const Context& c, std::uint64_t seed) {
    Rng rng(seed);
    const auto samples = random_holonomy_samples(*c.sft, rng, static_cast<std::size_t>(c.cfg.params.holonomy_samples),
                                                 c.cfg.params.t_max);
    return holonomy_check(*c.sft, samples);
  });

  add("hausdorff", "measure", [](const Context& c, std::uint64_t seed) {
    const auto& sys = *c.sft;
    Rng rng(seed);
    const auto x = random_point(sys.matrix(), rng, 4);
    const double d = intrinsic_exponent(sys);
    const auto u = hausdorff_converged(sys, x, LocalSet::unstable, 1, d, c.cfg.params.depth);
    const auto s = hausdorff_converged(sys, x, LocalSet::stable, 1, d, c.cfg.params.depth);
    const auto tree = hausdorff_estimate(sys, x, LocalSet::unstable, 1, d, c.cfg.params.depth);
    const bool finite = std::isfinite(u.value_deeper) && u.value_deeper > 0 && std::isfinite(s.value_deeper) &&
                        s.value_deeper > 0;
    auto r = result(u.converged && s.converged && finite, u.value_deeper, 0.01, tree.method,
                    {{"d", d}, {"base_point", x.to_string()}, {"unstable", sshyp::to_json(u)},
                     {"stable", sshyp::to_json(s)}, {"tree", sshyp::to_json(tree)}});
    r.tables.push_back(measure_depth_csv(tree));
    return r;
  });
  for (LocalSet set : {LocalSet::unstable, LocalSet::stable}) {
    add("scaling-" + to_string(set), "measure", [set](const Context& c, std::uint64_t seed) {
      const auto& sys = *c.sft;
      Rng rng(seed);
      const auto x = random_point(sys.matrix(), rng, 4);
      const auto s = scaling_check(sys, x, set, intrinsic_exponent(sys), c.cfg.params.depth);
      return result(s.deviation <= 0.03, s.ratio, 0.03, "cylinder-dp", sshyp::to_json(s));
    });
  }
  add("parry", "measure", [](const Context& c, std::uint64_t) {
    const auto cmp = parry_compare(*c.sft, 8, c.cfg.params.depth);
    const auto cond = dp_conditionals(*c.sft, c.cfg.params.depth);
    double cond_gap = 0.0;
    for (const auto& row : cond) cond_gap = std::max(cond_gap, std::abs(row.dp - row.closed_form));
    auto r = result(cmp.max_gap <= 0.05 && cond_gap <= 1e-9, cmp.max_gap,
                    Json{{"masses", 0.05}, {"conditionals", 1e-9}}, "normalized-box-masses",
                    {{"max_gap", cmp.max_gap}, {"conditional_gap", cond_gap}, {"conditionals", sshyp::to_json(cond)},
                     {"comparison", sshyp::to_json(cmp)}});
    r.tables.push_back(parry_csv(cmp));
    return r;
  });

  add("f-homogeneity", "homogeneity", [](const Context& c, std::uint64_t seed) {
    const auto& sys = *c.sft;
    Rng rng(seed);
    std::vector<BiSequence> xs;
    for (int i = 0; i < c.cfg.params.points; ++i) xs.push_back(random_point(sys.matrix(), rng, c.cfg.params.n_last + 4));
    const auto h = homogeneity_check(sys, xs, c.cfg.params.n_first, c.cfg.params.n_last, 1, c.cfg.params.depth);
    auto r = result(h.pass(), h.c_observed, Json{{"c_bound", h.c_bound}}, "cylinder-dp-boxes", sshyp::to_json(h));
    r.tables.push_back(homogeneity_csv(h));
    return r;
  });
  add("homogeneous-entropy", "homogeneity", [](const Context& c, std::uint64_t seed) {
    const auto& sys = *c.sft;
    Rng rng(seed);
    std::vector<BiSequence> xs;
    for (int i = 0; i < c.cfg.params.local_points; ++i) xs.push_back(random_point(sys.matrix(), rng, 4));
    const auto h = local_entropy_homogeneity(sys, xs, c.cfg.params.n_max);
    return result(h.spread <= 0.01 && h.max_gap <= 0.01, h.max_gap, 0.01, "exact-word-counts", sshyp::to_json(h));
  });
  return t;
}

// ---------------------------------------------------------------- toral

constexpr double kToralTol = 1e-9;
// Rounding error in the expanding direction grows like |b|^n while the pair
// contracts by |b|^-n. Capping the amplification |b|^(2n) at 1e7 keeps pairs
// at rho >= xi/10 near 1e-10 (eight steps on the cat map).
int toral_float_horizon(const ToralSystemd& sys) {
  const double b = std::abs(sys.unstable_eigenvalue());
  return std::max(1, static_cast<int>(std::floor(std::log(1e7) / (2.0 * std::log(b)))));
}

// Toral covers need eps (1 + lambda) <= rho_min; configured scales above that clamp.
double cover_top(const ToralSystemd& sys, double eps) { return std::min(eps, toral_max_cover_eps(sys)); }

bool grid_fits(const ToralSystemd& sys, double eps, int n) {
  try {
    grid_for(sys, eps, DynMode::two_sided(n));
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

// Largest entropy window whose two-sided grid fits under the cap; steep matrices get fewer steps.
int entropy_window(const ToralSystemd& sys, double eps, int n_max) {
  int n = n_max;
  while (n > 2 && !grid_fits(sys, eps, n)) --n;
  return n;
}

// Largest k whose two covers both fit under the grid cap.
int cov_identity_k_last(const ToralSystemd& sys, int k_max) {
  const double xi = sys.expansive_constant();
  int k = k_max;
  while (k > 0 && !(grid_fits(sys, xi, k) && grid_fits(sys, xi / std::pow(sys.expanding_factor(), k), 0))) --k;
  return k;
}

std::vector<PointPair<TorusPoint>> toral_local_pairs(const ToralSystemd& sys, LocalSet set, std::size_t count,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PointPair<TorusPoint>> out;
  const double xi = sys.expansive_constant();
  while (out.size() < count) {
    const TorusPoint x = sys.random_point(rng);
    const double r = xi * std::pow(10.0, -unit(rng));
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    const TorusPoint y = set == LocalSet::stable ? sys.offset(x, sign * std::pow(r, 1.0 / sys.exponent_s()), 0.0)
                                                  : sys.offset(x, 0.0, sign * std::pow(r, 1.0 / sys.exponent_u()));
    out.emplace_back(x, y);
  }
  return out;
}

std::vector<Task> toral_tasks(const std::string& command) {
  std::vector<Task> t;
  auto add = [&](std::string name, std::string cmd, CheckFn fn) {
    if (command == cmd || command == "all") t.push_back({std::move(name), std::move(cmd), std::move(fn)});
  };

  add("self-similarity", "verify", [](const Context& c, std::uint64_t seed) {
    const auto pairs = c.torus->sample_pairs(c.cfg.params.scale, static_cast<std::size_t>(c.cfg.params.pairs), seed);
    const auto r = verify_self_similar(*c.torus, as_span(pairs), kToralTol);
    return result(r.pass(), r.max_deviation, kToralTol, "float-relative", verification_json(r));
  });
  add("expansion-law", "verify", [](const Context& c, std::uint64_t seed) {
    const auto pairs =
        c.torus->sample_pairs(c.cfg.params.scale, static_cast<std::size_t>(c.cfg.params.local_pairs), seed);
    return expansion_check(*c.torus, pairs, kToralTol);
  });
  for (LocalSet set : {LocalSet::stable, LocalSet::unstable}) {
    add("contraction-" + to_string(set), "verify", [set](const Context& c, std::uint64_t seed) {
      const auto pairs = toral_local_pairs(*c.torus, set, static_cast<std::size_t>(c.cfg.params.local_pairs), seed);
      const int horizon = toral_float_horizon(*c.torus);
      auto r = contraction_check(*c.torus, pairs, set, std::min(c.cfg.params.contraction_steps, horizon),
                                 kToralTol);
      r.payload["float_horizon"] = horizon;
      return r;
    });
  }

  auto expected_capacity = [](const ToralSystemd& sys) {
    return 2.0 * std::log(std::abs(sys.unstable_eigenvalue())) / std::log(sys.expanding_factor());
  };
  add("capacity", "capacity", [expected_capacity](const Context& c, std::uint64_t) {
    const double expected = expected_capacity(*c.torus);
    const double top = cover_top(*c.torus, c.cfg.params.eps_top);
    const auto fit = toral_capacity(*c.torus, half_octave_schedule(top, c.cfg.params.eps_count));
    auto r = result(rel_gap(fit.slope, expected) <= 0.10, fit.slope, 0.10, "grid-greedy-packing",
                    {{"capacity", fit.slope}, {"expected", expected}, {"relative_gap", rel_gap(fit.slope, expected)},
                     {"eps_top_used", top}, {"fit", sshyp::to_json(fit)}});
    r.tables.push_back(cover_csv(fit.cover));
    return r;
  });
  add("entropy", "entropy", [](const Context& c, std::uint64_t) {
    const double expected = 2.0 * std::log(std::abs(c.torus->unstable_eigenvalue()));
    const double eps = cover_top(*c.torus, c.cfg.params.entropy_eps);
    const int window = entropy_window(*c.torus, eps, c.cfg.params.entropy_n_max);
    const auto e = toral_entropy(*c.torus, eps, window);
    const bool pass = rel_gap(e.ent, expected) <= 0.10 && rel_gap(2.0 * e.ent_plus, expected) <= 0.10 &&
                      rel_gap(2.0 * e.ent_minus, expected) <= 0.10;
    auto r = result(pass, e.ent, 0.10, e.method,
                    {{"expected_two_sided", expected}, {"expected_standard", expected / 2.0},
                     {"relative_gap", rel_gap(e.ent, expected)}, {"entropy_eps_used", eps}, {"entropy_n_used", window},
                     {"entropy", sshyp::to_json(e)}});
    r.tables.push_back(entropy_csv(e));
    return r;
  });
  add("fundamental", "fundamental", [](const Context& c, std::uint64_t) {
    const double top = cover_top(*c.torus, c.cfg.params.eps_top);
    const double eps = cover_top(*c.torus, c.cfg.params.entropy_eps);
    const int window = entropy_window(*c.torus, eps, c.cfg.params.entropy_n_max);
    const auto f = toral_check_fundamental(*c.torus, half_octave_schedule(top, c.cfg.params.eps_count), eps, window);
    auto payload = sshyp::to_json(f);
    payload["eps_top_used"] = top;
    payload["entropy_eps_used"] = eps;
    payload["entropy_n_used"] = window;
    auto r = result(f.relative_gap <= 0.10, f.capacity, 0.10, "capacity-vs-entropy", std::move(payload));
    r.tables.push_back(cover_csv(f.fit.cover));
    r.tables.push_back(entropy_csv(f.entropy_report));
    return r;
  });
  add("fundamental-unstable", "fundamental", [](const Context& c, std::uint64_t) {
    const auto f = toral_check_fundamental_unstable(
        *c.torus, half_octave_schedule(c.torus->expansive_constant(), c.cfg.params.eps_count), 8);
    return result(f.relative_gap <= 0.10, f.capacity, 0.10, "segment-covers", sshyp::to_json(f));
  });
  add("cov-identity", "fundamental", [](const Context& c, std::uint64_t) {
    const auto rows = toral_cov_identity(*c.torus, 0, cov_identity_k_last(*c.torus, std::min(c.cfg.params.k_max, 3)));
    const bool pass = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.equal; });
    auto r = result(pass, static_cast<double>(rows.size()), "bracket-overlap", "grid-greedy-packing",
                    sshyp::to_json(rows));
    r.tables.push_back(cov_identity_csv(rows));
    return r;
  });

  add("triangles", "triangles", [](const Context& c, std::uint64_t seed) {
    const auto pairs =
        c.torus->sample_pairs(c.cfg.params.triangle_scale, static_cast<std::size_t>(c.cfg.params.triangle_pairs), seed);
    double worst = 0.0;
    for (const auto& [x, y] : pairs) worst = std::max(worst, triangle_ratio(*c.torus, x, y).deviation);
    return result(worst <= kToralTol, worst, kToralTol, "float-relative",
                  {{"pairs", pairs.size()}, {"scale", c.cfg.params.triangle_scale}, {"max_deviation", worst}});
  });
  add("triangle-curve-refined", "triangles", [](const Context& c, std::uint64_t seed) {
    // Flat metric refined at lambda = 1.8: ratio tends to 1 only in the limit.
    const auto refined = refined_toral(*c.torus);
    Json rows = Json::array();
    CsvTable table{"triangle_curve", {"scale", "pairs", "median_dist", "max_deviation"}, {}};
    std::vector<double> worst;
    for (int j = 0; j < 4; ++j) {
      const double scale = 0.02 * std::pow(0.5, j);
      const auto pairs = c.torus->sample_pairs(scale, 2000, seed + static_cast<std::uint64_t>(j));
      double w = 0.0;
      std::vector<double> dists;
      for (const auto& [x, y] : pairs) {
        if (!refined.in_bracket_domain(y, x)) continue;
        const auto tr = triangle_ratio(refined, x, y);
        dists.push_back(tr.c0);
        w = std::max(w, tr.deviation);
      }
      std::nth_element(dists.begin(), dists.begin() + static_cast<long>(dists.size() / 2), dists.end());
      const double median = dists.empty() ? 0.0 : dists[dists.size() / 2];
      worst.push_back(w);
      rows.push_back({{"scale", scale}, {"pairs", dists.size()}, {"median_dist", median}, {"max_deviation", w}});
      table.rows.push_back({csv_number(scale), std::to_string(dists.size()), csv_number(median), csv_number(w)});
    }
    bool monotone = true;
    for (std::size_t i = 1; i < worst.size(); ++i) monotone = monotone && worst[i] <= worst[i - 1];
    auto r = result(monotone && worst.back() < worst.front(), worst.back(), "monotone", "refined-flat-metric",
                    {{"lambda", 1.8}, {"xi", 0.08}, {"curve", rows}});
    r.tables.push_back(std::move(table));
    return r;
  });

  add("holonomy", "holonomy", [](const Context& c, std::uint64_t seed) {
    const auto samples = toral_holonomy_samples(*c.torus, *c.torus, 0.01,
                                                static_cast<std::size_t>(c.cfg.params.holonomy_samples), seed);
    return holonomy_check(*c.torus, samples);
  });
  add("holonomy-refined", "holonomy", [](const Context& c, std::uint64_t seed) {
    const auto refined = refined_toral(*c.torus);
    const auto samples =
        toral_holonomy_samples(*c.torus, refined, 0.01, static_cast<std::size_t>(c.cfg.params.holonomy_samples), seed);
    return holonomy_check(refined, samples);
  });

  add("box-area", "measure", [](const Context& c, std::uint64_t) {
    Json rows = Json::array();
    double lo = INFINITY, hi = 0.0;
    for (double s : {0.001, 0.004, 0.01}) {
      for (double u : {0.002, 0.005, 0.02}) {
        const auto m = toral_box_measure(*c.torus, s, u);
        lo = std::min(lo, m.ratio);
        hi = std::max(hi, m.ratio);
        rows.push_back(sshyp::to_json(m));
      }
    }
    const double spread = hi / lo - 1.0;
    return result(spread <= 1e-12, spread, 1e-12, "closed-form", {{"ratio_spread", spread}, {"boxes", rows}});
  });

  add("homogeneous-entropy", "homogeneity", [](const Context& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double reference = std::log(std::abs(c.torus->unstable_eigenvalue()));
    Json est = Json::array();
    double lo = INFINITY, hi = -INFINITY, gap = 0.0;
    for (int i = 0; i < std::min(c.cfg.params.local_points, 4); ++i) {
      const double e = toral_local_unstable_entropy(*c.torus, c.torus->random_point(rng), 8);
      est.push_back(e);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      gap = std::max(gap, rel_gap(e, reference));
    }
    const double spread = (hi - lo) / reference;
    return result(spread <= 0.01 && gap <= 0.10, gap, Json{{"spread", 0.01}, {"reference_gap", 0.10}},
                  "segment-covers",
                  {{"estimates", est}, {"reference", reference}, {"spread", spread}, {"max_gap", gap}});
  });
  return t;
}

std::vector<Task> tasks_for(const ExperimentConfig& cfg) {
  if (!cfg.system.symbolic()) return toral_tasks(cfg.command);
  return symbolic_tasks(cfg.command, TransitionMatrix(cfg.system.matrix).primitive());
}

Context make_context(const ExperimentConfig& cfg) {
  Context c{cfg, std::nullopt, std::nullopt};
  if (cfg.system.symbolic()) {
    c.sft.emplace(sft_new(TransitionMatrix(cfg.system.matrix), cfg.system.lambda.value_or(2.0)));
  } else {
    Eigen::Matrix2i m;
    m << cfg.system.matrix[0][0], cfg.system.matrix[0][1], cfg.system.matrix[1][0], cfg.system.matrix[1][1];
    ToralOptions opt;
    opt.lambda = cfg.system.lambda;
    c.torus.emplace(m, opt);
  }
  return c;
}

std::string tolerance_text(const Json& t) { return t.is_string() ? t.get<std::string>() : t.dump(); }

}  // namespace

int workers_from_env() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* v = std::getenv(kWorkersEnv);
  if (!v) return static_cast<int>(hw);
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1 || n > 1024) return static_cast<int>(hw);
  return static_cast<int>(n);
}

std::vector<std::string> planned_checks(const ExperimentConfig& config) {
  std::vector<std::string> names;
  for (const auto& t : tasks_for(config)) names.push_back(t.name);
  return names;
}

RunReport run(const ExperimentConfig& config, int workers) {
  const auto start = Clock::now();
  const Context ctx = make_context(config);
  const auto tasks = tasks_for(config);
  std::vector<CheckResult> results(tasks.size());

  auto execute = [&](std::size_t i) {
    const auto t0 = Clock::now();
    CheckResult r;
    try {
      r = tasks[i].fn(ctx, check_seed(config.seed, tasks[i].name));
    } catch (const std::exception& e) {
      throw CheckError(tasks[i].name, e.what());
    }
    r.name = tasks[i].name;
    r.command = tasks[i].command;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
  };

  // Windows of `workers` concurrent checks; results land in task order.
  const std::size_t width = static_cast<std::size_t>(std::max(1, workers));
  for (std::size_t begin = 0; begin < tasks.size(); begin += width) {
    const std::size_t end = std::min(tasks.size(), begin + width);
    if (width == 1) {
      results[begin] = execute(begin);
      continue;
    }
    std::vector<std::future<CheckResult>> futures;
    for (std::size_t i = begin; i < end; ++i) futures.push_back(std::async(std::launch::async, execute, i));
    for (std::size_t i = begin; i < end; ++i) results[i] = futures[i - begin].get();
  }

  RunReport report;
  report.config = to_json(config);
  report.checks = std::move(results);
  report.pass = !report.checks.empty() &&
                std::all_of(report.checks.begin(), report.checks.end(), [](const auto& r) { return r.pass; });
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

Json RunReport::to_json(bool with_timing) const {
  Json out;
  out["tool"] = "sshyp";
  out["version"] = kVersion;
  out["config"] = config;
  out["pass"] = pass;
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"command", c.command},
                    {"pass", c.pass},
                    {"value", std::isfinite(c.value) ? Json(c.value) : Json(nullptr)},
                    {"tolerance", c.tolerance},
                    {"method", c.method},
                    {"payload", c.payload}});
  }
  out["checks"] = list;
  if (with_timing) {
    Json per = Json::object();
    for (const auto& c : checks) per[c.name] = c.seconds;
    out["timing"] = {{"total_seconds", seconds}, {"checks", per}};
  }
  return out;
}

void RunReport::write_csv(std::ostream& os) const {
  CsvTable summary{"checks", {"name", "command", "pass", "value", "tolerance", "method"}, {}};
  for (const auto& c : checks) {
    std::string tol = tolerance_text(c.tolerance);
    if (tol.find(',') != std::string::npos || tol.find('"') != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : tol) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      tol = quoted + "\"";
    }
    summary.rows.push_back({c.name, c.command, c.pass ? "1" : "0", csv_number(c.value), tol, c.method});
  }
  sshyp::write_csv(os, summary);
  for (const auto& c : checks) {
    for (const auto& t : c.tables) {
      os << '\n';
      CsvTable named = t;
      named.name = c.name + "." + t.name;
      sshyp::write_csv(os, named);
    }
  }
}

}  // namespace sshyp::cli
