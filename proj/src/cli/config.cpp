#include "sshyp/cli/config.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <variant>

#include "sshyp/symbolic/transition_matrix.hpp"
#include "sshyp/torus/toral_system.hpp"

namespace sshyp::cli {

namespace {

struct ParamField {
  const char* name;
  std::variant<int Params::*, double Params::*> member;
  double min;
  double max;
  bool min_exclusive = false;
};

const std::vector<ParamField>& param_fields() {
  static const std::vector<ParamField> fields = {
      {"pairs", &Params::pairs, 1, 1e7},
      {"scale", &Params::scale, 0, 0.05, true},
      {"t_max", &Params::t_max, 1, 40},
      {"local_pairs", &Params::local_pairs, 1, 1e6},
      {"contraction_steps", &Params::contraction_steps, 1, 60},
      {"scale_first", &Params::scale_first, 0, 40},
      {"scale_last", &Params::scale_last, 1, 40},
      {"eps_top", &Params::eps_top, 0, 0.2, true},
      {"eps_count", &Params::eps_count, 4, 16},
      {"n_max", &Params::n_max, 4, 40},
      {"entropy_eps", &Params::entropy_eps, 0, 0.2, true},
      {"entropy_n_max", &Params::entropy_n_max, 2, 6},
      {"k_max", &Params::k_max, 0, 20},
      {"triangle_scale", &Params::triangle_scale, 0, 0.05, true},
      {"triangle_pairs", &Params::triangle_pairs, 1, 1e6},
      {"holonomy_samples", &Params::holonomy_samples, 1, 1e6},
      {"depth", &Params::depth, 2, 60},
      {"points", &Params::points, 1, 1000},
      {"n_first", &Params::n_first, 0, 30},
      {"n_last", &Params::n_last, 0, 30},
      {"local_points", &Params::local_points, 1, 1000},
  };
  return fields;
}

const std::set<std::string> kKinds = {"full-shift", "golden-mean", "four-symbol", "sft", "cat-map", "toral"};

std::optional<std::vector<std::vector<int>>> read_matrix(const Json& j, std::vector<std::string>& errors) {
  if (!j.is_array() || j.empty()) {
    errors.push_back("system.matrix: expected a non-empty array of rows");
    return std::nullopt;
  }
  std::vector<std::vector<int>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) {
      errors.push_back("system.matrix: every row must be an array of integers");
      return std::nullopt;
    }
    std::vector<int> row;
    for (const auto& v : r) {
      if (!v.is_number_integer()) {
        errors.push_back("system.matrix: entries must be integers");
        return std::nullopt;
      }
      row.push_back(v.get<int>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void read_lambda(const Json& v, const char* where, SystemSpec& spec, std::vector<std::string>& errors) {
  if (!v.is_number()) {
    errors.push_back(std::string(where) + ": expected a number");
    return;
  }
  const double lambda = v.get<double>();
  if (!(lambda > 1.0)) {
    errors.push_back(std::string(where) + ": λ must exceed 1 (got " + v.dump() + ")");
    return;
  }
  spec.lambda = lambda;
}

void read_system(const Json& j, SystemSpec& spec, std::vector<std::string>& errors) {
  if (j.is_string()) {
    spec.kind = j.get<std::string>();
  } else if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      if (key == "kind") {
        if (v.is_string()) spec.kind = v.get<std::string>();
        else errors.push_back("system.kind: expected a string");
      } else if (key == "matrix") {
        if (auto m = read_matrix(v, errors)) spec.matrix = *m;
      } else if (key == "symbols") {
        if (v.is_number_integer() && v.get<int>() >= 2 && v.get<int>() <= 64) spec.symbols = v.get<int>();
        else errors.push_back("system.symbols: expected an integer in [2, 64]");
      } else if (key == "lambda" || key == "λ") {
        read_lambda(v, "system.lambda", spec, errors);
      } else {
        errors.push_back("system: unknown field '" + key + "'");
      }
    }
    if (spec.kind.empty() && !j.contains("kind")) errors.push_back("system.kind: required");
  } else {
    errors.push_back("system: expected a kind name or an object");
    return;
  }
  if (spec.kind.empty()) return;
  if (!kKinds.count(spec.kind)) {
    errors.push_back("system.kind: unknown system kind '" + spec.kind +
                     "' (expected full-shift, golden-mean, four-symbol, sft, cat-map or toral)");
    return;
  }
  const bool needs_matrix = spec.kind == "sft" || spec.kind == "toral";
  if (needs_matrix && spec.matrix.empty()) {
    errors.push_back("system.matrix: required for kind '" + spec.kind + "'");
    return;
  }
  if (!needs_matrix && !spec.matrix.empty()) {
    errors.push_back("system.matrix: not allowed for kind '" + spec.kind + "'");
    return;
  }
  try {
    if (spec.kind == "full-shift") spec.matrix = TransitionMatrix::full_shift(spec.symbols).rows();
    if (spec.kind == "golden-mean") spec.matrix = TransitionMatrix::golden_mean().rows();
    if (spec.kind == "four-symbol") spec.matrix = TransitionMatrix::four_symbol().rows();
    if (spec.symbolic()) {
      const TransitionMatrix a(spec.matrix);
    } else {
      if (spec.kind == "cat-map") {
        const Eigen::Matrix2i m = cat_map_matrix();
        spec.matrix = {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
      }
      if (spec.matrix.size() != 2 || spec.matrix[0].size() != 2 || spec.matrix[1].size() != 2) {
        errors.push_back("system.matrix: a toral automorphism needs a 2x2 matrix");
        return;
      }
      Eigen::Matrix2i m;
      m << spec.matrix[0][0], spec.matrix[0][1], spec.matrix[1][0], spec.matrix[1][1];
      ToralOptions opt;
      opt.lambda = spec.lambda;
      opt.validate = false;
      ToralSystemd check(m, opt);
    }
  } catch (const std::exception& e) {
    errors.push_back(std::string("system: ") + e.what());
  }
}

void read_params(const Json& j, Params& p, std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.push_back("params: expected an object");
    return;
  }
  for (const auto& [key, v] : j.items()) {
    const auto& fields = param_fields();
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const ParamField& f) { return key == f.name; });
    if (it == fields.end()) {
      errors.push_back("params: unknown field '" + key + "'");
      continue;
    }
    const bool is_int = std::holds_alternative<int Params::*>(it->member);
    if (!v.is_number() || (is_int && !v.is_number_integer())) {
      errors.push_back("params." + key + ": expected " + (is_int ? "an integer" : "a number"));
      continue;
    }
    const double x = v.get<double>();
    const bool low = it->min_exclusive ? !(x > it->min) : !(x >= it->min);
    if (low || !(x <= it->max)) {
      errors.push_back("params." + key + ": out of range (" + (it->min_exclusive ? "(" : "[") +
                       Json(it->min).dump() + ", " + Json(it->max).dump() + "])");
      continue;
    }
    if (is_int) p.*std::get<int Params::*>(it->member) = v.get<int>();
    else p.*std::get<double Params::*>(it->member) = x;
  }
  if (p.scale_first >= p.scale_last) errors.push_back("params: scale_first must be below scale_last");
  if (p.scale_last - p.scale_first < 5) errors.push_back("params: capacity fits need at least 6 scales");
  if (p.n_first > p.n_last) errors.push_back("params: n_first must not exceed n_last");
}

void read_output(const Json& j, OutputSpec& out, std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.push_back("output: expected an object");
    return;
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "path") {
      if (v.is_string()) out.path = v.get<std::string>();
      else errors.push_back("output.path: expected a string");
    } else if (key == "format") {
      if (v.is_string() && (v == "json" || v == "csv")) out.format = v.get<std::string>();
      else errors.push_back("output.format: expected \"json\" or \"csv\"");
    } else {
      errors.push_back("output: unknown field '" + key + "'");
    }
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify",   "capacity", "entropy",     "fundamental", "triangles",
                                                 "holonomy", "measure",  "homogeneity", "all"};
  return names;
}

ParseResult parse_config(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    return {std::nullopt, {"empty config: required fields are 'system' and 'command'"}};
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    return {std::nullopt, {std::string("config is not valid JSON: ") + e.what()}};
  }
  return parse_config(j);
}

ParseResult parse_config(const Json& j) {
  ParseResult result;
  auto& errors = result.errors;
  if (!j.is_object()) {
    errors.push_back("config: expected a JSON object with 'system' and 'command'");
    return result;
  }
  ExperimentConfig c;
  if (!j.contains("system")) errors.push_back("system: required");
  if (!j.contains("command")) errors.push_back("command: required");
  std::optional<Json> top_lambda;
  for (const auto& [key, v] : j.items()) {
    if (key == "system") {
      read_system(v, c.system, errors);
    } else if (key == "command") {
      const auto& names = command_names();
      if (v.is_string() && std::find(names.begin(), names.end(), v.get<std::string>()) != names.end()) {
        c.command = v.get<std::string>();
      } else {
        errors.push_back("command: expected one of verify, capacity, entropy, fundamental, triangles, holonomy, "
                         "measure, homogeneity, all");
      }
    } else if (key == "lambda" || key == "λ") {
      top_lambda = v;
    } else if (key == "seed") {
      if (v.is_number_unsigned()) c.seed = v.get<std::uint64_t>();
      else errors.push_back("seed: expected a non-negative integer");
    } else if (key == "params") {
      read_params(v, c.params, errors);
    } else if (key == "output") {
      read_output(v, c.output, errors);
    } else if (key == "tool" || key == "version") {
      // Echoed by reports; accepted so a report's config block re-runs as is.
    } else {
      errors.push_back("config: unknown field '" + key + "'");
    }
  }
  if ((c.command == "measure" || c.command == "homogeneity") && !c.system.kind.empty() && c.system.symbolic() &&
      !c.system.matrix.empty()) {
    try {
      if (!TransitionMatrix(c.system.matrix).primitive()) {
        errors.push_back("command: '" + c.command + "' needs a primitive transition matrix");
      }
    } catch (const std::exception&) {
      // Already reported by the system block.
    }
  }
  if (top_lambda) {
    if (c.system.lambda) {
      errors.push_back("lambda: given both at top level and inside system");
    } else {
      read_lambda(*top_lambda, "lambda", c.system, errors);
      // Re-check toral ranges now that lambda is known.
      if (c.system.lambda && !c.system.kind.empty() && !c.system.symbolic() && c.system.matrix.size() == 2) {
        try {
          Eigen::Matrix2i m;
          m << c.system.matrix[0][0], c.system.matrix[0][1], c.system.matrix[1][0], c.system.matrix[1][1];
          ToralOptions opt;
          opt.lambda = c.system.lambda;
          opt.validate = false;
          ToralSystemd check(m, opt);
        } catch (const std::exception& e) {
          errors.push_back(std::string("lambda: ") + e.what());
        }
      }
    }
  }
  if (errors.empty()) result.config = c;
  return result;
}

Json to_json(const ExperimentConfig& c) {
  Json system = {{"kind", c.system.kind}};
  if (c.system.kind == "sft" || c.system.kind == "toral") system["matrix"] = c.system.matrix;
  if (c.system.kind == "full-shift") system["symbols"] = c.system.symbols;
  if (c.system.lambda) system["lambda"] = *c.system.lambda;
  Json params = Json::object();
  for (const auto& f : param_fields()) {
    if (std::holds_alternative<int Params::*>(f.member)) params[f.name] = c.params.*std::get<int Params::*>(f.member);
    else params[f.name] = c.params.*std::get<double Params::*>(f.member);
  }
  Json out = {{"system", system}, {"command", c.command}, {"seed", c.seed}, {"params", params}};
  Json output = {{"format", c.output.format}};
  if (c.output.path) output["path"] = *c.output.path;
  out["output"] = output;
  return out;
}

}  // namespace sshyp::cli
