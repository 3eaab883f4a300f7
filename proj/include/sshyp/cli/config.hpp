#ifndef SSHYP_CLI_CONFIG_HPP
#define SSHYP_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sshyp::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

const std::vector<std::string>& command_names();  // verify .. homogeneity, all

struct SystemSpec {
  // full-shift | golden-mean | four-symbol | sft | cat-map | toral
  std::string kind;
  std::vector<std::vector<int>> matrix;  // sft / toral; filled in for named systems
  int symbols = 2;                       // full-shift only
  std::optional<double> lambda;          // default 2 (sft) or |b| (toral)
  bool symbolic() const { return kind != "cat-map" && kind != "toral"; }
};

struct Params {
  int pairs = 10000;
  double scale = 0.01;           // toral verify scale
  int t_max = 12;                // symbolic pair agreement radius
  int local_pairs = 1000;
  int contraction_steps = 12;
  int scale_first = 4;           // symbolic capacity scales lambda^-first .. lambda^-last
  int scale_last = 14;
  double eps_top = 0.2;          // toral capacity scales eps_top * 2^(-j/2)
  int eps_count = 12;
  int n_max = 16;                // symbolic entropy window
  double entropy_eps = 0.2;      // toral entropy threshold
  int entropy_n_max = 4;
  int k_max = 6;                 // covering identity k = 0..k_max
  double triangle_scale = 1e-3;
  int triangle_pairs = 1000;
  int holonomy_samples = 1000;
  int depth = 12;
  int points = 20;
  int n_first = 1;
  int n_last = 10;
  int local_points = 10;
};

struct OutputSpec {
  std::optional<std::string> path;
  std::string format = "json";  // json | csv
};

struct ExperimentConfig {
  SystemSpec system;
  std::string command;
  std::uint64_t seed = 1;
  Params params;
  OutputSpec output;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;  // every validation error, not just the first
  bool ok() const { return config.has_value(); }
};

ParseResult parse_config(const std::string& text);
ParseResult parse_config(const Json& j);

// Fully resolved config; parse_config(to_json(c)) reproduces c.
Json to_json(const ExperimentConfig& c);

}  // namespace sshyp::cli

#endif  // SSHYP_CLI_CONFIG_HPP
