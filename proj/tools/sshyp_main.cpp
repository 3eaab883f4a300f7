#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sshyp/cli/config.hpp"
#include "sshyp/cli/runner.hpp"

namespace {

// 0: every requested check passed; 1: some check failed; 2: bad input or a
// module error.
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using sshyp::cli::Json;
  CLI::App app{"Self-similar hyperbolic metrics: identity checks, capacity, entropy and intrinsic measure"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(sshyp::cli::kVersion));

  std::string config_path, out_path, format, system, matrix;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  bool no_timing = false;
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--system", system,
                 "System kind when no config is given: full-shift, golden-mean, four-symbol, cat-map");
  app.add_option("--lambda", lambda, "Expanding factor override");
  app.add_flag("--no-timing", no_timing, "Omit the timing block from JSON reports");
  for (const auto& name : sshyp::cli::command_names()) {
    app.add_subcommand(name, "Run the " + name + " checks")->fallthrough();
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  Json j = Json::object();
  try {
    if (!config_path.empty()) j = Json::parse(read_text(config_path));
  } catch (const std::exception& e) {
    std::cerr << "error: config is not valid JSON: " << e.what() << '\n';
    return kExitError;
  }
  if (!j.is_object()) {
    std::cerr << "error: config must be a JSON object\n";
    return kExitError;
  }
  j["command"] = command;
  if (!system.empty()) j["system"] = system;
  if (lambda) {
    j.erase("λ");
    if (j.contains("system") && j["system"].is_object()) j["system"]["lambda"] = *lambda;
    else j["lambda"] = *lambda;
  }
  if (seed) j["seed"] = *seed;
  if (!format.empty()) j["output"]["format"] = format;
  if (!out_path.empty()) j["output"]["path"] = out_path;

  const auto parsed = sshyp::cli::parse_config(j);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) std::cerr << "config error: " << e << '\n';
    return kExitError;
  }
  const auto& cfg = *parsed.config;

  sshyp::cli::RunReport report;
  try {
    report = sshyp::cli::run(cfg, sshyp::cli::workers_from_env());
  } catch (const sshyp::cli::CheckError& e) {
    std::cerr << "check failed with an error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  std::ostringstream body;
  if (cfg.output.format == "csv") report.write_csv(body);
  else body << report.to_json(!no_timing).dump(2) << '\n';

  if (cfg.output.path) {
    std::ofstream out(*cfg.output.path);
    if (!out) {
      std::cerr << "error: cannot write " << *cfg.output.path << '\n';
      return kExitError;
    }
    out << body.str();
  } else {
    std::cout << body.str();
  }
  for (const auto& c : report.checks) {
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.command << '/' << c.name << '\n';
  }
  return report.pass ? 0 : kExitFail;
}
