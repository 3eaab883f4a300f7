#ifndef SSHYP_CLI_RUNNER_HPP
#define SSHYP_CLI_RUNNER_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshyp/cli/config.hpp"
#include "sshyp/dimension/report_io.hpp"

namespace sshyp::cli {

inline constexpr const char* kWorkersEnv = "SSHYP_WORKERS";

struct CheckResult {
  std::string name;
  std::string command;
  bool pass = false;
  double value = 0.0;  // headline number, also in the payload
  Json tolerance;
  std::string method;
  Json payload;
  std::vector<CsvTable> tables;
  double seconds = 0.0;
};

struct RunReport {
  Json config;
  std::vector<CheckResult> checks;
  bool pass = false;
  double seconds = 0.0;

  // Timing sits under its own key; everything else is a deterministic
  // function of the config.
  Json to_json(bool with_timing = true) const;
  void write_csv(std::ostream& os) const;
};

// A module error, tagged with the check that raised it.
class CheckError : public std::runtime_error {
 public:
  CheckError(const std::string& check, const std::string& what)
      : std::runtime_error(check + ": " + what), check_(check) {}
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

// Worker count from SSHYP_WORKERS; hardware concurrency when unset or invalid.
int workers_from_env();

// Names of the checks a command runs on the configured system, in report order.
std::vector<std::string> planned_checks(const ExperimentConfig& config);

RunReport run(const ExperimentConfig& config, int workers = 1);

}  // namespace sshyp::cli

#endif  // SSHYP_CLI_RUNNER_HPP
