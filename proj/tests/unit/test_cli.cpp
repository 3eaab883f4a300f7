#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>

#include "sshyp/cli/config.hpp"
#include "sshyp/cli/runner.hpp"

using namespace sshyp::cli;

namespace {

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

ExperimentConfig parsed(const std::string& text) {
  const auto r = parse_config(text);
  INFO((r.ok() ? std::string() : r.errors.front()));
  REQUIRE(r.ok());
  return *r.config;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal config takes the defaults") {
  const auto c = parsed(R"({"system": "golden-mean", "command": "fundamental"})");
  CHECK(c.system.kind == "golden-mean");
  CHECK(c.command == "fundamental");
  CHECK(c.seed == 1);
  CHECK(c.params.depth == 12);
  CHECK(c.output.format == "json");
  CHECK_FALSE(c.output.path.has_value());
}

TEST_CASE("validation errors") {
  const auto empty = parse_config(std::string("  \n"));
  CHECK_FALSE(empty.ok());
  CHECK(mentions(empty.errors, "system"));
  CHECK(mentions(empty.errors, "command"));

  CHECK(mentions(parse_config(std::string("{")).errors, "not valid JSON"));
  CHECK(mentions(parse_config(std::string(R"({"system": "full-shift", "command": "verify", "lambda": 0.5})")).errors,
                 "λ must exceed 1"));

  // Every error is reported, not just the first.
  const auto many = parse_config(std::string(
      R"({"system": {"kind": "nope"}, "command": "dance", "seed": -3, "params": {"depth": "x"}, "extra": 1})"));
  CHECK_FALSE(many.ok());
  CHECK(many.errors.size() >= 5);
  CHECK(mentions(many.errors, "unknown system kind"));
  CHECK(mentions(many.errors, "command: expected one of"));
  CHECK(mentions(many.errors, "seed"));
  CHECK(mentions(many.errors, "params.depth"));
  CHECK(mentions(many.errors, "unknown field 'extra'"));

  CHECK(mentions(parse_config(std::string(R"({"system": {"kind": "sft", "matrix": [[1, 1], 3]}, "command": "verify"})"))
                     .errors,
                 "system.matrix"));
  CHECK(mentions(parse_config(std::string(R"({"system": {"kind": "sft"}, "command": "verify"})")).errors,
                 "system.matrix: required"));
  CHECK(mentions(parse_config(std::string(R"({"system": "four-symbol", "command": "measure"})")).errors,
                 "primitive"));
  CHECK(mentions(parse_config(std::string(R"({"system": "full-shift", "command": "capacity",
                                              "params": {"scale_first": 4, "scale_last": 6}})"))
                     .errors,
                 "at least 6 scales"));
  CHECK(mentions(parse_config(std::string(R"({"system": "cat-map", "command": "verify",
                                              "output": {"format": "xml"}})"))
                     .errors,
                 "output.format"));
}

TEST_CASE("resolved config round-trips") {
  for (const char* text :
       {R"({"system": "golden-mean", "command": "all", "seed": 9, "params": {"pairs": 77}})",
        R"({"system": {"kind": "toral", "matrix": [[2, 1], [1, 1]], "lambda": 1.6}, "command": "verify"})",
        R"({"system": {"kind": "full-shift", "symbols": 3}, "command": "capacity", "output": {"format": "csv"}})"}) {
    const auto c = parsed(text);
    const auto again = parsed(to_json(c).dump());
    CHECK(to_json(again) == to_json(c));
  }
}

TEST_CASE("payloads are deterministic across worker counts") {
  const auto c = parsed(R"({"system": "golden-mean", "command": "verify", "seed": 3,
                            "params": {"pairs": 500, "local_pairs": 200}})");
  const auto one = run(c, 1);
  const auto four = run(c, 4);
  CHECK(one.to_json(false).dump() == four.to_json(false).dump());
  CHECK(one.pass);
  CHECK_FALSE(one.to_json(false).contains("timing"));
  CHECK(one.to_json(true).contains("timing"));
}

TEST_CASE("golden-mean fundamental run") {
  const auto c = parsed(R"({"system": "golden-mean", "command": "fundamental"})");
  const auto r = run(c, 2);
  REQUIRE_FALSE(r.checks.empty());
  CHECK(r.checks.front().name == "fundamental");
  CHECK(r.checks.front().value == doctest::Approx(1.3885).epsilon(0.02));
  CHECK(r.pass);

  std::ostringstream csv;
  r.write_csv(csv);
  CHECK(csv.str().rfind("# sshyp checks v1\nname,command,pass,value,tolerance,method\n", 0) == 0);
}

TEST_CASE("full shift passes every check") {
  const auto c = parsed(R"({"system": "full-shift", "command": "all",
                            "params": {"pairs": 1000, "local_pairs": 200, "triangle_pairs": 200,
                                       "holonomy_samples": 200, "depth": 10, "points": 8}})");
  const auto r = run(c, 4);
  for (const auto& check : r.checks) {
    CAPTURE(check.name);
    CHECK(check.pass);
  }
  CHECK(r.pass);
}

TEST_CASE("worker count from the environment") {
  ::setenv(kWorkersEnv, "3", 1);
  CHECK(workers_from_env() == 3);
  ::setenv(kWorkersEnv, "zero", 1);
  CHECK(workers_from_env() >= 1);
  ::unsetenv(kWorkersEnv);
  CHECK(workers_from_env() >= 1);
}

TEST_CASE("planned checks") {
  const auto four = planned_checks(parsed(R"({"system": "four-symbol", "command": "all"})"));
  CHECK(std::find(four.begin(), four.end(), "hausdorff") == four.end());
  CHECK(std::find(four.begin(), four.end(), "capacity") == four.end());
  CHECK(std::find(four.begin(), four.end(), "self-similarity") != four.end());

  const auto gm = planned_checks(parsed(R"({"system": "golden-mean", "command": "all"})"));
  CHECK(std::find(gm.begin(), gm.end(), "hausdorff") != gm.end());
  const auto cat = planned_checks(parsed(R"({"system": "cat-map", "command": "holonomy"})"));
  CHECK(cat == std::vector<std::string>{"holonomy", "holonomy-refined"});
}

}  // TEST_SUITE
