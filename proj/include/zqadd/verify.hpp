#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zqadd/config.hpp"

namespace zqadd {

struct Counterexample {
  std::string description;
  std::string replay;    // CLI command that re-runs exactly this instance
  nlohmann::json instance;
};

struct VerificationReport {
  std::string suite;
  int criterion = 0;  // acceptance criterion number, 0 for extra suites
  std::uint64_t seed = 0;
  std::string profile;
  std::uint64_t instance_count = 0;
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> skipped;
  nlohmann::json details = nlohmann::json::object();
  double wall_time = 0;  // seconds; not part of the structured output

  bool passed() const { return counterexamples.empty(); }
  // Passed with nothing skipped.
  bool clean() const { return passed() && skipped.empty(); }
};

// Structured form without wall_time, so it is byte-stable across runs.
void to_json(nlohmann::json& j, const VerificationReport& r);

struct SuiteInfo {
  std::string name;
  int criterion;
  std::string summary;
};

const std::vector<SuiteInfo>& suites();
// Suite for an acceptance criterion in [1, 10]; throws InvalidArgument otherwise.
std::string suite_for_criterion(int criterion);

// Throws InvalidArgument for an unknown suite name.
VerificationReport run_suite(std::string_view name, const RunConfig& cfg);

// Re-checks one instance as recorded in a counterexample.
VerificationReport replay_instance(std::string_view name, const nlohmann::json& instance,
                                   const RunConfig& cfg);

// Suites for criteria 1..10 followed by the extra suites, in that order.
std::vector<VerificationReport> verify_all(const RunConfig& cfg);

// Exit-code contract: 0 clean, 2 any counterexample, 3 otherwise skipped work.
int exit_code(const std::vector<VerificationReport>& reports);

}  // namespace zqadd
