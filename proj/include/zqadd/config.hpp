#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace zqadd {

enum class Profile { smoke, desk, deep };
enum class OutputFormat { json_lines, csv, pretty };

std::string_view to_string(Profile p);
std::string_view to_string(OutputFormat f);
Profile parse_profile(std::string_view text);
OutputFormat parse_output_format(std::string_view text);

struct RunConfig {
  std::uint64_t rng_seed = 0;
  std::uint64_t node_budget = 200'000'000;
  double time_budget = 0;  // seconds per search; 0 disables
  std::uint64_t subset_cap = 16;
  std::uint64_t enumeration_cap = 100'000'000;
  unsigned worker_count = 1;
  OutputFormat output_format = OutputFormat::json_lines;
  Profile profile = Profile::desk;
};

// Reads a JSON object with any of the RunConfig keys (rng_seed, node_budget,
// time_budget, subset_cap, enumeration_cap, worker_count, output_format,
// profile) on top of `base`. Throws InvalidArgument on unknown keys.
RunConfig load_config(const std::string& path, RunConfig base = {});

// The path named by ZQADD_CONFIG, if set and nonempty.
std::optional<std::string> config_path_from_env();

}  // namespace zqadd
