#include "zqadd/config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "zqadd/error.hpp"

namespace zqadd {

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::smoke: return "smoke";
    case Profile::desk: return "desk";
    case Profile::deep: return "deep";
  }
  return "desk";
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json_lines: return "json-lines";
    case OutputFormat::csv: return "csv";
    case OutputFormat::pretty: return "pretty";
  }
  return "json-lines";
}

Profile parse_profile(std::string_view text) {
  if (text == "smoke") return Profile::smoke;
  if (text == "desk") return Profile::desk;
  if (text == "deep") return Profile::deep;
  throw InvalidArgument("unknown profile '" + std::string(text) + "' (expected smoke, desk or deep)");
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "json-lines" || text == "json") return OutputFormat::json_lines;
  if (text == "csv") return OutputFormat::csv;
  if (text == "pretty") return OutputFormat::pretty;
  throw InvalidArgument("unknown format '" + std::string(text) +
                        "' (expected json-lines, csv or pretty)");
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config file " + path + " must hold a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "rng_seed") base.rng_seed = value.get<std::uint64_t>();
      else if (key == "node_budget") base.node_budget = value.get<std::uint64_t>();
      else if (key == "time_budget") base.time_budget = value.get<double>();
      else if (key == "subset_cap") base.subset_cap = value.get<std::uint64_t>();
      else if (key == "enumeration_cap") base.enumeration_cap = value.get<std::uint64_t>();
      else if (key == "worker_count") base.worker_count = value.get<unsigned>();
      else if (key == "output_format") base.output_format = parse_output_format(value.get<std::string>());
      else if (key == "profile") base.profile = parse_profile(value.get<std::string>());
      else throw InvalidArgument("config file " + path + ": unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config file " + path + ": " + e.what());
  }
  if (base.worker_count == 0) throw InvalidArgument("worker_count must be positive");
  return base;
}

std::optional<std::string> config_path_from_env() {
  const char* v = std::getenv("ZQADD_CONFIG");
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

}  // namespace zqadd
