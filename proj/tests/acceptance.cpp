// Acceptance runner: one pass/fail line per criterion.
//
//   acceptance [--criterion N] [--profile desk] [--seed S] [--workers W] [--json FILE]

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "zqadd/config.hpp"
#include "zqadd/error.hpp"
#include "zqadd/verify.hpp"

using namespace zqadd;

namespace {

struct Limit {
  int criterion;
  double seconds;  // runtime ceiling, 0 for none
};

// Runtime ceilings attached to the criteria that state one.
constexpr Limit kLimits[] = {{1, 300}, {6, 120}, {7, 600}, {8, 1800}, {10, 600}};

double limit_for(int criterion) {
  for (const auto& l : kLimits)
    if (l.criterion == criterion) return l.seconds;
  return 0;
}

std::string stream_of(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += nlohmann::json(r).dump() + "\n";
  return out;
}

struct Line {
  int criterion = 0;
  bool pass = false;
  std::string text;
  nlohmann::json report;
};

Line run_criterion(int n, RunConfig cfg) {
  Line line{n};
  char buf[512];
  if (n == 11) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.worker_count = 1;
    const auto one = stream_of(verify_all(cfg));
    cfg.worker_count = 8;
    const auto eight = stream_of(verify_all(cfg));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    line.pass = one == eight;
    std::size_t at = 0;
    while (at < one.size() && at < eight.size() && one[at] == eight[at]) ++at;
    std::snprintf(buf, sizeof buf,
                  "criterion 11 %-4s determinism          bytes=%zu identical=%s first_difference=%s time=%.1fs",
                  line.pass ? "PASS" : "FAIL", one.size(), line.pass ? "yes" : "no",
                  line.pass ? "none" : std::to_string(at).c_str(), secs);
    line.text = buf;
    line.report = {{"criterion", 11}, {"pass", line.pass}, {"bytes", one.size()}, {"seconds", secs}};
    return line;
  }
  const auto suite = suite_for_criterion(n);
  const auto r = run_suite(suite, cfg);
  const double ceiling = limit_for(n);
  const bool in_time = ceiling == 0 || r.wall_time <= ceiling;
  line.pass = r.clean() && in_time;
  std::snprintf(buf, sizeof buf,
                "criterion %-2d %-4s %-20s instances=%llu counterexamples=%zu skipped=%zu time=%.1fs%s",
                n, line.pass ? "PASS" : "FAIL", suite.c_str(),
                static_cast<unsigned long long>(r.instance_count), r.counterexamples.size(),
                r.skipped.size(), r.wall_time,
                ceiling > 0 ? (" limit=" + std::to_string(static_cast<int>(ceiling)) + "s").c_str() : "");
  line.text = buf;
  for (std::size_t i = 0; i < r.counterexamples.size() && i < 5; ++i)
    line.text += "\n    " + r.counterexamples[i].description + "\n      replay: " + r.counterexamples[i].replay;
  for (std::size_t i = 0; i < r.skipped.size() && i < 5; ++i) line.text += "\n    skipped: " + r.skipped[i];
  line.report = r;
  line.report["wall_time"] = r.wall_time;
  return line;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria runner"};
  int criterion = 0;
  std::string profile = "desk";
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string json_path;
  app.add_option("--criterion", criterion, "1..11, 0 for all")->check(CLI::Range(0, 11));
  app.add_option("--profile", profile);
  app.add_option("--seed", seed);
  app.add_option("--workers", workers);
  app.add_option("--json", json_path, "write the full reports here");
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    cfg.profile = parse_profile(profile);
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  cfg.rng_seed = seed;
  cfg.worker_count = workers == 0 ? 1 : workers;

  std::vector<int> which;
  if (criterion == 0)
    for (int i = 1; i <= 11; ++i) which.push_back(i);
  else
    which.push_back(criterion);

  bool all = true;
  nlohmann::json out = nlohmann::json::array();
  for (int n : which) {
    const auto line = run_criterion(n, cfg);
    std::printf("%s\n", line.text.c_str());
    std::fflush(stdout);
    all = all && line.pass;
    out.push_back(line.report);
  }
  if (!json_path.empty()) std::ofstream(json_path) << out.dump(2) << '\n';
  return all ? 0 : 1;
}
