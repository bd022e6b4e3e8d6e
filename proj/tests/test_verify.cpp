#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "zqadd/config.hpp"
#include "zqadd/error.hpp"
#include "zqadd/rng.hpp"
#include "zqadd/verify.hpp"

using namespace zqadd;
using nlohmann::json;

namespace {

RunConfig smoke(unsigned workers = 1) {
  RunConfig cfg;
  cfg.profile = Profile::smoke;
  cfg.rng_seed = 42;
  cfg.worker_count = workers;
  return cfg;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("suite registry") {
    for (int c = 1; c <= 10; ++c) CHECK_FALSE(suite_for_criterion(c).empty());
    CHECK(suite_for_criterion(1) == "xi-oracle");
    CHECK(suite_for_criterion(8) == "two-translate-cover");
    CHECK_THROWS_AS(run_suite("no-such-suite", smoke()), InvalidArgument);
  }

  TEST_CASE("smoke suites are deterministic across worker counts") {
    for (const char* name : {"xi-oracle", "alpha-identity", "carry-extremality", "mu"}) {
      const auto a = run_suite(name, smoke(1));
      const auto b = run_suite(name, smoke(4));
      CHECK_MESSAGE(json(a).dump() == json(b).dump(), name);
      CHECK(a.clean());
      CHECK(a.instance_count > 0);
      CHECK_FALSE(json(a).contains("wall_time"));
    }
  }

  TEST_CASE("seed changes random suites") {
    auto cfg = smoke();
    const auto a = json(run_suite("alpha-identity", cfg)).dump();
    cfg.rng_seed = 43;
    const auto b = json(run_suite("alpha-identity", cfg)).dump();
    CHECK(a != b);
  }

  TEST_CASE("replay of a passing instance") {
    const json inst = {{"q", 7}, {"set", {0, 1, 3}}, {"n", 2}};
    const auto r = replay_instance("xi-oracle", inst, smoke());
    CHECK(r.clean());
    CHECK(r.instance_count == 1);
  }

  TEST_CASE("replay reproduces a subgroup lemma counterexample") {
    const json inst = {{"q", 8}, {"set", {0, 1}}, {"h", 2}};
    const auto r = replay_instance("subgroup-lemma", inst, smoke());
    REQUIRE(r.counterexamples.size() == 1);
    CHECK(r.counterexamples[0].replay.find("zqadd verify subgroup-lemma --instance") == 0);
    CHECK(exit_code({r}) == 2);
  }

  TEST_CASE("exit codes") {
    VerificationReport ok;
    CHECK(exit_code({ok}) == 0);
    VerificationReport skipped;
    skipped.skipped.push_back("budget");
    CHECK(exit_code({ok, skipped}) == 3);
    VerificationReport bad;
    bad.counterexamples.push_back({"x", "y", json::object()});
    CHECK(exit_code({skipped, bad}) == 2);
  }

  TEST_CASE("config loading") {
    const char* path = "zqadd_test_config.json";
    std::ofstream(path) << R"({"rng_seed": 9, "worker_count": 3, "profile": "smoke", "output_format": "csv"})";
    const auto cfg = load_config(path);
    CHECK(cfg.rng_seed == 9);
    CHECK(cfg.worker_count == 3);
    CHECK(cfg.profile == Profile::smoke);
    CHECK(cfg.output_format == OutputFormat::csv);
    std::ofstream(path) << R"({"rng_sead": 9})";
    CHECK_THROWS_AS(load_config(path), InvalidArgument);
    std::remove(path);
    CHECK(parse_profile("deep") == Profile::deep);
    CHECK_THROWS_AS(parse_profile("huge"), InvalidArgument);
  }

  TEST_CASE("counter rng is a pure function of seed and stream") {
    CounterRng a(5, 3), b(5, 3), c(5, 4);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
}
