#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "zqadd/ap_structure.hpp"
#include "zqadd/chains.hpp"
#include "zqadd/config.hpp"
#include "zqadd/digital_carry.hpp"
#include "zqadd/error.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/report.hpp"
#include "zqadd/residue_set.hpp"
#include "zqadd/verify.hpp"
#include "zqadd/zq_core.hpp"

using namespace zqadd;

namespace {

enum Exit { ok = 0, usage = 1, counterexample = 2, budget = 3 };

struct Args {
  std::uint32_t q = 0;
  std::string set;
  std::string set2;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::int64_t k = 0;
  std::uint32_t p = 0;
  std::uint32_t d1 = 0;
  std::uint32_t d2 = 0;
  std::uint32_t t = 0;
  std::uint32_t h = 0;
  std::int64_t a = 0;
  std::uint64_t limit = 0;
  std::uint64_t samples = 500;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> ms;
  std::string instance;
  bool exact = false;
  bool strict = false;
  bool project = false;
  bool exhaustive = false;
  bool bounded = false;
  bool list = false;
  bool timings = false;

  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0;
  std::string format;
  std::string profile;
  std::string config;
};

RunConfig resolve_config(const Args& args, const CLI::App& app) {
  RunConfig cfg;
  if (auto env = config_path_from_env()) cfg = load_config(*env, cfg);
  if (!args.config.empty()) cfg = load_config(args.config, cfg);
  if (app.count("--seed")) cfg.rng_seed = args.seed;
  if (app.count("--workers")) cfg.worker_count = args.workers;
  if (app.count("--budget-nodes")) cfg.node_budget = args.budget_nodes;
  if (app.count("--budget-seconds")) cfg.time_budget = args.budget_seconds;
  if (!args.format.empty()) cfg.output_format = parse_output_format(args.format);
  if (!args.profile.empty()) cfg.profile = parse_profile(args.profile);
  if (cfg.worker_count == 0) throw InvalidArgument("--workers must be positive");
  return cfg;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array() || v.is_object()) {
    auto s = v.dump();
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }
  return v.dump();
}

// Arrays of objects become one row per element; an object becomes
// key,value lines.
void emit_csv(const json& j) {
  if (j.is_array() && !j.empty() && j.front().is_object()) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.front().items()) keys.push_back(k);
    std::string line;
    for (const auto& k : keys) line += (line.empty() ? "" : ",") + k;
    std::cout << line << '\n';
    for (const auto& row : j) {
      line.clear();
      for (std::size_t i = 0; i < keys.size(); ++i)
        line += (i ? "," : "") + (row.contains(keys[i]) ? csv_cell(row[keys[i]]) : std::string());
      std::cout << line << '\n';
    }
    return;
  }
  std::cout << "key,value\n";
  if (j.is_object())
    for (const auto& [k, v] : j.items()) std::cout << k << ',' << csv_cell(v) << '\n';
  else
    std::cout << "value," << csv_cell(j) << '\n';
}

void emit(const json& j, OutputFormat f) {
  switch (f) {
    case OutputFormat::json_lines: std::cout << j.dump() << '\n'; break;
    case OutputFormat::pretty: std::cout << j.dump(2) << '\n'; break;
    case OutputFormat::csv: emit_csv(j); break;
  }
}

ResidueSet read_set(const std::string& text, std::uint32_t q, const char* flag) {
  if (text.empty()) throw InvalidArgument(std::string(flag) + " is required");
  auto s = parse_residue_set(text, q);
  if (q != 0 && s.modulus() != q)
    throw InvalidArgument(std::string("modulus mismatch: --q ") + std::to_string(q) + " but " + flag +
                          " is over Z_" + std::to_string(s.modulus()));
  return s;
}

SearchLimits limits_of(const RunConfig& cfg) { return {cfg.node_budget, cfg.time_budget}; }

int emit_reports(const std::vector<VerificationReport>& reports, const RunConfig& cfg, bool timings) {
  if (cfg.output_format == OutputFormat::csv) {
    json rows = json::array();
    for (const auto& r : reports)
      rows.push_back({{"suite", r.suite}, {"criterion", r.criterion}, {"instances", r.instance_count},
                      {"passed", r.passed()}, {"counterexamples", r.counterexamples.size()},
                      {"skipped", r.skipped.size()}});
    emit_csv(rows);
  } else {
    for (const auto& r : reports) emit(json(r), cfg.output_format);
  }
  if (timings || cfg.output_format == OutputFormat::pretty)
    for (const auto& r : reports)
      std::fprintf(stderr, "%-20s %-4s %10.2fs\n", r.suite.c_str(), r.clean() ? "ok" : (r.passed() ? "skip" : "FAIL"),
                   r.wall_time);
  return exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zqadd: exact additive structure in Z_q"};
  app.require_subcommand(1);
  app.fallthrough();
  Args args;

  app.add_option("--seed", args.seed, "RNG seed");
  app.add_option("--workers", args.workers, "worker threads");
  app.add_option("--budget-nodes", args.budget_nodes, "search node budget");
  app.add_option("--budget-seconds", args.budget_seconds, "search time budget in seconds");
  app.add_option("--format", args.format, "json-lines | csv | pretty");
  app.add_option("--profile", args.profile, "smoke | desk | deep");
  app.add_option("--config", args.config, "JSON config file (default from ZQADD_CONFIG)");

  auto add_q = [&](CLI::App* c) { return c->add_option("--q", args.q, "modulus"); };
  auto add_set = [&](CLI::App* c) {
    return c->add_option("--set", args.set, "set literal: 0,1,3 | q=7;{0,1,3} | JSON");
  };
  auto add_set2 = [&](CLI::App* c) { return c->add_option("--set2", args.set2, "second set literal")->required(); };

  auto* xi = app.add_subcommand("xi", "xi(n): least |A+B| over |B| = n");
  add_q(xi);
  add_set(xi)->required();
  xi->add_option("--n", args.n, "size of B")->required();
  auto* xi_exact = xi->add_flag("--exact", args.exact, "exhaustive enumeration");
  xi->add_flag("--search", "branch and bound (default)")->excludes(xi_exact);

  auto* alpha_cmd = app.add_subcommand("alpha", "alpha_t(A) = |(A+t) \\ A|, or the whole profile");
  add_q(alpha_cmd);
  add_set(alpha_cmd)->required();
  alpha_cmd->add_option("--t", args.t, "single difference");

  auto* decomp = app.add_subcommand("decomp", "decomposition into full cosets and t-progressions");
  add_q(decomp);
  add_set(decomp)->required();
  decomp->add_option("--t", args.t, "difference (default: first optimal one)");

  auto* stab = app.add_subcommand("stability", "k-stability of the optimal differences");
  add_q(stab);
  add_set(stab)->required();
  stab->add_flag("--strict", args.strict, "at most k removals and k additions");

  auto* uniq = app.add_subcommand("uniqueness", "difference set classification for min alpha = 2");
  add_q(uniq);
  add_set(uniq)->required();

  auto* digital = app.add_subcommand("digital", "digital sets");
  digital->require_subcommand(1);
  auto* dcheck = digital->add_subcommand("check", "is A digital, and the prime condition");
  add_q(dcheck);
  add_set(dcheck)->required();
  auto* denum = digital->add_subcommand("enumerate", "list digital sets");
  denum->add_option("--m", args.m)->required();
  add_q(denum)->required();
  denum->add_option("--limit", args.limit, "stop after this many sets");
  auto* dcarries = digital->add_subcommand("carries", "carry table of one digital set");
  add_q(dcarries);
  add_set(dcarries)->required();
  auto* dext = digital->add_subcommand("verify-extremal", "carry extremality sweep");
  dext->add_option("--m", args.m)->required();
  auto* dthm = digital->add_subcommand("verify-window", "xi(n) > m+n on [2,4] for sampled digital sets");
  dthm->add_option("--m", args.m)->required();
  add_q(dthm)->required();
  dthm->add_option("--samples", args.samples, "0 for every digital set");
  auto* dcor = digital->add_subcommand("verify-corollary", "2A in {x,y}+A over all digital sets");
  dcor->add_option("--m", args.m)->required();
  add_q(dcor)->required();

  auto* carries = app.add_subcommand("carries", "per-set carry statistics for all digital sets (CSV by default)");
  carries->add_option("--m", args.m)->required();
  add_q(carries)->required();
  carries->add_option("--limit", args.limit, "stop after this many sets");

  auto* construct = app.add_subcommand("construct", "dense set B with the interval chains");
  construct->add_option("--m", args.m)->required();
  construct->add_flag("--project", args.project, "project to the least prime above 2^{2m}");

  auto* mu = app.add_subcommand("mu", "mu(p) with witnesses and bounds");
  mu->add_option("--p", args.p)->required();
  auto* mu_ex = mu->add_flag("--exhaustive", args.exhaustive);
  mu->add_flag("--bounded", args.bounded)->excludes(mu_ex);

  auto* mu_table = app.add_subcommand("mu-table", "density table of exact values and constructions");
  mu_table->add_option("--primes", args.primes)->delimiter(',')->default_str("5,7,11,13");
  mu_table->add_option("--ms", args.ms)->delimiter(',')->default_str("3,4,5,6,7,8");

  auto* chains = app.add_subcommand("chains", "chain family of A for the pair (d1, d2)");
  add_q(chains);
  add_set(chains)->required();
  chains->add_option("--d1", args.d1)->required();
  chains->add_option("--d2", args.d2)->required();

  auto* verify = app.add_subcommand("verify", "run one verification suite or replay an instance");
  std::string suite_name;
  verify->add_option("suite", suite_name, "suite name");
  verify->add_option("--instance", args.instance, "instance JSON from a counterexample");
  verify->add_flag("--list", args.list, "list suites");
  verify->add_flag("--timings", args.timings, "wall times on stderr");

  auto* verify_all_cmd = app.add_subcommand("verify-all", "every acceptance suite for the profile");
  verify_all_cmd->add_flag("--timings", args.timings, "wall times on stderr");

  auto* sum = app.add_subcommand("sumset", "A+B");
  add_q(sum);
  add_set(sum)->required();
  add_set2(sum);
  auto* norm = app.add_subcommand("normalize", "a' = a1 a2 normal form of a difference");
  add_q(norm)->required();
  norm->add_option("--a", args.a)->required();
  auto* kn = app.add_subcommand("kneser", "|A+B| against |A+H|+|B+H|-|H|");
  add_q(kn);
  add_set(kn)->required();
  add_set2(kn);
  auto* sid = app.add_subcommand("sidon", "Sidon check");
  add_q(sid);
  add_set(sid)->required();
  auto* ru = app.add_subcommand("ruzsa", "|A+B| >= m n^2/(m+n-1) for Sidon B");
  add_q(ru);
  add_set(ru)->required();
  add_set2(ru);
  auto* pl = app.add_subcommand("pluennecke", "least |A'+2B|/|A'| against beta^2");
  add_q(pl);
  add_set(pl)->required();
  add_set2(pl);
  auto* lsg = app.add_subcommand("lemma-sg", "subgroup inequalities for a digital set");
  add_q(lsg);
  add_set(lsg)->required();
  lsg->add_option("--order", args.h, "order of the subgroup H")->required();
  auto* rb = app.add_subcommand("range-bounds", "the two root bounds for (m, k)");
  rb->add_option("--m", args.m)->required();
  rb->add_option("--k", args.k)->required();
  auto* th = app.add_subcommand("thresholds", "least admissible m for k");
  th->add_option("--k", args.k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Exit::ok : Exit::usage;
  }

  try {
    const RunConfig cfg = resolve_config(args, app);
    const auto fmt = cfg.output_format;

    if (*xi) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto r = args.exact ? xi_naive(a, args.n, cfg.enumeration_cap) : xi_search(a, args.n, limits_of(cfg));
      json j = r;
      j["set"] = a.to_string();
      j["method"] = args.exact ? "exact" : "search";
      emit(j, fmt);
      return r.exact ? Exit::ok : Exit::budget;
    }
    if (*alpha_cmd) {
      const auto a = read_set(args.set, args.q, "--set");
      if (alpha_cmd->count("--t")) {
        emit({{"set", a.to_string()}, {"t", args.t}, {"alpha", alpha(a, args.t)}}, fmt);
      } else {
        const auto prof = alpha_profile(a);
        emit({{"set", a.to_string()},
              {"profile", std::vector<std::size_t>(prof.begin() + 1, prof.end())},
              {"min_alpha", min_alpha(a)},
              {"optimal_differences", optimal_differences(a)}},
             fmt);
      }
      return Exit::ok;
    }
    if (*decomp) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto t = decomp->count("--t") ? args.t : optimal_differences(a).front();
      emit(json(decompose(a, t)), fmt);
      return Exit::ok;
    }
    if (*stab) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto r = stability(a, args.strict, cfg.enumeration_cap);
      emit(json(r), fmt);
      return r.status == StabilityStatus::indeterminate ? Exit::budget : Exit::ok;
    }
    if (*uniq) {
      emit(json(check_uniqueness(read_set(args.set, args.q, "--set"))), fmt);
      return Exit::ok;
    }
    if (*dcheck) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto w = is_digital(a);
      json j = {{"set", a.to_string()}, {"digital", w.has_value()}};
      if (w) {
        j["witness"] = *w;
        j["prime_condition"] = prime_condition(w->m, w->q);
      }
      emit(j, fmt);
      return Exit::ok;
    }
    if (*denum) {
      std::uint64_t seen = 0;
      json rows = json::array();
      enumerate_digital_sets(args.m, args.q, [&](const DigitalSetWitness& w) {
        if (fmt == OutputFormat::csv) rows.push_back({{"index", seen}, {"set", w.set.to_string()}});
        else emit({{"index", seen}, {"set", w.set.to_string()}}, fmt);
        ++seen;
        return args.limit == 0 || seen < args.limit;
      }, cfg.enumeration_cap);
      if (fmt == OutputFormat::csv) emit_csv(rows);
      return Exit::ok;
    }
    if (*dcarries) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto w = is_digital(a);
      if (!w) throw InvalidArgument(a.to_string() + " is not a digital set");
      emit(json(carry_stats(*w)), fmt);
      return Exit::ok;
    }
    if (*dext) {
      const auto r = verify_carry_extremality(args.m, cfg.enumeration_cap);
      emit(json(r), fmt);
      return r.passed() ? Exit::ok : Exit::counterexample;
    }
    if (*dthm) {
      DigsetteoOptions opt;
      opt.samples = args.samples;
      opt.seed = cfg.rng_seed;
      opt.node_budget = cfg.node_budget;
      opt.workers = cfg.worker_count;
      const auto r = verify_digsetteo(args.m, args.q, opt);
      json j = r;
      j["seed"] = cfg.rng_seed;
      emit(j, fmt);
      if (!r.oracle_mismatches.empty() || (r.guard_met && !r.violations.empty())) return Exit::counterexample;
      return r.skipped.empty() ? Exit::ok : Exit::budget;
    }
    if (*dcor) {
      const auto r = verify_digsetcorollary(args.m, args.q, cfg.worker_count, cfg.enumeration_cap);
      emit(json(r), fmt);
      return r.passed() ? Exit::ok : Exit::counterexample;
    }
    if (*carries) {
      json rows = json::array();
      std::uint64_t seen = 0;
      enumerate_digital_sets(args.m, args.q, [&](const DigitalSetWitness& w) {
        const auto s = carry_stats(w);
        json carries_list = s.distinct_carries;
        rows.push_back({{"index", seen},
                        {"set", w.set.to_string()},
                        {"distinct_count", s.distinct_carries.size()},
                        {"nonzero_pair_count", s.nonzero_pair_count},
                        {"distinct_carries", carries_list}});
        ++seen;
        return args.limit == 0 || seen < args.limit;
      }, cfg.enumeration_cap);
      if (!args.format.empty()) {
        if (fmt == OutputFormat::csv) emit_csv(rows);
        else for (const auto& r : rows) emit(r, fmt);
      } else {
        emit_csv(rows);
      }
      return Exit::ok;
    }
    if (*construct) {
      const auto cons = build_construction(args.m, std::max<std::uint32_t>(args.m, 12));
      json j = cons;
      j["set"] = cons.materialized;
      if (args.project) {
        const auto proj = project_to_prime(cons);
        j["projection"] = proj;
        j["projection"]["set"] = proj.complement.to_string();
      }
      emit(j, fmt);
      return cons.disjoint ? Exit::ok : Exit::counterexample;
    }
    if (*mu) {
      const auto r = compute_mu(args.p, args.bounded ? MuStrategy::bounded : MuStrategy::exhaustive);
      json j = r;
      if (fmt == OutputFormat::csv) {
        json w = json::array();
        for (const auto& s : r.witnesses) w.push_back(s.to_string());
        j["witnesses"] = w;
      }
      emit(j, fmt);
      return r.bounds_hold() ? Exit::ok : Exit::counterexample;
    }
    if (*mu_table) {
      auto primes = args.primes.empty() ? std::vector<std::uint32_t>{5, 7, 11, 13} : args.primes;
      auto ms = args.ms.empty() ? std::vector<std::uint32_t>{3, 4, 5, 6, 7, 8} : args.ms;
      json rows = mu_density_table(primes, ms);
      if (fmt == OutputFormat::csv) emit_csv(rows);
      else for (const auto& r : rows) emit(r, fmt);
      return Exit::ok;
    }
    if (*chains) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto f = extract_chain_structure(a, args.d1, args.d2);
      emit(json(f), fmt);
      return f.ok() ? Exit::ok : Exit::counterexample;
    }
    if (*verify) {
      if (args.list || suite_name.empty()) {
        json rows = json::array();
        for (const auto& s : suites())
          rows.push_back({{"suite", s.name}, {"criterion", s.criterion}, {"summary", s.summary}});
        if (fmt == OutputFormat::csv) emit_csv(rows);
        else for (const auto& r : rows) emit(r, fmt);
        return suite_name.empty() && !args.list ? Exit::usage : Exit::ok;
      }
      if (!args.instance.empty()) {
        json inst;
        try {
          inst = json::parse(args.instance);
        } catch (const json::exception& e) {
          throw InvalidArgument(std::string("--instance is not valid JSON: ") + e.what());
        }
        return emit_reports({replay_instance(suite_name, inst, cfg)}, cfg, args.timings);
      }
      return emit_reports({run_suite(suite_name, cfg)}, cfg, args.timings);
    }
    if (*verify_all_cmd) return emit_reports(verify_all(cfg), cfg, args.timings);

    if (*sum) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto b = read_set(args.set2, a.modulus(), "--set2");
      const auto s = sumset(a, b);
      emit({{"sumset", s.to_string()}, {"size", s.size()}}, fmt);
      return Exit::ok;
    }
    if (*norm) {
      emit(json(normalize_difference(args.a, args.q)), fmt);
      return Exit::ok;
    }
    if (*kn) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto r = kneser_check(a, read_set(args.set2, a.modulus(), "--set2"));
      emit(json(r), fmt);
      return r.holds ? Exit::ok : Exit::counterexample;
    }
    if (*sid) {
      emit(json(sidon_check(read_set(args.set, args.q, "--set"))), fmt);
      return Exit::ok;
    }
    if (*ru) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto r = ruzsa_bound_check(a, read_set(args.set2, a.modulus(), "--set2"));
      emit(json(r), fmt);
      return r.holds ? Exit::ok : Exit::counterexample;
    }
    if (*pl) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto r = pluennecke_subset(a, read_set(args.set2, a.modulus(), "--set2"),
                                       std::min<std::uint64_t>(cfg.subset_cap, 24), cfg.rng_seed);
      emit(json(r), fmt);
      if (!r.holds) return r.exact ? Exit::counterexample : Exit::budget;
      return Exit::ok;
    }
    if (*lsg) {
      const auto a = read_set(args.set, args.q, "--set");
      const auto r = subgroup_lemma_check(a, Subgroup(a.modulus(), args.h), 16, 256, cfg.rng_seed);
      emit(json(r), fmt);
      return r.all_hold() ? Exit::ok : Exit::counterexample;
    }
    if (*rb) {
      emit(json(range_bounds(args.m, args.k)), fmt);
      return Exit::ok;
    }
    if (*th) {
      emit(json(range_thresholds(args.k)), fmt);
      return Exit::ok;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return Exit::budget;
  }
  return Exit::usage;
}
