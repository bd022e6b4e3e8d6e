#include "zqadd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <type_traits>

#include "zqadd/ap_structure.hpp"
#include "zqadd/chains.hpp"
#include "zqadd/digital_carry.hpp"
#include "zqadd/error.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/parallel.hpp"
#include "zqadd/report.hpp"
#include "zqadd/rng.hpp"
#include "zqadd/zq_core.hpp"

namespace zqadd {

namespace {

constexpr std::size_t kKeep = 100;  // counterexamples stored per suite

struct Scale {
  std::uint32_t oracle_qmax;
  std::uint32_t identity_qmax;
  std::uint64_t identity_random;
  std::uint64_t boundary_samples;
  std::uint32_t ineq_qmax;
  std::uint64_t ineq_random;
  std::uint64_t lemma_samples;
  std::uint32_t carry_mmax;
  std::uint64_t digsetteo_samples;
  std::uint32_t corollary_m;
  std::uint32_t corollary_q;
  std::uint32_t construction_mmax;
  std::vector<std::uint32_t> mu_primes;
  std::uint64_t theorem_samples;
  std::uint64_t uniqueness_samples;
  std::uint32_t stable_q_limit;
};

Scale scale_for(Profile p) {
  switch (p) {
    case Profile::smoke:
      return {8, 8, 500, 100, 8, 500, 50, 4, 20, 16, 32, 6, {5, 7}, 20, 50, 56};
    case Profile::deep:
      return {14, 13, 100'000, 10'000, 13, 100'000, 10'000, 6, 5000, 16, 32, 10, {5, 7, 11, 13, 17},
              2000, 3000, 80};
    case Profile::desk:
      break;
  }
  return {12, 12, 10'000, 1000, 12, 10'000, 1000, 6, 500, 16, 32, 8, {5, 7, 11, 13}, 200, 300, 60};
}

std::uint64_t tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return h;
}

CounterRng stream(const RunConfig& cfg, std::string_view suite, std::uint64_t index) {
  return CounterRng(cfg.rng_seed ^ tag(suite), index);
}

std::string replay_command(std::string_view suite, const json& instance) {
  return "zqadd verify " + std::string(suite) + " --instance '" + instance.dump() + "'";
}

json set_json(const ResidueSet& a) { return json{{"q", a.modulus()}, {"set", a.elements()}}; }

ResidueSet set_from(const json& inst, const char* key = "set") {
  return ResidueSet::from_elements(inst.at("q").get<std::uint32_t>(),
                                   inst.at(key).get<std::vector<std::uint32_t>>());
}

json with(json j, const char* key, json value) {
  j[key] = std::move(value);
  return j;
}

SearchLimits limits(const RunConfig& cfg) { return {cfg.node_budget, cfg.time_budget}; }

VerificationReport report_for(const std::string& name, int criterion) {
  VerificationReport r;
  r.suite = name;
  r.criterion = criterion;
  return r;
}

struct Tally {
  Tally(std::string name = {}) : suite(std::move(name)) {}

  std::string suite;
  std::uint64_t count = 0;
  std::uint64_t failures = 0;
  std::vector<Counterexample> found;
  std::vector<std::string> skipped;
  std::map<std::string, std::uint64_t> counters;

  void fail(std::string what, json inst) {
    ++failures;
    if (found.size() < kKeep)
      found.push_back({std::move(what), replay_command(suite, inst), std::move(inst)});
  }
  void merge(Tally&& o) {
    count += o.count;
    failures += o.failures;
    for (auto& c : o.found)
      if (found.size() < kKeep) found.push_back(std::move(c));
    for (auto& s : o.skipped) skipped.push_back(std::move(s));
    for (const auto& [k, v] : o.counters) counters[k] += v;
  }
  // Runs one check: a returned string is a failure, BudgetExceeded a skip.
  // `inst` is the instance JSON or a callable producing it on demand.
  template <class I, class F>
  void check(I&& inst, F&& f) {
    auto make = [&]() -> json {
      if constexpr (std::is_invocable_v<I>) return inst();
      else return inst;
    };
    ++count;
    try {
      if (auto msg = f()) fail(std::move(*msg), make());
    } catch (const BudgetExceeded& e) {
      skipped.push_back(make().dump() + ": " + e.what());
    }
  }
};

template <class F>
Tally sweep(const std::string& suite, std::size_t n, const RunConfig& cfg, F&& body) {
  auto parts = parallel_map(n, cfg.worker_count, [&](std::size_t i) {
    Tally t{suite};
    body(i, t);
    return t;
  });
  Tally all{suite};
  for (auto& p : parts) all.merge(std::move(p));
  return all;
}

// Exhaustive sweep over all masks of Z_q for q in [qmin, qmax], split into
// fixed blocks.
template <class F>
Tally mask_sweep(const std::string& suite, std::uint32_t qmin, std::uint32_t qmax,
                 const RunConfig& cfg, F&& body) {
  Tally all{suite};
  for (std::uint32_t q = qmin; q <= qmax; ++q) {
    const std::uint64_t total = std::uint64_t{1} << q;
    auto parts = parallel_blocks(total, 256, cfg.worker_count, [&](std::size_t lo, std::size_t hi) {
      Tally t{suite};
      for (std::size_t mask = lo; mask < hi; ++mask) body(q, mask, t);
      return t;
    });
    for (auto& p : parts) all.merge(std::move(p));
  }
  return all;
}

ResidueSet random_subset(CounterRng& rng, std::uint32_t q) {
  const auto density = rng.below(1001);
  ResidueSet s(q);
  for (std::uint32_t x = 0; x < q; ++x)
    if (rng.below(1000) < density) s.insert(x);
  return s;
}

ResidueSet random_subset_of_size(CounterRng& rng, std::uint32_t q, std::uint32_t k) {
  std::vector<std::uint32_t> pool(q);
  std::iota(pool.begin(), pool.end(), 0U);
  for (std::uint32_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(q - i)]);
  pool.resize(k);
  return ResidueSet::from_elements(q, pool);
}

ResidueSet random_digital(CounterRng& rng, std::uint32_t m, std::uint32_t q) {
  return digital_set_at(m, q, rng.below(digital_set_count(m, q))).set;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// ---------------------------------------------------------------- xi-oracle

std::optional<std::string> check_xi_oracle(const ResidueSet& a, std::uint32_t n, const RunConfig& cfg) {
  const auto s = xi_search(a, n, limits(cfg));
  if (!s.exact) throw BudgetExceeded("xi_search hit its node or time budget");
  const auto o = xi_naive(a, n, cfg.enumeration_cap);
  if (s.value != o.value)
    return "xi_search = " + std::to_string(s.value) + ", xi_naive = " + std::to_string(o.value);
  if (s.witness != o.witness)
    return "witnesses differ: " + s.witness.to_string() + " vs " + o.witness.to_string();
  return std::nullopt;
}

VerificationReport suite_xi_oracle(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "xi-oracle";
  auto t = mask_sweep(name, 1, sc.oracle_qmax, cfg, [&](std::uint32_t q, std::uint64_t mask, Tally& t) {
    const auto a = ResidueSet::from_mask(q, mask);
    for (std::uint32_t n = 0; n <= q; ++n)
      t.check([&] { return with(set_json(a), "n", n); },
              [&] { return check_xi_oracle(a, n, cfg); });
  });
  auto r = report_for(name, 1);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"q_max", sc.oracle_qmax}, {"n_range", "0..q"}, {"failures", t.failures}};
  return r;
}

// ----------------------------------------------------------- alpha-identity

std::optional<std::string> check_identity(const ResidueSet& a, std::uint32_t t, std::uint32_t x) {
  const auto q = a.modulus();
  std::vector<char> hit(q, 0);
  for (auto e : a.elements()) {
    hit[(e + x) % q] = 1;
    hit[(e + x + t) % q] = 1;
  }
  const auto lhs = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  const auto rhs = a.size() + alpha(a, t);
  if (lhs != rhs)
    return "|A+{x,x+t}| = " + std::to_string(lhs) + " but |A| + alpha_t = " + std::to_string(rhs);
  return std::nullopt;
}

std::optional<std::string> check_xi2(const ResidueSet& a, const RunConfig& cfg) {
  const auto s = xi_search(a, 2, limits(cfg));
  if (!s.exact) throw BudgetExceeded("xi_search hit its node or time budget");
  const std::size_t want = a.size() + ((a.empty() || a.is_full()) ? 0 : min_alpha(a));
  if (s.value != want)
    return "xi(2) = " + std::to_string(s.value) + " but |A| + min alpha = " + std::to_string(want);
  return std::nullopt;
}

VerificationReport suite_alpha_identity(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "alpha-identity";
  auto t = mask_sweep(name, 2, sc.identity_qmax, cfg, [&](std::uint32_t q, std::uint64_t mask, Tally& t) {
    const auto a = ResidueSet::from_mask(q, mask);
    for (std::uint32_t s = 0; s < q; ++s)
      for (std::uint32_t x = 0; x < q; ++x) {
        ++t.count;
        if (auto msg = check_identity(a, s, x)) {
          json inst = set_json(a);
          inst["kind"] = "identity";
          inst["t"] = s;
          inst["x"] = x;
          t.fail(std::move(*msg), inst);
        }
      }
    t.check([&] { return with(set_json(a), "kind", "xi2"); }, [&] { return check_xi2(a, cfg); });
  });
  auto rnd = sweep(name, sc.identity_random, cfg, [&](std::size_t i, Tally& t) {
    auto rng = stream(cfg, name, i);
    const auto q = static_cast<std::uint32_t>(rng.between(2, 64));
    const auto a = random_subset(rng, q);
    const auto s = static_cast<std::uint32_t>(rng.below(q));
    const auto x = static_cast<std::uint32_t>(rng.below(q));
    json inst = set_json(a);
    inst["kind"] = "identity";
    inst["t"] = s;
    inst["x"] = x;
    t.check(inst, [&] { return check_identity(a, s, x); });
    inst = set_json(a);
    inst["kind"] = "xi2";
    t.check(inst, [&] { return check_xi2(a, cfg); });
  });
  const auto exhaustive_count = t.count;
  t.merge(std::move(rnd));
  auto r = report_for(name, 2);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"exhaustive_q_max", sc.identity_qmax},
               {"exhaustive_checks", exhaustive_count},
               {"random_instances", sc.identity_random},
               {"random_q_max", 64},
               {"failures", t.failures}};
  return r;
}

// ---------------------------------------------------------- boundary-values

// literal: expect xi(q-m) = q-1; otherwise q - |H(A)|.
std::optional<std::string> check_boundary(const ResidueSet& a, const std::vector<std::uint32_t>& ns,
                                          bool literal, const RunConfig& cfg) {
  const auto q = a.modulus();
  const auto m = static_cast<std::uint32_t>(a.size());
  for (auto n : ns) {
    std::size_t want;
    if (n == 1) want = m;
    else if (n == q - m) want = literal ? q - 1 : q - period_group(a).order();
    else if (n > q - m) want = q;
    else continue;
    const auto r = xi_search(a, n, limits(cfg));
    if (!r.exact) throw BudgetExceeded("xi_search hit its node or time budget");
    if (r.value != want)
      return "xi(" + std::to_string(n) + ") = " + std::to_string(r.value) + ", expected " +
             std::to_string(want);
  }
  return std::nullopt;
}

VerificationReport suite_boundary(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "boundary-values";
  static const std::pair<std::uint32_t, std::uint32_t> pool[] = {
      {2, 4}, {2, 8}, {4, 8}, {2, 16}, {4, 16}, {8, 16}, {3, 9}, {3, 27}};
  auto t = sweep(name, 2 * sc.boundary_samples, cfg, [&](std::size_t i, Tally& t) {
    auto rng = stream(cfg, name, i);
    const bool digital = i < sc.boundary_samples;
    ResidueSet a;
    std::vector<std::uint32_t> ns;
    if (digital) {
      const auto [m, q] = pool[rng.below(std::size(pool))];
      a = random_digital(rng, m, q);
      ns.push_back(1);
      for (auto n = q - m; n <= q; ++n) ns.push_back(n);
    } else {
      const auto q = static_cast<std::uint32_t>(rng.between(2, 16));
      do a = random_subset(rng, q);
      while (a.empty());
      const auto m = static_cast<std::uint32_t>(a.size());
      ns = {1, q - m + 1, q};
      if (m < q) ns.push_back(q - m);
      if (m > 1) ns.push_back(static_cast<std::uint32_t>(rng.between(q - m + 1, q)));
      std::sort(ns.begin(), ns.end());
      ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    }
    json inst = set_json(a);
    inst["ns"] = ns;
    inst["literal"] = digital;
    t.check(inst, [&] { return check_boundary(a, ns, digital, cfg); });
    if (!digital && period_group(a).order() > 1) ++t.counters["periodic"];
  });
  auto r = report_for(name, 3);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"digital_sets", sc.boundary_samples},
               {"digital_pool", "(2,4) (2,8) (4,8) (2,16) (4,16) (8,16) (3,9) (3,27)"},
               {"arbitrary_sets", sc.boundary_samples},
               {"arbitrary_q_max", 16},
               {"arbitrary_periodic", t.counters["periodic"]},
               {"rule_at_q_minus_m", "q-1 on digital sets; q-|H(A)| on arbitrary sets"},
               {"failures", t.failures}};
  return r;
}

// ------------------------------------------------------------- inequalities

bool sidon_oracle(const ResidueSet& b) {
  const auto q = b.modulus();
  const auto e = b.elements();
  std::vector<int> seen(q, 0);
  for (auto x : e)
    for (auto y : e)
      if (x != y && seen[(x + q - y) % q]++) return false;
  return true;
}

std::optional<std::string> check_kneser(const ResidueSet& a, const ResidueSet& b) {
  const auto r = kneser_check(a, b);
  if (!r.holds)
    return "|A+B| = " + std::to_string(r.lhs) + " < |A+H|+|B+H|-|H| = " + std::to_string(r.rhs);
  return std::nullopt;
}

std::optional<std::string> check_pluennecke(const ResidueSet& a, const ResidueSet& b, const RunConfig& cfg) {
  const auto r = pluennecke_subset(a, b, std::min<std::uint64_t>(cfg.subset_cap, 24), cfg.rng_seed);
  if (!r.exact) throw BudgetExceeded("|A| above the exact subset cap");
  if (!r.holds)
    return "min |A'+2B|/|A'| = " + std::to_string(r.ratio_num) + "/" + std::to_string(r.ratio_den) +
           " exceeds beta^2";
  return std::nullopt;
}

std::optional<std::string> check_sidon(const ResidueSet& b) {
  const auto r = sidon_check(b);
  const bool oracle = sidon_oracle(b);
  if (r.is_sidon != oracle)
    return std::string("sidon_check says ") + (r.is_sidon ? "Sidon" : "not Sidon") +
           ", pairwise differences say otherwise";
  const auto n = b.size();
  if (r.is_sidon && r.double_sum_size != n * (n + 1) / 2)
    return "Sidon set with |2B| = " + std::to_string(r.double_sum_size) + " != n(n+1)/2";
  return std::nullopt;
}

std::optional<std::string> check_ruzsa(const ResidueSet& a, const ResidueSet& b) {
  const auto r = ruzsa_bound_check(a, b);
  if (!r.holds)
    return "|A+B| = " + std::to_string(r.lhs) + " < m n^2/(m+n-1) = " + std::to_string(r.rhs_num) + "/" +
           std::to_string(r.rhs_den);
  return std::nullopt;
}

std::optional<std::string> check_inequality(const json& inst, const RunConfig& cfg) {
  const auto kind = inst.at("kind").get<std::string>();
  const auto b = set_from(inst, "b");
  if (kind == "sidon") return check_sidon(b);
  const auto a = set_from(inst);
  if (kind == "kneser") return check_kneser(a, b);
  if (kind == "pluennecke") return check_pluennecke(a, b, cfg);
  if (kind == "ruzsa") return check_ruzsa(a, b);
  throw InvalidArgument("unknown inequality kind '" + kind + "'");
}

json pair_json(const char* kind, const ResidueSet& a, const ResidueSet& b) {
  json inst = set_json(a);
  inst["kind"] = kind;
  inst["b"] = b.elements();
  return inst;
}

ResidueSet greedy_sidon(CounterRng& rng, std::uint32_t q) {
  std::vector<std::uint32_t> order(q);
  std::iota(order.begin(), order.end(), 0U);
  for (std::uint32_t i = q; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  ResidueSet b(q);
  for (auto x : order) {
    b.insert(x);
    if (!sidon_oracle(b)) b.erase(x);
  }
  return b;
}

VerificationReport suite_inequalities(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "inequalities";
  std::uint64_t sidon_sets = 0;
  // Translation invariance: 0 in A and 0 in B.
  Tally t{name};
  for (std::uint32_t q = 1; q <= sc.ineq_qmax; ++q) {
    const std::uint64_t half = std::uint64_t{1} << (q - 1);
    std::vector<ResidueSet> sidon;
    for (std::uint64_t mb = 0; mb < half; ++mb) {
      const auto b = ResidueSet::from_mask(q, (mb << 1) | 1);
      t.check(pair_json("sidon", b, b), [&] { return check_sidon(b); });
      if (sidon_oracle(b)) sidon.push_back(b);
    }
    sidon_sets += sidon.size();
    auto parts = parallel_blocks(half, 64, cfg.worker_count, [&](std::size_t lo, std::size_t hi) {
      Tally u{name};
      for (std::size_t ma = lo; ma < hi; ++ma) {
        const auto a = ResidueSet::from_mask(q, (std::uint64_t{ma} << 1) | 1);
        for (std::uint64_t mb = 0; mb < half; ++mb) {
          const auto b = ResidueSet::from_mask(q, (mb << 1) | 1);
          u.check([&] { return pair_json("kneser", a, b); }, [&] { return check_kneser(a, b); });
          u.check([&] { return pair_json("pluennecke", a, b); }, [&] { return check_pluennecke(a, b, cfg); });
        }
        for (const auto& b : sidon)
          u.check([&] { return pair_json("ruzsa", a, b); }, [&] { return check_ruzsa(a, b); });
      }
      return u;
    });
    for (auto& p : parts) t.merge(std::move(p));
  }
  const auto exhaustive_count = t.count;
  t.merge(sweep(name, sc.ineq_random, cfg, [&](std::size_t i, Tally& u) {
    auto rng = stream(cfg, name, i);
    const auto q = static_cast<std::uint32_t>(rng.between(2, 60));
    const auto ka = static_cast<std::uint32_t>(rng.between(1, std::min<std::uint32_t>(q, 16)));
    const auto a = random_subset_of_size(rng, q, ka);
    const auto b = random_subset_of_size(rng, q, static_cast<std::uint32_t>(rng.between(1, q)));
    const auto s = greedy_sidon(rng, q);
    u.check(pair_json("kneser", a, b), [&] { return check_kneser(a, b); });
    u.check(pair_json("pluennecke", a, b), [&] { return check_pluennecke(a, b, cfg); });
    u.check(pair_json("sidon", s, s), [&] { return check_sidon(s); });
    u.check(pair_json("ruzsa", a, s), [&] { return check_ruzsa(a, s); });
  }));
  auto r = report_for(name, 4);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"exhaustive_q_max", sc.ineq_qmax},
               {"exhaustive_checks", exhaustive_count},
               {"exhaustive_sidon_sets", sidon_sets},
               {"random_instances", sc.ineq_random},
               {"random_q_max", 60},
               {"pluennecke_exact_cap", std::min<std::uint64_t>(cfg.subset_cap, 24)},
               {"reduction", "0 in A and 0 in B (all four statements are translation invariant)"},
               {"failures", t.failures}};
  return r;
}

// ----------------------------------------------------------- subgroup-lemma

std::optional<std::string> check_lemma(const ResidueSet& a, std::uint32_t h, std::uint64_t seed) {
  const auto r = subgroup_lemma_check(a, Subgroup(a.modulus(), h), 16, 256, seed);
  if (!r.all_hold())
    return "m=" + std::to_string(r.m) + ", H of order " + std::to_string(h) + ": " + join(r.failures()) +
           " (|A+H| = " + std::to_string(r.sumset_with_subgroup) + ", (m|H|, q) = " +
           std::to_string(r.gcd_bound) + ", min(q, 4m/3+|H|) = min(" + std::to_string(r.q) + ", " +
           std::to_string(4 * r.m + 3 * h) + "/3))";
  return std::nullopt;
}

VerificationReport suite_lemma(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "subgroup-lemma";
  Tally t{name};
  json per_pair = json::array();
  auto run_set = [&](const ResidueSet& a, Tally& u, std::uint64_t seed) {
    for (const auto& h : proper_subgroups(a.modulus())) {
      json inst = set_json(a);
      inst["h"] = h.order();
      inst["seed"] = seed;
      u.check(inst, [&] { return check_lemma(a, h.order(), seed); });
    }
  };
  for (auto [m, q] : {std::pair{2U, 4U}, {2U, 8U}, {4U, 8U}}) {
    const auto before = t.failures;
    enumerate_digital_sets(m, q, [&](const DigitalSetWitness& w) {
      run_set(w.set, t, 0);
      return true;
    }, cfg.enumeration_cap);
    per_pair.push_back({{"m", m}, {"q", q}, {"mode", "exhaustive"}, {"failures", t.failures - before}});
  }
  auto sampled = sweep(name, sc.lemma_samples, cfg, [&](std::size_t i, Tally& u) {
    auto rng = stream(cfg, name, i);
    run_set(random_digital(rng, 6, 36), u, rng());
  });
  per_pair.push_back({{"m", 6}, {"q", 36}, {"mode", "sampled"}, {"samples", sc.lemma_samples},
                      {"failures", sampled.failures}});
  t.merge(std::move(sampled));
  auto r = report_for(name, 5);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"pairs", per_pair}, {"failures", t.failures}};
  return r;
}

// --------------------------------------------------------- carry-extremality

std::optional<std::string> check_carry(std::uint32_t m, const RunConfig& cfg, json* detail = nullptr) {
  const auto r = verify_carry_extremality(m, cfg.enumeration_cap);
  if (detail) *detail = r;
  std::vector<std::string> bad;
  if (!r.interval_attains) bad.push_back("[0,m-1] does not attain the distinct-carry minimum");
  if (!r.distinct_minimizers_are_orbit) bad.push_back("distinct-carry minimizers differ from the affine orbit");
  if (!r.balanced_attains) bad.push_back("balanced digits do not attain the nonzero-pair minimum");
  if (!r.nonzero_minimizers_are_orbit) bad.push_back("nonzero-pair minimizers differ from the unit orbit");
  if (bad.empty()) return std::nullopt;
  return join(bad);
}

VerificationReport suite_carry(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "carry-extremality";
  Tally t{name};
  json per_m = json::array();
  std::uint64_t sets = 0;
  for (std::uint32_t m = 3; m <= sc.carry_mmax; ++m) {
    json d;
    t.check(json{{"m", m}}, [&] { return check_carry(m, cfg, &d); });
    if (d.is_object()) sets += d.at("sets").get<std::uint64_t>();
    per_m.push_back(d);
  }
  auto r = report_for(name, 6);
  r.instance_count = sets;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"m_range", {3, sc.carry_mmax}}, {"per_m", per_m}};
  return r;
}

// ----------------------------------------------------------- digital-impact

std::optional<std::string> check_digsetteo_instance(const ResidueSet& a, std::uint32_t n,
                                                    const RunConfig& cfg) {
  const auto w = is_digital(a);
  if (!w) return "not a digital set";
  if (min_alpha(a) < 3) return std::nullopt;
  const auto s = xi_search(a, n, limits(cfg));
  if (!s.exact) throw BudgetExceeded("xi_search hit its node or time budget");
  if (n <= 3) {
    const auto o = xi_naive(a, n, cfg.enumeration_cap);
    if (o.value != s.value)
      return "xi_search = " + std::to_string(s.value) + ", xi_naive = " + std::to_string(o.value);
  }
  if (s.value <= w->m + n)
    return "xi(" + std::to_string(n) + ") = " + std::to_string(s.value) + " <= m + n = " +
           std::to_string(w->m + n);
  return std::nullopt;
}

VerificationReport suite_digsetteo(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "digital-impact";
  DigsetteoOptions opt;
  opt.samples = sc.digsetteo_samples;
  opt.seed = cfg.rng_seed ^ tag(name);
  opt.window_lo = 2;
  opt.window_hi = 4;
  opt.oracle_up_to = 3;
  opt.node_budget = cfg.node_budget;
  opt.workers = cfg.worker_count;
  const auto rep = verify_digsetteo(16, 32, opt);
  Tally t{name};
  auto record = [&](const WindowViolation& v, const char* what) {
    json inst = set_json(v.set);
    inst["n"] = v.n;
    t.fail(std::string(what) + ": xi(" + std::to_string(v.n) + ") = " + std::to_string(v.xi), inst);
  };
  if (rep.guard_met)
    for (const auto& v : rep.violations) record(v, "window violation");
  for (const auto& v : rep.oracle_mismatches) record(v, "xi_search disagrees with xi_naive");
  auto r = report_for(name, 7);
  r.instance_count = rep.examined;
  r.counterexamples = std::move(t.found);
  r.skipped = rep.skipped;
  r.details = rep;
  r.details.erase("violations");
  r.details["violation_count"] = rep.violations.size();
  r.details["window"] = {2, 4};
  return r;
}

// ------------------------------------------------------ two-translate-cover

std::optional<std::string> check_corollary_instance(const ResidueSet& a) {
  if (!is_digital(a)) return "not a digital set";
  const auto cover = two_translate_cover(a);
  if (cover && !interval_normal_form(a))
    return "2A is covered by {" + std::to_string(cover->first) + "," + std::to_string(cover->second) +
           "}+A but A is no affine image of [0, m-1]";
  return std::nullopt;
}

VerificationReport suite_corollary(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "two-translate-cover";
  const auto rep = verify_digsetcorollary(sc.corollary_m, sc.corollary_q, cfg.worker_count,
                                          cfg.enumeration_cap);
  Tally t{name};
  for (const auto& s : rep.solutions)
    if (!s.normal_form)
      t.fail("2A in {" + std::to_string(s.x) + "," + std::to_string(s.y) +
                 "}+A but no unit c and shift d give cA+d = [0, m-1]",
             set_json(s.set));
  if (!rep.prime_condition) t.fail("prime condition fails", json{{"m", rep.m}, {"q", rep.q}});
  auto r = report_for(name, 8);
  r.instance_count = rep.examined;
  r.counterexamples = std::move(t.found);
  json d = rep;
  d.erase("solutions");
  json first = json::array();
  for (std::size_t i = 0; i < rep.solutions.size() && i < 8; ++i) {
    const auto& s = rep.solutions[i];
    first.push_back({{"set", s.set.elements()}, {"x", s.x}, {"y", s.y},
                     {"normal_form", s.normal_form ? json{s.normal_form->first, s.normal_form->second}
                                                   : json(nullptr)}});
  }
  d["first_solutions"] = first;
  std::uint64_t whole = 0;
  for (const auto& s : rep.solutions)
    if ((s.set | s.set.translated((s.y + rep.q - s.x) % rep.q)).is_full()) ++whole;
  d["solutions_with_translates_covering_zq"] = whole;
  d["interval_solutions"] = rep.solutions.size() - rep.non_interval.size();
  d["non_interval_count"] = rep.non_interval.size();
  d.erase("non_interval");
  d["literal_reading_flagged"] = true;
  r.details = d;
  return r;
}

// ------------------------------------------------------------- construction

constexpr double kThirteenEighteenths = 13.0 / 18.0;

std::optional<std::string> check_construction(std::uint32_t m, json* detail = nullptr) {
  const auto cons = build_construction(m, std::max<std::uint32_t>(m, 12));
  std::vector<std::string> bad;
  json d = {{"m", m},
            {"size", cons.materialized.size()},
            {"closed_form_size", cons.closed_form_size},
            {"disjoint", cons.disjoint},
            {"within_ground", cons.within_ground},
            {"density", cons.density()},
            {"chains", cons.chains.size()}};
  if (!cons.disjoint) bad.push_back("intervals overlap: " + join(cons.collisions));
  if (!cons.within_ground) bad.push_back("B leaves [0, 2^{2m}]: " + join(cons.out_of_range));
  if (cons.materialized.size() != cons.closed_form_size)
    bad.push_back("|B| = " + std::to_string(cons.materialized.size()) + " but the closed form gives " +
                  std::to_string(cons.closed_form_size));
  if (m == 3 && cons.materialized.size() != 36) bad.push_back("|B| != 36 at m = 3");
  if (m == 8) {
    const double gap = std::abs(cons.density() - kThirteenEighteenths);
    d["distance_to_13_18"] = gap;
    if (gap > 0.02) bad.push_back("density " + format_double(cons.density()) + " is not within 0.02 of 13/18");
  }
  if (m == 3) {
    const auto proj = project_to_prime(cons);
    const auto fam = extract_chain_structure(proj.complement, 1, 8);
    const auto x = xi2_xi3(proj.complement);
    d["projection"] = proj;
    d["chain_family"] = fam;
    d["xi2_xi3"] = x;
    if (proj.p != 67) bad.push_back("projection prime is " + std::to_string(proj.p) + ", not 67");
    if (!proj.in_short_interval) bad.push_back("projection prime outside the short interval");
    if (!fam.ok()) bad.push_back("chain conditions: " + join(fam.violations));
  }
  if (detail) *detail = d;
  if (bad.empty()) return std::nullopt;
  return join(bad);
}

VerificationReport suite_construction(const RunConfig&, const Scale& sc) {
  const std::string name = "construction";
  Tally t{name};
  json per_m = json::array();
  for (std::uint32_t m = 3; m <= sc.construction_mmax; ++m) {
    json d;
    t.check(json{{"m", m}}, [&] { return check_construction(m, &d); });
    per_m.push_back(d);
  }
  auto r = report_for(name, 9);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"per_m", per_m}, {"target_density", kThirteenEighteenths}, {"tolerance_at_m8", 0.02}};
  return r;
}

// ----------------------------------------------------------------------- mu

std::optional<std::string> check_mu(std::uint32_t p, json* detail = nullptr) {
  const auto e = compute_mu(p, MuStrategy::exhaustive);
  const auto b = compute_mu(p, MuStrategy::bounded);
  if (detail) *detail = {{"exhaustive", e}, {"bounded", b}};
  std::vector<std::string> bad;
  if (e.mu != b.mu)
    bad.push_back("strategies disagree: " + std::to_string(e.mu) + " vs " + std::to_string(b.mu));
  if (e.witnesses != b.witnesses) bad.push_back("witness lists differ");
  for (const auto* r : {&e, &b}) {
    if (r->sqrt_bound_applies && !r->sqrt_bound_holds) bad.push_back("mu below sqrt(8p+25)-5");
    if (!r->log4_bound_holds) bad.push_back("mu below log4 p");
    if (!r->half_k_holds) bad.push_back("k > |A|/2 for a witness");
  }
  if (bad.empty()) return std::nullopt;
  return join(bad);
}

VerificationReport suite_mu(const RunConfig&, const Scale& sc) {
  const std::string name = "mu";
  Tally t{name};
  json rows = json::array();
  for (auto p : sc.mu_primes) {
    json d;
    t.check(json{{"p", p}}, [&] { return check_mu(p, &d); });
    rows.push_back(d);
  }
  auto r = report_for(name, 10);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"primes", sc.mu_primes}, {"records", rows}};
  return r;
}

// ------------------------------------------------------------ theorem-main

std::optional<std::string> check_thresholds(std::int64_t k) {
  // Expected thresholds: the beta bound from m >= 5 (k = 0) and m >= 10 (k = 1);
  // the second root bound from m >= 4 and m >= 9.
  const auto r = range_thresholds(k);
  const std::int64_t beta = k == 0 ? 5 : 10;
  const std::int64_t second = k == 0 ? 4 : 9;
  if (r.beta_threshold != beta || r.stated_threshold != second)
    return "thresholds (" + std::to_string(r.beta_threshold) + ", " + std::to_string(r.stated_threshold) +
           ") differ from the stated (" + std::to_string(beta) + ", " + std::to_string(second) + ")";
  return std::nullopt;
}

std::optional<std::string> check_theorem_instance(const ResidueSet& a, std::int64_t k, std::uint32_t n,
                                                  const RunConfig& cfg) {
  const auto m = static_cast<std::int64_t>(a.size());
  const auto end = static_cast<std::uint32_t>(std::floor((3 + std::sqrt(16.0 * k + 1)) / 2));
  auto xi = [&](std::uint32_t j) {
    const auto r = xi_search(a, j, limits(cfg));
    if (!r.exact) throw BudgetExceeded("xi_search hit its node or time budget");
    return static_cast<std::int64_t>(r.value);
  };
  for (std::uint32_t j = 2; j <= end; ++j)
    if (xi(j) < j + m + k) return std::nullopt;  // hypothesis not met
  if (xi(n) < n + m + k)
    return "xi(" + std::to_string(n) + ") = " + std::to_string(xi(n)) + " < n + m + k";
  return std::nullopt;
}

VerificationReport suite_theorem_main(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "theorem-main";
  Tally t{name};
  for (std::int64_t k : {0, 1}) t.check(json{{"thresholds", true}, {"k", k}}, [&] { return check_thresholds(k); });
  json runs = json::array();
  std::uint64_t sampled = 0;
  for (auto [m, q, k] : {std::tuple{6, 36, 0}, {8, 16, 0}, {9, 27, 0}, {16, 32, 1}}) {
    TheoremMainOptions opt;
    opt.samples = sc.theorem_samples;
    opt.seed = cfg.rng_seed ^ tag(name) ^ static_cast<std::uint64_t>(q);
    opt.window_hi = 5;
    opt.node_budget = cfg.node_budget;
    opt.workers = cfg.worker_count;
    const auto rep = verify_theorem_main(m, q, k, opt);
    sampled += rep.sampled;
    for (const auto& c : rep.counterexamples) {
      json inst = set_json(c.set);
      inst["k"] = k;
      inst["n"] = c.n;
      t.fail("xi(" + std::to_string(c.n) + ") = " + std::to_string(c.xi) + " below n + m + k", inst);
    }
    for (const auto& s : rep.skipped) t.skipped.push_back(s);
    json d = rep;
    d.erase("counterexamples");
    runs.push_back(d);
  }
  auto r = report_for(name, 0);
  r.instance_count = t.count + sampled;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"thresholds", {range_thresholds(0), range_thresholds(1)}}, {"runs", runs}};
  return r;
}

// ---------------------------------------------------------------- uniqueness

std::optional<std::string> check_uniqueness_instance(const ResidueSet& a) {
  const auto v = check_uniqueness(a);
  const auto q = a.modulus();
  std::vector<std::uint32_t> oracle;
  for (std::uint32_t x = 1; x < q; ++x)
    if ((a | a.translated(x)).size() == a.size() + 2) oracle.push_back(x);
  std::sort(oracle.begin(), oracle.end());
  auto got = v.difference_set;
  std::sort(got.begin(), got.end());
  if (got != oracle) return "difference set disagrees with the direct count";
  if (v.affine_witness) {
    const auto [c, s] = *v.affine_witness;
    const auto img = a.dilated(c).translated(s);
    const auto l = static_cast<std::uint32_t>(a.size()) - 1;
    ResidueSet nf(q);
    if (v.classification == UniquenessClass::exception_interval_plus_point) {
      for (std::uint32_t i = 0; i < l; ++i) nf.insert(i);
      nf.insert(l + 1);
    } else {
      nf.insert(0);
      for (std::uint32_t i = 2; i <= l + 1; ++i) nf.insert(i);
    }
    if (img != nf) return "affine witness does not map A onto the normal form";
  }
  if (v.hypotheses_met() && v.classification == UniquenessClass::other)
    return "hypotheses hold but the difference set is neither {d, -d} nor an exceptional family";
  return std::nullopt;
}

VerificationReport suite_uniqueness(const RunConfig& cfg, const Scale& sc) {
  const std::string name = "uniqueness";
  static const std::uint32_t moduli[] = {101, 103, 105, 111, 121};
  auto t = sweep(name, sc.uniqueness_samples, cfg, [&](std::size_t i, Tally& u) {
    auto rng = stream(cfg, name, i);
    const auto q = moduli[rng.below(std::size(moduli))];
    ResidueSet base(q);
    if (i % 3 == 0) {
      const auto l = static_cast<std::uint32_t>(rng.between(5, q - 7));
      for (std::uint32_t x = 0; x < l; ++x) base.insert(x);
      base.insert(l + 1);
    } else {
      const auto a = static_cast<std::uint32_t>(rng.between(2, q / 3));
      const auto g = static_cast<std::uint32_t>(rng.between(1, q / 4));
      const auto b = static_cast<std::uint32_t>(rng.between(2, q / 3));
      for (std::uint32_t x = 0; x < a; ++x) base.insert(x);
      for (std::uint32_t x = 0; x < b; ++x) base.insert(a + g + x);
    }
    std::uint32_t c;
    do c = static_cast<std::uint32_t>(rng.between(1, q - 1));
    while (gcd(c, q) != 1);
    const auto a = base.dilated(c).translated(static_cast<std::uint32_t>(rng.below(q)));
    if (a.size() <= 2 || a.is_full() || min_alpha(a) != 2) return;
    u.check(set_json(a), [&] { return check_uniqueness_instance(a); });
    ++u.counters[std::string(to_string(check_uniqueness(a).classification))];
  });
  auto r = report_for(name, 0);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"moduli", moduli}, {"samples", sc.uniqueness_samples}, {"checked", t.count},
               {"classes", t.counters}, {"failures", t.failures}};
  return r;
}

// --------------------------------------------------------- stable-components

std::optional<std::string> check_stable(std::uint32_t k, std::uint32_t q_limit, json* detail = nullptr) {
  const auto inst = find_stable_multi_component(k, q_limit);
  if (!inst) return "no stable member of the family for q <= " + std::to_string(q_limit);
  if (detail)
    *detail = {{"k", inst->k}, {"q", inst->q}, {"set", inst->set}, {"stability", inst->report}};
  if (min_alpha(inst->set) != k || !inst->report.stable()) return "reported instance is not k-stable";
  return std::nullopt;
}

VerificationReport suite_stable(const RunConfig&, const Scale& sc) {
  const std::string name = "stable-components";
  Tally t{name};
  json d;
  t.check(json{{"k", 4}, {"q_limit", sc.stable_q_limit}}, [&] { return check_stable(4, sc.stable_q_limit, &d); });
  auto r = report_for(name, 0);
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"instance", d}};
  return r;
}

using SuiteFn = VerificationReport (*)(const RunConfig&, const Scale&);

struct SuiteEntry {
  SuiteInfo info;
  SuiteFn run;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> r = {
      {{"xi-oracle", 1, "xi_search agrees with xi_naive on every subset, q <= 12"}, suite_xi_oracle},
      {{"alpha-identity", 2, "|A+{x,x+t}| = |A| + alpha_t and xi(2) = |A| + min alpha"}, suite_alpha_identity},
      {{"boundary-values", 3, "xi(1), xi(q-m) and xi(n) for n > q-m"}, suite_boundary},
      {{"inequalities", 4, "Kneser, Sidon, Ruzsa and Pluennecke checks"}, suite_inequalities},
      {{"subgroup-lemma", 5, "subgroup inequalities on digital sets"}, suite_lemma},
      {{"carry-extremality", 6, "carry minima attained exactly by the expected orbits"}, suite_carry},
      {{"digital-impact", 7, "xi(n) > m+n on [2,4] for digital sets with min alpha >= 3"}, suite_digsetteo},
      {{"two-translate-cover", 8, "2A in {x,y}+A forces an affine interval"}, suite_corollary},
      {{"construction", 9, "dense construction, projection and chain conditions"}, suite_construction},
      {{"mu", 10, "mu(p) by two strategies and its lower bounds"}, suite_mu},
      {{"theorem-main", 0, "range thresholds and the main window inequality"}, suite_theorem_main},
      {{"uniqueness", 0, "difference sets of sets with min alpha = 2"}, suite_uniqueness},
      {{"stable-components", 0, "a k-stable member of the multi-component family"}, suite_stable},
  };
  return r;
}

const SuiteEntry& find_suite(std::string_view name) {
  for (const auto& e : registry())
    if (e.info.name == name) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.info.name;
  throw InvalidArgument("unknown suite '" + std::string(name) + "' (known: " + known + ")");
}

std::optional<std::string> replay_check(std::string_view name, const json& inst, const RunConfig& cfg) {
  if (name == "xi-oracle") return check_xi_oracle(set_from(inst), inst.at("n").get<std::uint32_t>(), cfg);
  if (name == "alpha-identity") {
    const auto a = set_from(inst);
    if (inst.value("kind", "identity") == "xi2") return check_xi2(a, cfg);
    return check_identity(a, inst.at("t").get<std::uint32_t>(), inst.at("x").get<std::uint32_t>());
  }
  if (name == "boundary-values")
    return check_boundary(set_from(inst), inst.at("ns").get<std::vector<std::uint32_t>>(),
                          inst.value("literal", false), cfg);
  if (name == "inequalities") return check_inequality(inst, cfg);
  if (name == "subgroup-lemma")
    return check_lemma(set_from(inst), inst.at("h").get<std::uint32_t>(), inst.value("seed", std::uint64_t{0}));
  if (name == "carry-extremality") return check_carry(inst.at("m").get<std::uint32_t>(), cfg);
  if (name == "digital-impact")
    return check_digsetteo_instance(set_from(inst), inst.at("n").get<std::uint32_t>(), cfg);
  if (name == "two-translate-cover") return check_corollary_instance(set_from(inst));
  if (name == "construction") return check_construction(inst.at("m").get<std::uint32_t>());
  if (name == "mu") return check_mu(inst.at("p").get<std::uint32_t>());
  if (name == "theorem-main") {
    if (inst.contains("thresholds")) return check_thresholds(inst.at("k").get<std::int64_t>());
    return check_theorem_instance(set_from(inst), inst.at("k").get<std::int64_t>(),
                                  inst.at("n").get<std::uint32_t>(), cfg);
  }
  if (name == "uniqueness") return check_uniqueness_instance(set_from(inst));
  if (name == "stable-components")
    return check_stable(inst.at("k").get<std::uint32_t>(), inst.at("q_limit").get<std::uint32_t>());
  find_suite(name);
  return std::nullopt;
}

}  // namespace

void to_json(json& j, const VerificationReport& r) {
  json ce = json::array();
  for (const auto& c : r.counterexamples)
    ce.push_back({{"description", c.description}, {"replay", c.replay}, {"instance", c.instance}});
  j = json{{"suite", r.suite},
           {"criterion", r.criterion},
           {"profile", r.profile},
           {"seed", r.seed},
           {"instance_count", r.instance_count},
           {"passed", r.passed()},
           {"counterexamples", ce},
           {"skipped", r.skipped},
           {"details", r.details}};
}

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> out = [] {
    std::vector<SuiteInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return out;
}

std::string suite_for_criterion(int criterion) {
  for (const auto& e : registry())
    if (e.info.criterion == criterion) return e.info.name;
  throw InvalidArgument("no suite for criterion " + std::to_string(criterion));
}

VerificationReport run_suite(std::string_view name, const RunConfig& cfg) {
  const auto& entry = find_suite(name);
  const auto start = std::chrono::steady_clock::now();
  auto r = entry.run(cfg, scale_for(cfg.profile));
  r.criterion = entry.info.criterion;
  r.seed = cfg.rng_seed;
  r.profile = std::string(to_string(cfg.profile));
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationReport replay_instance(std::string_view name, const json& instance, const RunConfig& cfg) {
  const auto& entry = find_suite(name);
  const auto start = std::chrono::steady_clock::now();
  auto r = report_for(entry.info.name, entry.info.criterion);
  r.seed = cfg.rng_seed;
  r.profile = "replay";
  Tally t{entry.info.name};
  try {
    t.check(instance, [&] { return replay_check(name, instance, cfg); });
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed instance for suite " + entry.info.name + ": " + e.what());
  }
  r.instance_count = t.count;
  r.counterexamples = std::move(t.found);
  r.skipped = std::move(t.skipped);
  r.details = {{"instance", instance}};
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<VerificationReport> verify_all(const RunConfig& cfg) {
  std::vector<VerificationReport> out;
  for (const auto& e : registry()) out.push_back(run_suite(e.info.name, cfg));
  return out;
}

int exit_code(const std::vector<VerificationReport>& reports) {
  bool skipped = false;
  for (const auto& r : reports) {
    if (!r.passed()) return 2;
    skipped = skipped || !r.skipped.empty();
  }
  return skipped ? 3 : 0;
}

}  // namespace zqadd
