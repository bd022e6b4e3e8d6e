#include "zqadd/report.hpp"

#include <charconv>

namespace zqadd {

namespace {

json pair_or_null(const std::optional<std::pair<std::uint32_t, std::uint32_t>>& p) {
  if (!p) return nullptr;
  return json::array({p->first, p->second});
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void to_json(json& j, const ResidueSet& s) {
  j = json{{"q", s.modulus()}, {"elements", s.elements()}};
}

void to_json(json& j, const Subgroup& h) {
  j = json{{"q", h.modulus()}, {"order", h.order()}, {"generator", h.generator()}};
}

void to_json(json& j, const KneserReport& r) {
  j = json{{"holds", r.holds}, {"period", r.period}, {"lhs", r.lhs}, {"rhs", r.rhs}};
}

void to_json(json& j, const NormalizedDifference& r) {
  j = json{{"input", r.input},
           {"q", r.modulus},
           {"matched_primes", r.matched_primes},
           {"value", r.value},
           {"divisor_part", r.divisor_part},
           {"coprime_part", r.coprime_part},
           {"zero_convention", r.zero_convention}};
}

void to_json(json& j, const SubgroupLemmaReport& r) {
  j = json{{"m", r.m},
           {"q", r.q},
           {"subgroup_order", r.subgroup_order},
           {"p", r.smallest_prime},
           {"max_coset_hit", r.max_coset_hit},
           {"coset_bound", r.coset_bound},
           {"subsets_examined", r.subsets_examined},
           {"subsets_exhaustive", r.subsets_exhaustive},
           {"expansion_bound", r.expansion_bound},
           {"expansion_violation", r.expansion_violation},
           {"sumset_with_subgroup", r.sumset_with_subgroup},
           {"gcd_bound", r.gcd_bound},
           {"sumset_ge_gcd", r.sumset_ge_gcd},
           {"gcd_ge_upper_line", r.gcd_ge_upper_line},
           {"upper_line_chain", r.upper_line_chain},
           {"gcd_ge_lower_line", r.gcd_ge_lower_line},
           {"all_hold", r.all_hold()},
           {"failures", r.failures()}};
}

void to_json(json& j, const ApDecomposition& d) {
  json prog = json::array();
  for (const auto& p : d.progressions)
    prog.push_back({{"start", p.start}, {"length", p.length}, {"end", d.last(p)}});
  j = json{{"set", d.base},
           {"difference", d.difference},
           {"full_cosets", d.full_cosets},
           {"progressions", prog},
           {"alpha", d.alpha()}};
}

void to_json(json& j, const UniquenessVerdict& v) {
  j = json{{"set", v.base},
           {"difference_set", v.difference_set},
           {"classification", std::string(to_string(v.classification))},
           {"affine_witness", pair_or_null(v.affine_witness)},
           {"hypotheses",
            {{"q_odd", v.q_odd},
             {"q_above_100", v.q_above_100},
             {"size_in_range", v.size_in_range},
             {"not_in_proper_coset", v.not_in_proper_coset},
             {"all", v.hypotheses_met()}}}};
}

void to_json(json& j, const StabilityReport& r) {
  j = json{{"k", r.k},
           {"optimal_differences", r.optimal_differences},
           {"status", std::string(to_string(r.status))},
           {"neighbours_checked", r.neighbours_checked},
           {"strict_reading", r.strict_reading}};
  if (r.witness)
    j["witness"] = {{"difference", r.witness->difference},
                    {"toggled", r.witness->toggled},
                    {"modified", r.witness->modified},
                    {"modified_alpha", r.witness->modified_alpha}};
  else
    j["witness"] = nullptr;
}

void to_json(json& j, const ImpactResult& r) {
  j = json{{"n", r.n},
           {"value", r.value},
           {"witness", r.witness},
           {"nodes_explored", r.nodes_explored},
           {"exact", r.exact},
           {"zero_in_witness", true}};
}

void to_json(json& j, const SidonReport& r) {
  j = json{{"is_sidon", r.is_sidon},
           {"violating_shift", r.violating_shift ? json(*r.violating_shift) : json(nullptr)},
           {"double_sum_size", r.double_sum_size}};
}

void to_json(json& j, const RuzsaReport& r) {
  j = json{{"m", r.m},     {"n", r.n},           {"lhs", r.lhs},
           {"rhs_num", r.rhs_num}, {"rhs_den", r.rhs_den}, {"holds", r.holds}};
}

void to_json(json& j, const PluenneckeReport& r) {
  j = json{{"beta", {r.beta_num, r.beta_den}},
           {"best_subset", r.best_subset},
           {"ratio", {r.ratio_num, r.ratio_den}},
           {"exact", r.exact},
           {"holds", r.holds}};
}

void to_json(json& j, const RangeBounds& r) {
  j = json{{"m", r.m},
           {"k", r.k},
           {"bound1", r.bound1},
           {"bound2", r.bound2},
           {"hypothesis_range_end", r.hypothesis_range_end},
           {"beta_max", r.beta_max},
           {"beta_below_sqrt2", r.beta_below_sqrt2},
           {"bound2_within_one", r.bound2_within_one},
           {"bound2_excludes_beyond", r.bound2_excludes_beyond}};
}

void to_json(json& j, const RangeThresholds& r) {
  j = json{{"k", r.k},
           {"beta_threshold", r.beta_threshold},
           {"stated_threshold", r.stated_threshold},
           {"strict_threshold", r.strict_threshold},
           {"horizon", r.horizon}};
}

void to_json(json& j, const TheoremMainReport& r) {
  json ce = json::array();
  for (const auto& c : r.counterexamples) ce.push_back({{"set", c.set}, {"n", c.n}, {"xi", c.xi}});
  j = json{{"m", r.m},
           {"q", r.q},
           {"k", r.k},
           {"threshold", r.threshold},
           {"range_end", r.range_end},
           {"sampled", r.sampled},
           {"hypothesis_met", r.hypothesis_met},
           {"vacuous", r.vacuous},
           {"counterexamples", ce},
           {"skipped", r.skipped},
           {"passed", r.passed()}};
}

void to_json(json& j, const DigitalSetWitness& w) {
  j = json{{"set", w.set}, {"m", w.m}, {"q", w.q}, {"residue_map", w.residue_map}};
}

void to_json(json& j, const PrimeConditionCheck& c) {
  j = json{{"m", c.m},
           {"q", c.q},
           {"same_primes", c.same_primes},
           {"strict_exponents", c.strict_exponents},
           {"accepted", c.accepted()}};
}

void to_json(json& j, const CarryStats& s) {
  j = json{{"set", s.digit_set.set},
           {"m", s.digit_set.m},
           {"distinct_carries", s.distinct_carries},
           {"distinct_count", s.distinct_carries.size()},
           {"nonzero_pair_count", s.nonzero_pair_count},
           {"carry_table", s.carry_table}};
}

void to_json(json& j, const CarryExtremalityReport& r) {
  j = json{{"m", r.m},
           {"sets", r.sets},
           {"min_distinct", r.min_distinct},
           {"distinct_minimizers", r.distinct_minimizers.size()},
           {"interval_attains", r.interval_attains},
           {"interval_orbit_size", r.interval_orbit_size},
           {"distinct_minimizers_are_orbit", r.distinct_minimizers_are_orbit},
           {"min_nonzero_pairs", r.min_nonzero_pairs},
           {"nonzero_minimizers", r.nonzero_minimizers.size()},
           {"balanced_attains", r.balanced_attains},
           {"balanced_orbit_size", r.balanced_orbit_size},
           {"nonzero_minimizers_are_orbit", r.nonzero_minimizers_are_orbit},
           {"passed", r.passed()}};
}

namespace {

json violations_json(const std::vector<WindowViolation>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back({{"set", x.set}, {"n", x.n}, {"xi", x.xi}});
  return a;
}

}  // namespace

void to_json(json& j, const DigsetteoReport& r) {
  j = json{{"m", r.m},
           {"q", r.q},
           {"prime_condition", r.prime_condition},
           {"guard_met", r.guard_met},
           {"exhaustive", r.exhaustive},
           {"examined", r.examined},
           {"two_ap_sets", r.two_ap_sets},
           {"checked", r.checked},
           {"oracle_checks", r.oracle_checks},
           {"violations", violations_json(r.violations)},
           {"oracle_mismatches", violations_json(r.oracle_mismatches)},
           {"skipped", r.skipped},
           {"passed", r.passed()}};
}

void to_json(json& j, const CorollaryReport& r) {
  json forms = json::array();
  for (const auto& s : r.solutions)
    forms.push_back({{"set", s.set}, {"x", s.x}, {"y", s.y}, {"normal_form", pair_or_null(s.normal_form)}});
  j = json{{"m", r.m},
           {"q", r.q},
           {"prime_condition", r.prime_condition},
           {"examined", r.examined},
           {"prefiltered", r.prefiltered},
           {"solution_count", r.solutions.size()},
           {"solutions", forms},
           {"non_interval", r.non_interval},
           {"literal_note", r.literal_note},
           {"passed", r.passed()}};
}

void to_json(json& j, const Xi23& x) {
  j = json{{"xi2", x.xi2}, {"xi3", x.xi3}, {"equal", x.equal()}, {"witness", pair_or_null(x.witness)}};
}

void to_json(json& j, const ChainFamily& f) {
  json chains = json::array();
  for (const auto& c : f.chains) {
    json ch = json::array();
    for (const auto& g : c) ch.push_back({{"start", g.start}, {"length", g.length}});
    chains.push_back(ch);
  }
  j = json{{"q", f.q},
           {"d1", f.d1},
           {"d2", f.d2},
           {"dilation", f.dilation},
           {"set", f.set},
           {"subgroup_order", f.subgroup_order},
           {"z", f.z},
           {"chains", chains},
           {"empty_cosets", f.empty_cosets},
           {"xi3", f.xi3},
           {"k", f.k},
           {"pair_is_witness", f.pair_is_witness},
           {"max_gap", f.max_gap},
           {"condition_i", f.condition_i},
           {"condition_ii", f.condition_ii},
           {"condition_iii", f.condition_iii},
           {"condition_iv", f.condition_iv},
           {"reconstructs", f.reconstructs},
           {"size_bound", f.size_bound},
           {"violations", f.violations},
           {"ok", f.ok()}};
}

void to_json(json& j, const Construction& s) {
  json chains = json::array();
  for (const auto& c : s.chains) {
    json iv = json::array();
    for (const auto& x : c.intervals) iv.push_back({x.lo, x.hi});
    chains.push_back({{"label", c.label}, {"offset", c.offset}, {"length", c.length}, {"intervals", iv}});
  }
  j = json{{"m", s.m},
           {"d", s.d},
           {"ground_max", s.ground_max},
           {"chains", chains},
           {"disjoint", s.disjoint},
           {"collisions", s.collisions},
           {"within_ground", s.within_ground},
           {"out_of_range", s.out_of_range},
           {"size", s.materialized.size()},
           {"closed_form_size", s.closed_form_size},
           {"density", s.density()}};
}

void to_json(json& j, const Projection& p) {
  j = json{{"p", p.p},
           {"in_short_interval", p.in_short_interval},
           {"image_size", p.image.size()},
           {"complement", p.complement},
           {"complement_size", p.complement.size()},
           {"complement_density", p.complement_density}};
}

void to_json(json& j, const MuRecord& r) {
  j = json{{"p", r.p},
           {"mu", r.mu},
           {"strategy", r.strategy == MuStrategy::exhaustive ? "exhaustive" : "bounded"},
           {"witnesses", r.witnesses},
           {"sets_examined", r.sets_examined},
           {"sqrt_bound", r.sqrt_bound},
           {"log4_bound", r.log4_bound},
           {"sqrt_bound_applies", r.sqrt_bound_applies},
           {"sqrt_bound_holds", r.sqrt_bound_holds},
           {"log4_bound_holds", r.log4_bound_holds},
           {"half_k_holds", r.half_k_holds},
           {"bounds_hold", r.bounds_hold()}};
}

void to_json(json& j, const MuTableRow& r) {
  j = json{{"kind", r.kind}, {"p", r.p}, {"size", r.size}, {"ratio", r.ratio}, {"note", r.note}};
}

}  // namespace zqadd
