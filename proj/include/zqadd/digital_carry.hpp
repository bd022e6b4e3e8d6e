#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zqadd/residue_set.hpp"

namespace zqadd {

// A digital set: |A| = m, m | q and A is a complete residue system mod m.
struct DigitalSetWitness {
  ResidueSet set;
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> residue_map;  // residue_map[r] = the a in A with a = r (mod m)
};

std::optional<DigitalSetWitness> is_digital(const ResidueSet& a);

struct PrimeConditionCheck {
  std::uint64_t m = 0;
  std::uint64_t q = 0;
  bool same_primes = false;
  bool strict_exponents = false;  // v_p(q) > v_p(m) for every shared prime
  bool accepted() const { return same_primes && strict_exponents; }
};

PrimeConditionCheck prime_condition(std::uint64_t m, std::uint64_t q);

// Carries are classes in Z_m (the quotient (a1+a2-a)/m is only defined mod m
// in Z_{m^2}); each is reported by its representative in (-m/2, m/2].
struct CarryStats {
  DigitalSetWitness digit_set;
  std::vector<int> carry_table;  // row-major over residue_map order, m*m entries
  std::vector<int> distinct_carries;  // sorted
  std::size_t nonzero_pair_count = 0;  // ordered pairs
};

CarryStats carry_stats(const DigitalSetWitness& w);

// [0, m-1] and the lift of (-m/2, m/2] to Z_q.
ResidueSet digit_interval(std::uint32_t m, std::uint32_t q);
ResidueSet balanced_digits(std::uint32_t m, std::uint32_t q);

// (q/m)^m saturating.
std::uint64_t digital_set_count(std::uint32_t m, std::uint32_t q);

// Visits all digital sets in lexicographic order of the representative
// choice vector (residue 0 most significant). fn returns false to stop.
// Throws BudgetExceeded when the count exceeds cap.
void enumerate_digital_sets(std::uint32_t m, std::uint32_t q,
                            const std::function<bool(const DigitalSetWitness&)>& fn,
                            std::uint64_t cap = 100'000'000);

// The index-th digital set in the same order (index < digital_set_count).
DigitalSetWitness digital_set_at(std::uint32_t m, std::uint32_t q, std::uint64_t index);

struct CarryExtremalityReport {
  std::uint32_t m = 0;
  std::uint64_t sets = 0;

  std::size_t min_distinct = 0;
  std::vector<ResidueSet> distinct_minimizers;
  bool interval_attains = false;
  std::size_t interval_orbit_size = 0;  // orbit of [0,m-1] under x -> u x + m e
  bool distinct_minimizers_are_orbit = false;

  std::size_t min_nonzero_pairs = 0;
  std::vector<ResidueSet> nonzero_minimizers;
  bool balanced_attains = false;
  std::size_t balanced_orbit_size = 0;  // orbit of (-m/2, m/2] under x -> u x
  bool nonzero_minimizers_are_orbit = false;

  bool passed() const {
    return interval_attains && distinct_minimizers_are_orbit && balanced_attains &&
           nonzero_minimizers_are_orbit;
  }
};

CarryExtremalityReport verify_carry_extremality(std::uint32_t m, std::uint64_t cap = 10'000'000);

// Is A = u*[0, m-1] + s for some unit u? Returns (c, d) with c*A + d = [0, m-1],
// least c first.
std::optional<std::pair<std::uint32_t, std::uint32_t>> interval_normal_form(const ResidueSet& a);

struct WindowViolation {
  ResidueSet set;
  std::uint32_t n = 0;
  std::size_t xi = 0;
  bool exact = true;
};

struct DigsetteoOptions {
  std::uint64_t samples = 500;  // 0: every digital set
  std::uint64_t seed = 0;
  std::uint32_t window_lo = 2;
  std::uint32_t window_hi = 4;
  std::uint32_t oracle_up_to = 3;  // cross-check xi_search against xi_naive for n <= this
  std::uint64_t node_budget = 50'000'000;
  unsigned workers = 1;
};

struct DigsetteoReport {
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  bool prime_condition = false;
  bool guard_met = false;  // m > 15; below it outcomes are observations only
  bool exhaustive = false;
  std::uint64_t examined = 0;
  std::uint64_t two_ap_sets = 0;  // min alpha <= 2, outside the claim
  std::uint64_t checked = 0;
  std::uint64_t oracle_checks = 0;
  std::vector<WindowViolation> violations;  // xi(n) <= m + n with min alpha >= 3
  std::vector<WindowViolation> oracle_mismatches;
  std::vector<std::string> skipped;
  bool passed() const {
    return prime_condition && oracle_mismatches.empty() && (!guard_met || violations.empty()) &&
           skipped.empty();
  }
};

// Samples are drawn uniformly by index with CounterRng(seed, i).
DigsetteoReport verify_digsetteo(std::uint32_t m, std::uint32_t q, const DigsetteoOptions& opt);

struct CorollarySolution {
  ResidueSet set;
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> normal_form;  // (c, d)
};

struct CorollaryReport {
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  bool prime_condition = false;
  std::uint64_t examined = 0;
  std::uint64_t prefiltered = 0;  // |2A| <= 2m
  std::vector<CorollarySolution> solutions;
  std::vector<ResidueSet> non_interval;  // solutions with no interval normal form
  std::string literal_note;
  bool passed() const { return prime_condition && non_interval.empty(); }
};

// Every digital set with 2A ⊆ {x,y}+A for some x, y (least x, then least y
// recorded) and its affine interval normal form.
CorollaryReport verify_digsetcorollary(std::uint32_t m, std::uint32_t q, unsigned workers = 1,
                                       std::uint64_t cap = 10'000'000);

// Least (x, y) with 2A ⊆ {x,y}+A.
std::optional<std::pair<std::uint32_t, std::uint32_t>> two_translate_cover(const ResidueSet& a);

}  // namespace zqadd
