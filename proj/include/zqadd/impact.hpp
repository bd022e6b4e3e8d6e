#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zqadd/residue_set.hpp"

namespace zqadd {

struct ImpactResult {
  std::uint32_t n = 0;
  std::size_t value = 0;
  ResidueSet witness;  // |witness| = n, 0 in witness, lexicographically least optimum
  std::uint64_t nodes_explored = 0;
  bool exact = false;
};

struct SearchLimits {
  std::uint64_t max_nodes = 200'000'000;
  double max_seconds = 0;  // 0 disables the wall-clock limit
};

// Exhaustive minimum of |A+B| over B ∋ 0 with |B| = n (translation
// invariance makes 0 ∈ B free). Throws BudgetExceeded when C(q-1, n-1) > cap.
ImpactResult xi_naive(const ResidueSet& a, std::uint32_t n,
                      std::uint64_t cap = 50'000'000);

// Depth-first branch and bound over increasing candidates. Prunes when the
// partial sumset already reaches the incumbent and stops early once the
// incumbent meets max(|A|, n). On limit exhaustion returns the incumbent
// with exact = false.
ImpactResult xi_search(const ResidueSet& a, std::uint32_t n, const SearchLimits& limits = {});

struct SidonReport {
  bool is_sidon = false;
  std::optional<std::uint32_t> violating_shift;  // least t != 0 with |B ∩ (B+t)| >= 2
  std::size_t double_sum_size = 0;                // |2B|
};

SidonReport sidon_check(const ResidueSet& b);

struct RuzsaReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t lhs = 0;           // |A+B|
  std::uint64_t rhs_num = 0;     // m n^2
  std::uint64_t rhs_den = 0;     // m + n - 1
  bool holds = false;            // lhs * rhs_den >= rhs_num
};

// Requires B Sidon; throws InvalidArgument otherwise.
RuzsaReport ruzsa_bound_check(const ResidueSet& a, const ResidueSet& b);

struct PluenneckeReport {
  std::uint64_t beta_num = 0;  // |A+B|
  std::uint64_t beta_den = 0;  // |A|
  ResidueSet best_subset;
  std::uint64_t ratio_num = 0;  // |A'+2B|
  std::uint64_t ratio_den = 0;  // |A'|
  bool exact = false;
  bool holds = false;  // ratio <= beta^2, compared on integers
};

// Exact minimisation of |A'+2B|/|A'| over nonempty A' ⊆ A when |A| <= cap
// (ties broken towards the lexicographically least subset); otherwise a
// seeded randomised descent with exact = false.
PluenneckeReport pluennecke_subset(const ResidueSet& a, const ResidueSet& b,
                                   std::size_t cap = 16, std::uint64_t seed = 0);

struct RangeBounds {
  std::int64_t m = 0;
  std::int64_t k = 0;
  double bound1 = 0;  // root of (m-1)n^2 - (2m+k-2)n - (m-1)(m+k-1)
  double bound2 = 0;  // root of (m-2)n^2 - (3m+4k-4)n - (2m+2(k-1)(2m+k-1))
  double hypothesis_range_end = 0;  // (3 + sqrt(16k+1)) / 2
  // Largest ratio (m + n + k - 1)/m for integer n <= bound1; must be < sqrt 2.
  double beta_max = 0;
  bool beta_below_sqrt2 = false;
  bool bound2_within_one = false;    // bound2 <= end + 1
  bool bound2_excludes_beyond = false;  // floor(bound2) <= floor(end)
};

RangeBounds range_bounds(std::int64_t m, std::int64_t k);

struct RangeThresholds {
  std::int64_t k = 0;
  std::int64_t beta_threshold = 0;    // first m from which beta_below_sqrt2 holds
  std::int64_t stated_threshold = 0;   // first m from which bound2_within_one holds
  std::int64_t strict_threshold = 0;  // first m from which bound2_excludes_beyond holds
  std::int64_t horizon = 0;           // thresholds are checked for all m up to here
};

// Each threshold is the least m >= 3 such that the property holds for every
// m' in [m, horizon].
RangeThresholds range_thresholds(std::int64_t k, std::int64_t horizon = 2000);

struct TheoremMainOptions {
  std::uint64_t samples = 200;
  std::uint64_t seed = 0;
  std::uint32_t window_hi = 5;
  std::uint64_t node_budget = 50'000'000;
  unsigned workers = 1;
};

struct TheoremMainReport {
  std::int64_t m = 0;
  std::int64_t q = 0;
  std::int64_t k = 0;
  std::int64_t threshold = 0;  // least admissible m from range_thresholds
  std::uint32_t range_end = 0;  // floor((3 + sqrt(16k+1)) / 2)
  std::uint64_t sampled = 0;
  std::uint64_t hypothesis_met = 0;
  std::uint64_t vacuous = 0;
  struct Counterexample {
    ResidueSet set;
    std::uint32_t n = 0;
    std::size_t xi = 0;
  };
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> skipped;
  bool passed() const { return counterexamples.empty() && skipped.empty(); }
};

// For sampled digital sets with xi(n) >= n+m+k on [2, range_end], checks
// xi(n) >= n+m+k on [2, min(window_hi, q-m-k-1)]. Requires the prime
// condition and m >= threshold.
TheoremMainReport verify_theorem_main(std::int64_t m, std::int64_t q, std::int64_t k,
                                      const TheoremMainOptions& opt);

}  // namespace zqadd
