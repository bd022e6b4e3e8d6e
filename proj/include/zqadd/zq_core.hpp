#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zqadd/residue_set.hpp"

namespace zqadd {

// The unique subgroup of Z_q of a given order, held by its canonical
// generator q/order.
class Subgroup {
 public:
  Subgroup(std::uint32_t q, std::uint32_t order);

  std::uint32_t modulus() const { return q_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t generator() const { return q_ / order_; }
  bool trivial() const { return order_ == 1; }
  bool whole() const { return order_ == q_; }
  bool contains(std::uint32_t x) const { return x % generator() == 0; }
  ResidueSet elements() const;

  bool operator==(const Subgroup&) const = default;

 private:
  std::uint32_t q_;
  std::uint32_t order_;
};

// Proper nontrivial subgroups in increasing order.
std::vector<Subgroup> proper_subgroups(std::uint32_t q);

// x -> scale * x + shift with gcd(scale, q) = 1.
class AffineMap {
 public:
  AffineMap(std::uint32_t q, std::uint32_t scale, std::uint32_t shift);

  std::uint32_t modulus() const { return q_; }
  std::uint32_t scale() const { return scale_; }
  std::uint32_t shift() const { return shift_; }
  std::uint32_t operator()(std::uint32_t x) const;
  ResidueSet apply(const ResidueSet& a) const;
  AffineMap inverse() const;

 private:
  std::uint32_t q_;
  std::uint32_t scale_;
  std::uint32_t shift_;
};

// Smallest image of A (by sorted element list) over all affine maps with
// invertible scale.
ResidueSet affine_canonical_form(const ResidueSet& a);

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);

// Image of the integer interval [a, b'] in Z_q, where b' is the least integer
// >= a congruent to b.
ResidueSet interval(std::int64_t a, std::int64_t b, std::uint32_t q);

std::uint32_t seminorm(std::uint32_t x, std::uint32_t q);

// {t : S + t = S}. Throws InvalidArgument on empty S.
Subgroup period_group(const ResidueSet& s);

struct KneserReport {
  bool holds = false;
  Subgroup period{1, 1};
  std::size_t lhs = 0;  // |A+B|
  std::size_t rhs = 0;  // |A+H| + |B+H| - |H|
};

KneserReport kneser_check(const ResidueSet& a, const ResidueSet& b);

struct NormalizedDifference {
  std::int64_t input = 0;
  std::uint32_t modulus = 0;
  std::vector<std::uint64_t> matched_primes;  // primes p | q with v_p(a) = v_p(q)
  std::uint64_t value = 0;                    // a' = a1 * a2, a' = a (mod q)
  std::uint64_t divisor_part = 0;             // a1 | q
  std::uint64_t coprime_part = 0;             // gcd(a2, q) = 1
  bool zero_convention = false;               // a = 0 (mod q): a' = q, a1 = q, a2 = 1
};

NormalizedDifference normalize_difference(std::int64_t a, std::uint32_t q);

struct SubgroupLemmaReport {
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  std::uint32_t subgroup_order = 0;
  std::uint64_t smallest_prime = 0;

  // (i): max_t |A ∩ (H+t)| * p <= min(m, |H|)
  std::size_t max_coset_hit = 0;
  bool coset_bound = false;
  // (ii): |A'+H| >= p|A'| over the examined nonempty subsets
  std::size_t subsets_examined = 0;
  bool subsets_exhaustive = false;
  bool expansion_bound = false;
  std::vector<std::uint32_t> expansion_violation;
  // (iii): |A+H| >= (m|H|, q) >= p max(m,|H|) >= (p-1)m + |H|, and
  //        (m|H|, q) >= min(q, 4m/3 + |H|)
  std::size_t sumset_with_subgroup = 0;
  std::uint64_t gcd_bound = 0;
  bool sumset_ge_gcd = false;
  bool gcd_ge_upper_line = false;
  bool upper_line_chain = false;
  bool gcd_ge_lower_line = false;

  bool all_hold() const {
    return coset_bound && expansion_bound && sumset_ge_gcd && gcd_ge_upper_line &&
           upper_line_chain && gcd_ge_lower_line;
  }
  std::vector<std::string> failures() const;
};

// Checks the three subgroup inequalities for a digital set A whose (m, q)
// satisfies the prime condition. Subsets A' are enumerated exhaustively when
// |A| <= exhaustive_cap, otherwise `samples` random subsets are drawn from
// `seed`. Throws InvalidArgument on precondition violations.
SubgroupLemmaReport subgroup_lemma_check(const ResidueSet& a, const Subgroup& h,
                                         std::size_t exhaustive_cap = 16,
                                         std::size_t samples = 256, std::uint64_t seed = 0);

}  // namespace zqadd
