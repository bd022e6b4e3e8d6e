#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "zqadd/residue_set.hpp"

namespace zqadd {

struct Progression {
  std::uint32_t start = 0;
  std::uint32_t length = 0;
  bool operator==(const Progression&) const = default;
};

// A split into the full cosets of <t> contained in A and the maximal
// t-progressions in the remaining cosets.
struct ApDecomposition {
  ResidueSet base;
  std::uint32_t difference = 0;
  std::vector<std::uint32_t> full_cosets;  // least element of each coset
  std::vector<Progression> progressions;   // sorted by start

  std::size_t alpha() const { return progressions.size(); }
  ResidueSet reassemble() const;
  std::uint32_t last(const Progression& p) const;
};

ApDecomposition decompose(const ResidueSet& a, std::uint32_t t);

// alpha_t(A) = |(A+t) \ A|.
std::size_t alpha(const ResidueSet& a, std::uint32_t t);

// Entry t holds alpha_t(A) for t in [1, q-1]; entry 0 is unused (0).
std::vector<std::size_t> alpha_profile(const ResidueSet& a);
std::size_t min_alpha(const ResidueSet& a);

// Nonzero residues in tie-break order: smallest seminorm, then smallest value.
std::vector<std::uint32_t> differences_by_seminorm(std::uint32_t q);

// Differences attaining min alpha, in tie-break order.
std::vector<std::uint32_t> optimal_differences(const ResidueSet& a);

std::vector<std::pair<std::uint32_t, ApDecomposition>> find_multi_decompositions(
    const ResidueSet& a);

// True iff |A ∩ (H+t)| < |H|/2 for every proper nontrivial subgroup H and t.
bool coset_density_ok(const ResidueSet& a);

enum class UniquenessClass {
  unique_pm_d,
  exception_interval_plus_point,
  exception_point_plus_interval,
  other,
};
std::string_view to_string(UniquenessClass c);

struct UniquenessVerdict {
  ResidueSet base;
  std::vector<std::uint32_t> difference_set;  // x with |A+{0,x}| = |A|+2
  UniquenessClass classification = UniquenessClass::other;
  // For the exceptional families: scale c and shift s with c*A + s equal to
  // the normal form [0, L-1] ∪ {L+1} (or {0} ∪ [2, L+1]).
  std::optional<std::pair<std::uint32_t, std::uint32_t>> affine_witness;

  bool q_odd = false;
  bool q_above_100 = false;
  bool size_in_range = false;  // 4 < |A| < q-4
  bool not_in_proper_coset = false;
  bool hypotheses_met() const { return q_odd && q_above_100 && size_in_range && not_in_proper_coset; }
};

// Requires min alpha = 2 and |A| > 2.
UniquenessVerdict check_uniqueness(const ResidueSet& a);

// True iff A lies in a single coset of some proper nontrivial subgroup.
bool contained_in_proper_coset(const ResidueSet& a);

enum class StabilityStatus { stable, unstable, indeterminate };
std::string_view to_string(StabilityStatus s);

struct StabilityReport {
  std::size_t k = 0;
  std::vector<std::uint32_t> optimal_differences;
  StabilityStatus status = StabilityStatus::indeterminate;
  bool stable() const { return status == StabilityStatus::stable; }
  struct Witness {
    std::uint32_t difference = 0;
    std::vector<std::uint32_t> toggled;  // the symmetric difference with A
    ResidueSet modified;
    std::size_t modified_alpha = 0;
  };
  std::optional<Witness> witness;
  std::uint64_t neighbours_checked = 0;
  bool strict_reading = false;
};

// Enumerates every Ã with |A Δ Ã| <= k (or, with strict_reading, at most k
// removals and at most k additions) for every optimal difference. Stops with
// `indeterminate` if the neighbourhood count would exceed `budget`.
StabilityReport stability(const ResidueSet& a, bool strict_reading = false,
                          std::uint64_t budget = 50'000'000);

// [0, 2k-1] ∪ ⋃_{i=1}^{k-1} [i q/k + i, i q/k + k+1+i]; requires k | q.
ResidueSet multi_component_family(std::uint32_t k, std::uint32_t q);

struct MultiComponentInstance {
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  ResidueSet set;
  StabilityReport report;
};

// Scans q = k(k+3), k(k+4), ... up to q_limit for the first member of the
// family that has exactly k stable components.
std::optional<MultiComponentInstance> find_stable_multi_component(std::uint32_t k,
                                                                  std::uint32_t q_limit);

}  // namespace zqadd
