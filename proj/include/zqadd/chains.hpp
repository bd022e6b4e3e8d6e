#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zqadd/residue_set.hpp"

namespace zqadd {

struct Xi23 {
  std::size_t xi2 = 0;
  std::size_t xi3 = 0;
  // First pair (d1, d2) in seminorm order with |A+{0,d1,d2}| = xi2, if any.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
  bool equal() const { return xi2 == xi3; }
};

// xi2 from the alpha profile, xi3 from the full (d1, d2) pair sweep.
Xi23 xi2_xi3(const ResidueSet& a);
std::optional<std::pair<std::uint32_t, std::uint32_t>> xi2_eq_xi3(const ResidueSet& a);
// Same predicate as xi2_xi3(a).equal(), with early exit.
bool has_xi2_eq_xi3(const ResidueSet& a);

// A run {start, start+d1, ..., start+(length-1)d1} of the complement.
struct Gap {
  std::uint32_t start = 0;
  std::uint32_t length = 0;
  bool operator==(const Gap&) const = default;
};

struct ChainFamily {
  std::uint32_t q = 0;
  std::uint32_t d1 = 0;        // after normalisation; d1 | q
  std::uint32_t d2 = 0;
  std::uint32_t dilation = 1;  // the recorded set is dilation * A
  ResidueSet set;              // the normalised set
  std::uint32_t subgroup_order = 0;
  std::uint32_t z = 0;                        // cosets of <d1> meeting the set
  std::vector<std::vector<Gap>> chains;       // each in increasing size
  std::vector<std::uint32_t> empty_cosets;    // cosets wholly outside the set
  std::size_t xi3 = 0;
  std::size_t k = 0;                          // xi3 - |A|
  bool pair_is_witness = false;  // A+{0,d1,d2} = A+{0,d1} = A+{0,d2} = A+{d1,d2}
  std::size_t max_gap = 0;
  bool condition_i = false;
  bool condition_ii = false;
  bool condition_iii = false;
  bool condition_iv = false;
  bool reconstructs = false;
  bool size_bound = false;  // |A| >= z|H| - k(k+1)/2
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Normalises d1 to a divisor of q (dilating A and d2 accordingly), splits the
// complement inside occupied cosets of <d1> into maximal gaps and links them
// by G -> (G - d2) ∩ A^c. Every theorem condition is evaluated; failures are
// listed by name in `violations`.
ChainFamily extract_chain_structure(const ResidueSet& a, std::uint32_t d1, std::uint32_t d2);

struct IntegerInterval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct ChainLayout {
  std::string label;      // "C0" or "B(l=..,i=..)"
  std::int64_t offset = 0;
  std::int64_t length = 0;                 // number of intervals, l in G_l
  std::vector<IntegerInterval> intervals;     // before removing first elements
  std::vector<IntegerInterval> trimmed;       // after, empty ones dropped
};

struct Construction {
  std::uint32_t m = 0;
  std::int64_t d = 0;              // 2^m
  std::int64_t ground_max = 0;     // 2^{2m}
  std::vector<ChainLayout> chains;
  bool disjoint = false;  // untrimmed intervals pairwise disjoint
  std::vector<std::string> collisions;
  bool within_ground = false;  // B inside [0, 2^{2m}]; B is only materialized then
  std::vector<std::string> out_of_range;
  std::vector<std::uint32_t> materialized;  // sorted elements of B
  std::uint64_t closed_form_size = 0;
  double density() const;  // |B| / 2^{2m}
};

// Materialises B for 2 <= m <= max_m. Interval collisions are recorded and
// make `disjoint` false.
Construction build_construction(std::uint32_t m, std::uint32_t max_m = 12);

struct Projection {
  std::uint32_t p = 0;
  bool in_short_interval = false;  // p <= 2^{2m} + 2^{21m/20}
  ResidueSet image;                // image of B in Z_p
  ResidueSet complement;           // A = Z_p \ image
  double complement_density = 0;
};

Projection project_to_prime(const Construction& cons);

enum class MuStrategy { exhaustive, bounded };

struct MuRecord {
  std::uint32_t p = 0;
  std::uint32_t mu = 0;
  MuStrategy strategy = MuStrategy::exhaustive;
  std::vector<ResidueSet> witnesses;  // affine canonical forms, sorted
  std::uint64_t sets_examined = 0;
  double sqrt_bound = 0;  // sqrt(8p+25) - 5
  double log4_bound = 0;
  bool sqrt_bound_applies = false;  // mu < 2p/3
  bool sqrt_bound_holds = false;
  bool log4_bound_holds = false;
  bool half_k_holds = false;  // k <= |A|/2 for every witness with |A| < 2p/3
  bool bounds_hold() const {
    return log4_bound_holds && half_k_holds && (!sqrt_bound_applies || sqrt_bound_holds);
  }
};

// Exhaustive: all 2^p subsets (p <= exhaustive_cap). Bounded: sizes 1, 2, ...
// with 0 in A until the first hit.
MuRecord compute_mu(std::uint32_t p, MuStrategy strategy, std::uint32_t exhaustive_cap = 19);

struct MuTableRow {
  std::string kind;  // "exact", "construction", "ceiling"
  std::uint32_t p = 0;
  std::uint32_t size = 0;
  double ratio = 0;
  std::string note;
};

std::vector<MuTableRow> mu_density_table(const std::vector<std::uint32_t>& primes,
                                         const std::vector<std::uint32_t>& construction_ms);

// A' x {0} inside Z_{q'} x Z_{q''} = Z_{q' q''} via the CRT.
ResidueSet crt_embed(const ResidueSet& a, std::uint32_t other_modulus);

}  // namespace zqadd
