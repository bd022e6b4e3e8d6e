#pragma once

// Brute-force reference implementations for the unit tests. Everything here
// works on plain element vectors; none of it touches the bitmask kernels.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "zqadd/residue_set.hpp"

namespace oracle {

using Elems = std::vector<std::uint32_t>;

// splitmix64, for the property-test generators.
struct Gen {
  std::uint64_t state;
  explicit Gen(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next() % n); }
  std::uint32_t between(std::uint32_t lo, std::uint32_t hi) { return lo + below(hi - lo + 1); }
  Elems subset(std::uint32_t q) {
    const auto density = below(101);
    Elems out;
    for (std::uint32_t x = 0; x < q; ++x)
      if (below(100) < density) out.push_back(x);
    return out;
  }
  Elems nonempty_subset(std::uint32_t q) {
    Elems out;
    while (out.empty()) out = subset(q);
    return out;
  }
};

inline Elems from_mask(std::uint32_t q, std::uint64_t mask) {
  Elems out;
  for (std::uint32_t x = 0; x < q; ++x)
    if ((mask >> x) & 1U) out.push_back(x);
  return out;
}

inline zqadd::ResidueSet rs(std::uint32_t q, const Elems& e) { return zqadd::ResidueSet::from_elements(q, e); }

inline Elems sumset(const Elems& a, const Elems& b, std::uint32_t q) {
  std::set<std::uint32_t> s;
  for (auto x : a)
    for (auto y : b) s.insert((x + y) % q);
  return {s.begin(), s.end()};
}

inline Elems translate(const Elems& a, std::uint32_t t, std::uint32_t q) {
  Elems out;
  for (auto x : a) out.push_back((x + t) % q);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t alpha(const Elems& a, std::uint32_t t, std::uint32_t q) {
  std::set<std::uint32_t> in(a.begin(), a.end());
  std::size_t n = 0;
  for (auto x : a)
    if (!in.count((x + t) % q)) ++n;
  return n;
}

// min |A+B| over every B with |B| = n (no translation reduction).
inline std::size_t xi(const Elems& a, std::uint32_t n, std::uint32_t q) {
  if (n == 0 || a.empty()) return 0;
  std::size_t best = q;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcountll(mask)) != n) continue;
    best = std::min(best, sumset(a, from_mask(q, mask), q).size());
  }
  return best;
}

inline std::uint32_t period_order(const Elems& s, std::uint32_t q) {
  std::uint32_t n = 0;
  for (std::uint32_t t = 0; t < q; ++t)
    if (translate(s, t, q) == s) ++n;
  return n;
}

inline std::uint32_t gcd(std::uint32_t a, std::uint32_t b) { return std::gcd(a, b); }

inline std::vector<std::uint32_t> units(std::uint32_t q) {
  std::vector<std::uint32_t> u;
  for (std::uint32_t c = 1; c < q; ++c)
    if (gcd(c, q) == 1) u.push_back(c);
  if (q == 1) u.push_back(0);
  return u;
}

// Is A = c*[0, m-1] + d for some unit c and shift d?
inline bool affine_interval(const Elems& a, std::uint32_t q) {
  const auto m = static_cast<std::uint32_t>(a.size());
  for (auto c : units(q))
    for (std::uint32_t d = 0; d < q; ++d) {
      Elems img;
      for (std::uint32_t i = 0; i < m; ++i) img.push_back((c * i + d) % q);
      std::sort(img.begin(), img.end());
      if (img == a) return true;
    }
  return false;
}

inline bool sidon(const Elems& b, std::uint32_t q) {
  std::multiset<std::uint32_t> diffs;
  for (auto x : b)
    for (auto y : b)
      if (x != y) diffs.insert((x + q - y) % q);
  for (auto d : diffs)
    if (diffs.count(d) > 1) return false;
  return true;
}

}  // namespace oracle
