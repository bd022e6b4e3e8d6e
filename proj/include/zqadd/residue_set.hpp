#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zqadd {

using Word = std::uint64_t;

// Word-parallel kernels over q-bit circular masks. Bits at positions >= q
// are always zero.
namespace bits {

inline std::size_t word_count(std::uint32_t q) { return (q + 63) / 64; }

// dst |= rot(src, shift), where rot moves element e to (e + shift) mod q.
void rotate_or(std::span<const Word> src, std::span<Word> dst, std::uint32_t q,
               std::uint32_t shift);

std::size_t popcount(std::span<const Word> w);

// |rot(src, shift) \ src|
std::size_t rotated_excess(std::span<const Word> src, std::uint32_t q, std::uint32_t shift,
                           std::span<Word> scratch);

}  // namespace bits

// A subset of Z_q stored as a dense membership mask.
class ResidueSet {
 public:
  ResidueSet() = default;
  explicit ResidueSet(std::uint32_t q);
  ResidueSet(std::uint32_t q, std::initializer_list<std::uint32_t> elems);

  static ResidueSet from_elements(std::uint32_t q, std::span<const std::uint32_t> elems);
  // Reduces arbitrary integers mod q.
  static ResidueSet from_integers(std::uint32_t q, std::span<const std::int64_t> values);
  static ResidueSet full(std::uint32_t q);
  // For q <= 64: bit i of mask is residue i.
  static ResidueSet from_mask(std::uint32_t q, std::uint64_t mask);

  std::uint32_t modulus() const { return q_; }
  std::size_t size() const { return bits::popcount(words_); }
  bool empty() const;
  bool is_full() const { return size() == q_; }
  bool contains(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }

  void insert(std::uint32_t x);
  void erase(std::uint32_t x);
  void toggle(std::uint32_t x);

  std::vector<std::uint32_t> elements() const;
  std::uint32_t min_element() const;  // requires nonempty

  ResidueSet translated(std::uint32_t t) const;  // A + t
  ResidueSet dilated(std::uint32_t c) const;     // cA (any c; not necessarily a unit)
  ResidueSet negated() const;                    // -A
  ResidueSet complement() const;

  bool is_subset_of(const ResidueSet& other) const;
  std::size_t intersection_size(const ResidueSet& other) const;

  ResidueSet& operator|=(const ResidueSet& o);
  ResidueSet& operator&=(const ResidueSet& o);
  ResidueSet& operator^=(const ResidueSet& o);
  ResidueSet& operator-=(const ResidueSet& o);
  friend ResidueSet operator|(ResidueSet a, const ResidueSet& b) { return a |= b; }
  friend ResidueSet operator&(ResidueSet a, const ResidueSet& b) { return a &= b; }
  friend ResidueSet operator^(ResidueSet a, const ResidueSet& b) { return a ^= b; }
  friend ResidueSet operator-(ResidueSet a, const ResidueSet& b) { return a -= b; }

  bool operator==(const ResidueSet& o) const = default;
  // Orders by modulus, then by the sorted element list lexicographically.
  std::strong_ordering operator<=>(const ResidueSet& o) const;

  std::span<const Word> words() const { return words_; }
  std::span<Word> mutable_words() { return words_; }
  std::uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

  // "q=7;{0,1,3}"
  std::string to_string() const;

 private:
  void check_modulus(const ResidueSet& o) const;

  std::uint32_t q_ = 0;
  std::vector<Word> words_;
};

// Parses "q=<int>;{e1,e2,...}", a JSON document {"q":..,"elements":[..]}, or a
// bare comma list (which then needs the modulus from default_q). Whitespace is
// ignored. Throws InvalidArgument with a message naming the problem.
ResidueSet parse_residue_set(std::string_view text, std::uint32_t default_q = 0);

}  // namespace zqadd
