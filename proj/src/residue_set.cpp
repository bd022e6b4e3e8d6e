#include "zqadd/residue_set.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <set>

#include <json.hpp>

#include "zqadd/error.hpp"

namespace zqadd {

namespace bits {

namespace {

Word tail_mask(std::uint32_t q) {
  const unsigned r = q & 63;
  return r == 0 ? ~Word{0} : (Word{1} << r) - 1;
}

}  // namespace

void rotate_or(std::span<const Word> src, std::span<Word> dst, std::uint32_t q,
               std::uint32_t shift) {
  const std::size_t nw = src.size();
  if (nw == 0) return;
  shift %= q;
  if (shift == 0) {
    for (std::size_t i = 0; i < nw; ++i) dst[i] |= src[i];
    return;
  }
  if (nw == 1) {
    const Word w = src[0];
    dst[0] |= ((w << shift) | (w >> (q - shift))) & tail_mask(q);
    return;
  }
  // Low part: bits e < q - shift move up by shift.
  {
    const std::size_t ws = shift >> 6;
    const unsigned bs = shift & 63;
    for (std::size_t i = ws; i < nw; ++i) {
      Word v = src[i - ws] << bs;
      if (bs && i > ws) v |= src[i - ws - 1] >> (64 - bs);
      dst[i] |= v;
    }
    dst[nw - 1] &= tail_mask(q);
  }
  // High part: bits e >= q - shift wrap down by q - shift.
  {
    const std::uint32_t r = q - shift;
    const std::size_t ws = r >> 6;
    const unsigned bs = r & 63;
    for (std::size_t i = 0; i + ws < nw; ++i) {
      const std::size_t j = i + ws;
      Word v = src[j] >> bs;
      if (bs && j + 1 < nw) v |= src[j + 1] << (64 - bs);
      dst[i] |= v;
    }
  }
}

std::size_t popcount(std::span<const Word> w) {
  std::size_t c = 0;
  for (Word x : w) c += std::popcount(x);
  return c;
}

std::size_t rotated_excess(std::span<const Word> src, std::uint32_t q, std::uint32_t shift,
                           std::span<Word> scratch) {
  std::fill(scratch.begin(), scratch.begin() + src.size(), 0);
  rotate_or(src, scratch, q, shift);
  std::size_t c = 0;
  for (std::size_t i = 0; i < src.size(); ++i) c += std::popcount(scratch[i] & ~src[i]);
  return c;
}

}  // namespace bits

ResidueSet::ResidueSet(std::uint32_t q) : q_(q), words_(bits::word_count(q), 0) {
  if (q == 0) throw InvalidArgument("modulus must be positive");
}

ResidueSet::ResidueSet(std::uint32_t q, std::initializer_list<std::uint32_t> elems)
    : ResidueSet(q) {
  for (auto e : elems) insert(e);
}

ResidueSet ResidueSet::from_elements(std::uint32_t q, std::span<const std::uint32_t> elems) {
  ResidueSet s(q);
  for (auto e : elems) s.insert(e);
  return s;
}

ResidueSet ResidueSet::from_integers(std::uint32_t q, std::span<const std::int64_t> values) {
  ResidueSet s(q);
  for (auto v : values) {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    if (r < 0) r += q;
    s.insert(static_cast<std::uint32_t>(r));
  }
  return s;
}

ResidueSet ResidueSet::full(std::uint32_t q) {
  ResidueSet s(q);
  std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
  s.words_.back() &= bits::tail_mask(q);
  return s;
}

ResidueSet ResidueSet::from_mask(std::uint32_t q, std::uint64_t mask) {
  if (q > 64) throw InvalidArgument("from_mask needs q <= 64");
  ResidueSet s(q);
  s.words_[0] = mask & bits::tail_mask(q);
  return s;
}

bool ResidueSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

void ResidueSet::insert(std::uint32_t x) {
  if (x >= q_)
    throw InvalidArgument("residue " + std::to_string(x) + " outside [0, " + std::to_string(q_) +
                          ")");
  words_[x >> 6] |= Word{1} << (x & 63);
}

void ResidueSet::erase(std::uint32_t x) {
  if (x < q_) words_[x >> 6] &= ~(Word{1} << (x & 63));
}

void ResidueSet::toggle(std::uint32_t x) {
  if (x >= q_) throw InvalidArgument("residue out of range");
  words_[x >> 6] ^= Word{1} << (x & 63);
}

std::vector<std::uint32_t> ResidueSet::elements() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (Word w = words_[i]; w; w &= w - 1)
      out.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w)));
  }
  return out;
}

std::uint32_t ResidueSet::min_element() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<std::uint32_t>(i * 64 + std::countr_zero(words_[i]));
  throw InvalidArgument("min_element of empty set");
}

ResidueSet ResidueSet::translated(std::uint32_t t) const {
  ResidueSet r(q_);
  bits::rotate_or(words_, r.words_, q_, t % q_);
  return r;
}

ResidueSet ResidueSet::dilated(std::uint32_t c) const {
  ResidueSet r(q_);
  for (auto e : elements())
    r.insert(static_cast<std::uint32_t>((static_cast<std::uint64_t>(e) * c) % q_));
  return r;
}

ResidueSet ResidueSet::negated() const { return dilated(q_ - 1); }

ResidueSet ResidueSet::complement() const {
  ResidueSet r = full(q_);
  return r -= *this;
}

void ResidueSet::check_modulus(const ResidueSet& o) const {
  if (q_ != o.q_)
    throw InvalidArgument("modulus mismatch: " + std::to_string(q_) + " vs " +
                          std::to_string(o.q_));
}

bool ResidueSet::is_subset_of(const ResidueSet& o) const {
  check_modulus(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

std::size_t ResidueSet::intersection_size(const ResidueSet& o) const {
  check_modulus(o);
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
  return c;
}

ResidueSet& ResidueSet::operator|=(const ResidueSet& o) {
  check_modulus(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

ResidueSet& ResidueSet::operator&=(const ResidueSet& o) {
  check_modulus(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

ResidueSet& ResidueSet::operator^=(const ResidueSet& o) {
  check_modulus(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

ResidueSet& ResidueSet::operator-=(const ResidueSet& o) {
  check_modulus(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

std::strong_ordering ResidueSet::operator<=>(const ResidueSet& o) const {
  if (auto c = q_ <=> o.q_; c != 0) return c;
  // Lowest residue in exactly one set decides: the set holding it is smaller
  // unless the other set has nothing above it (then the other is a prefix).
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word diff = words_[i] ^ o.words_[i];
    if (!diff) continue;
    const Word bit = diff & (~diff + 1);
    const bool mine = (words_[i] & bit) != 0;
    const auto& other = mine ? o.words_ : words_;
    bool other_has_more = (other[i] & ~((bit << 1) - 1)) != 0;
    for (std::size_t j = i + 1; j < words_.size() && !other_has_more; ++j)
      other_has_more = other[j] != 0;
    const bool mine_smaller = other_has_more;
    if (mine) return mine_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
    return mine_smaller ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::string ResidueSet::to_string() const {
  std::string s = "q=" + std::to_string(q_) + ";{";
  bool first = true;
  for (auto e : elements()) {
    if (!first) s += ',';
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

std::int64_t parse_int(std::string_view tok, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(tok) + "'");
  return v;
}

std::uint32_t parse_modulus(std::int64_t q) {
  if (q < 1 || q > (std::int64_t{1} << 30))
    throw InvalidArgument("modulus " + std::to_string(q) + " out of range [1, 2^30]");
  return static_cast<std::uint32_t>(q);
}

ResidueSet build(std::uint32_t q, const std::vector<std::int64_t>& elems) {
  ResidueSet s(q);
  for (auto e : elems) {
    if (e < 0 || e >= static_cast<std::int64_t>(q))
      throw InvalidArgument("element " + std::to_string(e) + " outside [0, " +
                            std::to_string(q - 1) + "]");
    if (s.contains(static_cast<std::uint32_t>(e)))
      throw InvalidArgument("duplicate element " + std::to_string(e));
    s.insert(static_cast<std::uint32_t>(e));
  }
  return s;
}

std::vector<std::int64_t> parse_list(std::string_view body) {
  std::vector<std::int64_t> out;
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = body.find(',', pos);
    out.push_back(parse_int(body.substr(pos, comma - pos), "element"));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

ResidueSet parse_residue_set(std::string_view text, std::uint32_t default_q) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw InvalidArgument("empty set literal");

  if (s.front() == '{' && s.find('"') != std::string::npos) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed JSON set: ") + e.what());
    }
    if (!j.is_object() || !j.contains("q") || !j.contains("elements") ||
        !j["q"].is_number_integer() || !j["elements"].is_array())
      throw InvalidArgument(R"(JSON set needs {"q": int, "elements": [int, ...]})");
    std::vector<std::int64_t> elems;
    for (const auto& e : j["elements"]) {
      if (!e.is_number_integer()) throw InvalidArgument("JSON set elements must be integers");
      elems.push_back(e.get<std::int64_t>());
    }
    return build(parse_modulus(j["q"].get<std::int64_t>()), elems);
  }

  if (s.rfind("q=", 0) == 0) {
    const auto semi = s.find(';');
    if (semi == std::string::npos) throw InvalidArgument("expected 'q=<int>;{...}'");
    const auto q = parse_modulus(parse_int(std::string_view(s).substr(2, semi - 2), "modulus"));
    std::string_view rest = std::string_view(s).substr(semi + 1);
    if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}')
      throw InvalidArgument("expected braces around the element list");
    return build(q, parse_list(rest.substr(1, rest.size() - 2)));
  }

  std::string_view body = s;
  if (body.front() == '{') {
    if (body.back() != '}') throw InvalidArgument("unbalanced braces");
    body = body.substr(1, body.size() - 2);
  }
  if (default_q == 0) throw InvalidArgument("bare element list needs a modulus (--q)");
  return build(default_q, parse_list(body));
}

}  // namespace zqadd
