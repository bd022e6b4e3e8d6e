#include "zqadd/zq_core.hpp"

#include <algorithm>
#include <numeric>

#include "zqadd/digital_carry.hpp"
#include "zqadd/error.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/rng.hpp"

namespace zqadd {

Subgroup::Subgroup(std::uint32_t q, std::uint32_t order) : q_(q), order_(order) {
  if (q == 0 || order == 0 || q % order != 0)
    throw InvalidArgument("subgroup order " + std::to_string(order) + " does not divide " +
                          std::to_string(q));
}

ResidueSet Subgroup::elements() const {
  ResidueSet s(q_);
  for (std::uint32_t x = 0; x < q_; x += generator()) s.insert(x);
  return s;
}

std::vector<Subgroup> proper_subgroups(std::uint32_t q) {
  std::vector<Subgroup> out;
  for (auto d : divisors(q))
    if (d > 1 && d < q) out.emplace_back(q, static_cast<std::uint32_t>(d));
  return out;
}

AffineMap::AffineMap(std::uint32_t q, std::uint32_t scale, std::uint32_t shift)
    : q_(q), scale_(scale % q), shift_(shift % q) {
  if (std::gcd(scale_, q_) != 1 && q_ != 1)
    throw InvalidArgument("scale " + std::to_string(scale) + " is not invertible mod " +
                          std::to_string(q));
}

std::uint32_t AffineMap::operator()(std::uint32_t x) const {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * scale_ + shift_) % q_);
}

ResidueSet AffineMap::apply(const ResidueSet& a) const {
  if (a.modulus() != q_) throw InvalidArgument("modulus mismatch in AffineMap::apply");
  return a.dilated(scale_).translated(shift_);
}

AffineMap AffineMap::inverse() const {
  const auto inv = mod_inverse(scale_, q_);
  const auto back = static_cast<std::uint32_t>((static_cast<std::uint64_t>(inv) * shift_) % q_);
  return AffineMap(q_, inv, (q_ - back) % q_);
}

ResidueSet affine_canonical_form(const ResidueSet& a) {
  const auto q = a.modulus();
  if (a.empty()) return a;
  std::optional<ResidueSet> best;
  for (auto u : units(q)) {
    const ResidueSet d = a.dilated(u);
    // The least image contains 0, so only shifts moving an element to 0 matter.
    for (auto e : d.elements()) {
      ResidueSet c = d.translated((q - e) % q);
      if (!best || c < *best) best = std::move(c);
    }
  }
  return *best;
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  if (a.modulus() != b.modulus())
    throw InvalidArgument("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                          std::to_string(b.modulus()));
  const ResidueSet& small = a.size() <= b.size() ? a : b;
  const ResidueSet& large = a.size() <= b.size() ? b : a;
  ResidueSet out(a.modulus());
  for (auto s : small.elements()) bits::rotate_or(large.words(), out.mutable_words(), a.modulus(), s);
  return out;
}

ResidueSet interval(std::int64_t a, std::int64_t b, std::uint32_t q) {
  if (q == 0) throw InvalidArgument("modulus must be positive");
  const auto qq = static_cast<std::int64_t>(q);
  std::int64_t len = ((b - a) % qq + qq) % qq + 1;
  std::int64_t start = (a % qq + qq) % qq;
  ResidueSet s(q);
  for (std::int64_t i = 0; i < len; ++i) s.insert(static_cast<std::uint32_t>((start + i) % qq));
  return s;
}

std::uint32_t seminorm(std::uint32_t x, std::uint32_t q) {
  x %= q;
  return std::min(x, q - x);
}

Subgroup period_group(const ResidueSet& s) {
  if (s.empty()) throw InvalidArgument("period group of the empty set is undefined");
  const auto q = s.modulus();
  const auto s0 = s.min_element();
  std::uint32_t count = 0;
  for (auto e : s.elements()) {
    const std::uint32_t t = (e + q - s0) % q;
    if (s.translated(t) == s) ++count;
  }
  return Subgroup(q, count);
}

KneserReport kneser_check(const ResidueSet& a, const ResidueSet& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("kneser_check needs nonempty sets");
  KneserReport r;
  const ResidueSet s = sumset(a, b);
  r.period = period_group(s);
  const ResidueSet h = r.period.elements();
  r.lhs = s.size();
  r.rhs = sumset(a, h).size() + sumset(b, h).size() - h.size();
  r.holds = r.lhs >= r.rhs;
  return r;
}

NormalizedDifference normalize_difference(std::int64_t a, std::uint32_t q) {
  if (q == 0) throw InvalidArgument("modulus must be positive");
  NormalizedDifference nd;
  nd.input = a;
  nd.modulus = q;
  const auto qq = static_cast<std::int64_t>(q);
  if (a % qq == 0) {
    nd.value = q;
    nd.divisor_part = q;
    nd.coprime_part = 1;
    nd.zero_convention = true;
    return nd;
  }
  if (a < 0) a = (a % qq + qq) % qq;
  const auto ua = static_cast<std::uint64_t>(a);
  std::uint64_t prod = 1;
  for (auto [p, e] : factorize(q)) {
    if (valuation(ua, p) == e) {
      nd.matched_primes.push_back(p);
      prod *= p;
    }
  }
  nd.value = static_cast<std::uint64_t>(q) * prod + ua;
  nd.divisor_part = 1;
  for (auto [p, e] : factorize(q)) {
    const unsigned v = std::min(valuation(nd.value, p), e);
    for (unsigned i = 0; i < v; ++i) nd.divisor_part *= p;
  }
  nd.coprime_part = nd.value / nd.divisor_part;
  return nd;
}

std::vector<std::string> SubgroupLemmaReport::failures() const {
  std::vector<std::string> f;
  if (!coset_bound) f.push_back("coset_bound");
  if (!expansion_bound) f.push_back("expansion_bound");
  if (!sumset_ge_gcd) f.push_back("sumset_ge_gcd");
  if (!gcd_ge_upper_line) f.push_back("gcd_ge_upper_line");
  if (!upper_line_chain) f.push_back("upper_line_chain");
  if (!gcd_ge_lower_line) f.push_back("gcd_ge_lower_line");
  return f;
}

SubgroupLemmaReport subgroup_lemma_check(const ResidueSet& a, const Subgroup& h,
                                         std::size_t exhaustive_cap, std::size_t samples,
                                         std::uint64_t seed) {
  const auto q = a.modulus();
  if (h.modulus() != q) throw InvalidArgument("subgroup modulus differs from the set's");
  if (h.trivial() || h.whole()) throw InvalidArgument("subgroup must be proper and nontrivial");
  const auto w = is_digital(a);
  if (!w) throw InvalidArgument("subgroup lemma needs a digital set: " + a.to_string());
  const auto m = w->m;
  if (!prime_condition(m, q).accepted())
    throw InvalidArgument("(m, q) = (" + std::to_string(m) + ", " + std::to_string(q) +
                          ") fails the prime condition");

  SubgroupLemmaReport r;
  r.m = m;
  r.q = q;
  r.subgroup_order = h.order();
  r.smallest_prime = smallest_prime_divisor(q);
  const std::uint64_t p = r.smallest_prime;
  const std::uint64_t n = h.order();
  const ResidueSet hs = h.elements();

  for (std::uint32_t t = 0; t < h.generator(); ++t)
    r.max_coset_hit = std::max(r.max_coset_hit, a.intersection_size(hs.translated(t)));
  r.coset_bound = r.max_coset_hit * p <= std::min<std::uint64_t>(m, n);

  const auto elems = a.elements();
  r.expansion_bound = true;
  auto check_subset = [&](const ResidueSet& sub) {
    ++r.subsets_examined;
    if (sumset(sub, hs).size() < p * sub.size() && r.expansion_bound) {
      r.expansion_bound = false;
      r.expansion_violation = sub.elements();
    }
  };
  if (elems.size() <= std::min<std::size_t>(exhaustive_cap, 40)) {
    r.subsets_exhaustive = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << elems.size()); ++mask) {
      ResidueSet sub(q);
      for (std::size_t i = 0; i < elems.size(); ++i)
        if ((mask >> i) & 1U) sub.insert(elems[i]);
      check_subset(sub);
    }
  } else {
    CounterRng rng(seed, 0);
    for (std::size_t s = 0; s < samples; ++s) {
      ResidueSet sub(q);
      while (sub.empty())
        for (auto e : elems)
          if (rng.coin()) sub.insert(e);
      check_subset(sub);
    }
  }
  r.sumset_with_subgroup = sumset(a, hs).size();
  r.gcd_bound = gcd(static_cast<std::uint64_t>(m) * n, q);
  r.sumset_ge_gcd = r.sumset_with_subgroup >= r.gcd_bound;
  const std::uint64_t upper = p * std::max<std::uint64_t>(m, n);
  r.gcd_ge_upper_line = r.gcd_bound >= upper;
  r.upper_line_chain = upper >= (p - 1) * m + n;
  // (m|H|, q) >= min(q, 4m/3 + |H|), scaled by 3.
  r.gcd_ge_lower_line = 3 * r.gcd_bound >= std::min<std::uint64_t>(3ULL * q, 4ULL * m + 3 * n);
  return r;
}

}  // namespace zqadd
