#include "zqadd/digital_carry.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "zqadd/ap_structure.hpp"
#include "zqadd/error.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/parallel.hpp"
#include "zqadd/rng.hpp"
#include "zqadd/zq_core.hpp"

namespace zqadd {

std::optional<DigitalSetWitness> is_digital(const ResidueSet& a) {
  const auto q = a.modulus();
  const auto m = static_cast<std::uint32_t>(a.size());
  if (m == 0 || q % m != 0) return std::nullopt;
  DigitalSetWitness w{a, m, q, std::vector<std::uint32_t>(m, q)};
  for (auto e : a.elements()) {
    auto& slot = w.residue_map[e % m];
    if (slot != q) return std::nullopt;
    slot = e;
  }
  return w;
}

PrimeConditionCheck prime_condition(std::uint64_t m, std::uint64_t q) {
  PrimeConditionCheck c;
  c.m = m;
  c.q = q;
  if (m == 0 || q == 0) return c;
  c.same_primes = prime_divisors(m) == prime_divisors(q);
  c.strict_exponents = true;
  for (auto [p, e] : factorize(q))
    if (valuation(m, p) >= e) c.strict_exponents = false;
  return c;
}

CarryStats carry_stats(const DigitalSetWitness& w) {
  const std::uint64_t m = w.m;
  if (w.q != m * m)
    throw InvalidArgument("carry_stats needs q = m^2; got m = " + std::to_string(m) +
                          ", q = " + std::to_string(w.q));
  CarryStats s;
  s.digit_set = w;
  std::set<int> distinct;
  const auto mi = static_cast<std::int64_t>(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    for (std::uint64_t j = 0; j < m; ++j) {
      const std::int64_t a1 = w.residue_map[i], a2 = w.residue_map[j];
      const std::int64_t a = w.residue_map[(i + j) % m];
      // (a1 + a2 - a) / m is a class mod m; report its centred representative.
      std::int64_t c = ((a1 + a2 - a) / mi) % mi;
      if (c < 0) c += mi;
      if (2 * c > mi) c -= mi;
      s.carry_table.push_back(static_cast<int>(c));
      distinct.insert(static_cast<int>(c));
      if (c != 0) ++s.nonzero_pair_count;
    }
  }
  s.distinct_carries.assign(distinct.begin(), distinct.end());
  return s;
}

ResidueSet digit_interval(std::uint32_t m, std::uint32_t q) { return interval(0, m - 1, q); }

ResidueSet balanced_digits(std::uint32_t m, std::uint32_t q) {
  const std::int64_t lo = -static_cast<std::int64_t>((m - 1) / 2);
  const std::int64_t hi = static_cast<std::int64_t>(m / 2);  // ceil((m-1)/2)
  return interval(lo, hi, q);
}

std::uint64_t digital_set_count(std::uint32_t m, std::uint32_t q) {
  if (m == 0 || q % m != 0)
    throw InvalidArgument("digital sets need m | q; got m = " + std::to_string(m) + ", q = " +
                          std::to_string(q));
  const std::uint64_t base = q / m;
  std::uint64_t c = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (base != 0 && c > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    c *= base;
  }
  return c;
}

namespace {

DigitalSetWitness from_choices(std::uint32_t m, std::uint32_t q,
                               const std::vector<std::uint32_t>& choice) {
  DigitalSetWitness w{ResidueSet(q), m, q, std::vector<std::uint32_t>(m)};
  for (std::uint32_t r = 0; r < m; ++r) {
    w.residue_map[r] = r + m * choice[r];
    w.set.insert(w.residue_map[r]);
  }
  return w;
}

}  // namespace

void enumerate_digital_sets(std::uint32_t m, std::uint32_t q,
                            const std::function<bool(const DigitalSetWitness&)>& fn,
                            std::uint64_t cap) {
  const auto count = digital_set_count(m, q);
  if (count > cap)
    throw BudgetExceeded("(q/m)^m = " + std::to_string(q / m) + "^" + std::to_string(m) +
                         " digital sets exceed the enumeration cap " + std::to_string(cap));
  const std::uint32_t base = q / m;
  std::vector<std::uint32_t> choice(m, 0);
  while (true) {
    if (!fn(from_choices(m, q, choice))) return;
    std::int64_t r = static_cast<std::int64_t>(m) - 1;
    while (r >= 0 && choice[r] + 1 == base) choice[r--] = 0;
    if (r < 0) return;
    ++choice[r];
  }
}

DigitalSetWitness digital_set_at(std::uint32_t m, std::uint32_t q, std::uint64_t index) {
  const auto count = digital_set_count(m, q);
  if (index >= count) throw InvalidArgument("digital set index out of range");
  const std::uint32_t base = q / m;
  std::vector<std::uint32_t> choice(m, 0);
  for (std::int64_t r = static_cast<std::int64_t>(m) - 1; r >= 0; --r) {
    choice[r] = static_cast<std::uint32_t>(index % base);
    index /= base;
  }
  return from_choices(m, q, choice);
}

namespace {

std::vector<ResidueSet> sorted_unique(std::vector<ResidueSet> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

CarryExtremalityReport verify_carry_extremality(std::uint32_t m, std::uint64_t cap) {
  if (m < 2) throw InvalidArgument("carry extremality needs m >= 2");
  const std::uint32_t q = m * m;
  CarryExtremalityReport r;
  r.m = m;
  r.min_distinct = std::numeric_limits<std::size_t>::max();
  r.min_nonzero_pairs = std::numeric_limits<std::size_t>::max();
  enumerate_digital_sets(
      m, q,
      [&](const DigitalSetWitness& w) {
        ++r.sets;
        const auto s = carry_stats(w);
        const auto d = s.distinct_carries.size();
        if (d < r.min_distinct) {
          r.min_distinct = d;
          r.distinct_minimizers.clear();
        }
        if (d == r.min_distinct) r.distinct_minimizers.push_back(w.set);
        if (s.nonzero_pair_count < r.min_nonzero_pairs) {
          r.min_nonzero_pairs = s.nonzero_pair_count;
          r.nonzero_minimizers.clear();
        }
        if (s.nonzero_pair_count == r.min_nonzero_pairs) r.nonzero_minimizers.push_back(w.set);
        return true;
      },
      cap);
  r.distinct_minimizers = sorted_unique(std::move(r.distinct_minimizers));
  r.nonzero_minimizers = sorted_unique(std::move(r.nonzero_minimizers));

  const ResidueSet iv = digit_interval(m, q);
  const ResidueSet bal = balanced_digits(m, q);
  std::vector<ResidueSet> iv_orbit, bal_orbit;
  for (auto u : units(q)) {
    const ResidueSet d = iv.dilated(u);
    for (std::uint32_t e = 0; e < m; ++e) iv_orbit.push_back(d.translated(m * e));
    bal_orbit.push_back(bal.dilated(u));
  }
  iv_orbit = sorted_unique(std::move(iv_orbit));
  bal_orbit = sorted_unique(std::move(bal_orbit));
  r.interval_orbit_size = iv_orbit.size();
  r.balanced_orbit_size = bal_orbit.size();
  r.interval_attains =
      std::binary_search(r.distinct_minimizers.begin(), r.distinct_minimizers.end(), iv);
  r.balanced_attains =
      std::binary_search(r.nonzero_minimizers.begin(), r.nonzero_minimizers.end(), bal);
  r.distinct_minimizers_are_orbit = r.distinct_minimizers == iv_orbit;
  r.nonzero_minimizers_are_orbit = r.nonzero_minimizers == bal_orbit;
  return r;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> interval_normal_form(const ResidueSet& a) {
  const auto q = a.modulus();
  if (a.empty()) return std::nullopt;
  if (a.is_full()) return std::pair<std::uint32_t, std::uint32_t>{1, 0};
  for (auto c : units(q)) {
    const ResidueSet d = a.dilated(c);
    if (alpha(d, 1) != 1) continue;
    for (auto x : d.elements()) {
      if (!d.contains((x + q - 1) % q)) return std::pair<std::uint32_t, std::uint32_t>{c, (q - x) % q};
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> two_translate_cover(const ResidueSet& a) {
  if (a.empty()) return std::nullopt;
  const auto q = a.modulus();
  const ResidueSet two_a = sumset(a, a);
  const auto elems = a.elements();
  for (std::uint32_t x = 0; x < q; ++x) {
    const ResidueSet rest = two_a - a.translated(x);
    if (rest.empty()) return std::pair{x, x};
    const auto r0 = rest.min_element();
    std::vector<std::uint32_t> ys;
    for (auto e : elems) ys.push_back((r0 + q - e) % q);
    std::sort(ys.begin(), ys.end());
    for (auto y : ys)
      if (rest.is_subset_of(a.translated(y))) return std::pair{x, y};
  }
  return std::nullopt;
}

CorollaryReport verify_digsetcorollary(std::uint32_t m, std::uint32_t q, unsigned workers,
                                       std::uint64_t cap) {
  CorollaryReport r;
  r.m = m;
  r.q = q;
  r.prime_condition = prime_condition(m, q).accepted();
  if (!r.prime_condition)
    throw InvalidArgument("(m, q) = (" + std::to_string(m) + ", " + std::to_string(q) +
                          ") fails the prime condition");
  r.literal_note =
      "the stated conclusion 'cA+d = {0,1,...,q-1} with d in qZ_q' cannot hold for |A| = m < q; "
      "checked reading: cA+d = [0, m-1] for a unit c";
  const auto count = digital_set_count(m, q);
  if (count > cap)
    throw BudgetExceeded(std::to_string(count) + " digital sets exceed the enumeration cap " +
                         std::to_string(cap));
  struct Block {
    std::uint64_t prefiltered = 0;
    std::vector<CorollarySolution> solutions;
  };
  auto blocks = parallel_blocks(count, 4096, workers, [&](std::size_t begin, std::size_t end) {
    Block b;
    for (std::size_t i = begin; i < end; ++i) {
      const auto w = digital_set_at(m, q, i);
      if (sumset(w.set, w.set).size() > 2 * static_cast<std::size_t>(m)) continue;
      ++b.prefiltered;
      if (auto xy = two_translate_cover(w.set))
        b.solutions.push_back({w.set, xy->first, xy->second, interval_normal_form(w.set)});
    }
    return b;
  });
  r.examined = count;
  for (auto& b : blocks) {
    r.prefiltered += b.prefiltered;
    for (auto& s : b.solutions) {
      if (!s.normal_form) r.non_interval.push_back(s.set);
      r.solutions.push_back(std::move(s));
    }
  }
  return r;
}

DigsetteoReport verify_digsetteo(std::uint32_t m, std::uint32_t q, const DigsetteoOptions& opt) {
  DigsetteoReport r;
  r.m = m;
  r.q = q;
  r.prime_condition = prime_condition(m, q).accepted();
  if (!r.prime_condition)
    throw InvalidArgument("(m, q) = (" + std::to_string(m) + ", " + std::to_string(q) +
                          ") fails the prime condition");
  r.guard_met = m > 15;
  const auto count = digital_set_count(m, q);
  r.exhaustive = opt.samples == 0;
  const std::uint64_t total = r.exhaustive ? count : opt.samples;
  if (r.exhaustive && count > 10'000'000)
    throw BudgetExceeded("exhaustive digsetteo sweep over " + std::to_string(count) + " sets");

  struct Outcome {
    bool two_ap = false;
    std::uint64_t oracle = 0;
    std::vector<WindowViolation> bad, mismatch;
    std::vector<std::string> skipped;
  };
  const SearchLimits lim{opt.node_budget, 0};
  const std::uint32_t lo = std::max<std::uint32_t>(opt.window_lo, 2);
  const std::uint32_t hi = std::min<std::uint32_t>(opt.window_hi, q - m - 1);
  auto outcomes = parallel_map(total, opt.workers, [&](std::size_t i) {
    Outcome o;
    std::uint64_t index = i;
    if (!r.exhaustive) {
      CounterRng rng(opt.seed, i);
      index = rng.below(count);
    }
    const ResidueSet a = digital_set_at(m, q, index).set;
    if (min_alpha(a) <= 2) {
      o.two_ap = true;
      return o;
    }
    for (std::uint32_t n = lo; n <= hi; ++n) {
      const auto s = xi_search(a, n, lim);
      if (!s.exact) {
        o.skipped.push_back(a.to_string() + " n=" + std::to_string(n) + ": node budget exhausted");
        continue;
      }
      if (n <= opt.oracle_up_to) {
        ++o.oracle;
        const auto ref = xi_naive(a, n);
        if (ref.value != s.value || ref.witness != s.witness)
          o.mismatch.push_back({a, n, s.value, true});
      }
      if (s.value <= static_cast<std::size_t>(m) + n) o.bad.push_back({a, n, s.value, true});
    }
    return o;
  });
  for (auto& o : outcomes) {
    ++r.examined;
    if (o.two_ap) ++r.two_ap_sets;
    else ++r.checked;
    r.oracle_checks += o.oracle;
    for (auto& v : o.bad) r.violations.push_back(std::move(v));
    for (auto& v : o.mismatch) r.oracle_mismatches.push_back(std::move(v));
    for (auto& s : o.skipped) r.skipped.push_back(std::move(s));
  }
  return r;
}

}  // namespace zqadd
