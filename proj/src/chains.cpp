#include "zqadd/chains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "zqadd/ap_structure.hpp"
#include "zqadd/error.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/zq_core.hpp"

namespace zqadd {

namespace {

void check_proper(const ResidueSet& a) {
  if (a.empty() || a.is_full())
    throw InvalidArgument("needs a nonempty proper subset: " + a.to_string());
  if (a.modulus() < 3) throw InvalidArgument("needs q >= 3 for two distinct nonzero differences");
}

// |A + {0, x, y}|
std::size_t triple_size(const ResidueSet& a, std::uint32_t x, std::uint32_t y,
                        std::vector<Word>& buf) {
  std::copy(a.words().begin(), a.words().end(), buf.begin());
  bits::rotate_or(a.words(), buf, a.modulus(), x);
  bits::rotate_or(a.words(), buf, a.modulus(), y);
  return bits::popcount(buf);
}

}  // namespace

Xi23 xi2_xi3(const ResidueSet& a) {
  check_proper(a);
  Xi23 r;
  r.xi2 = a.size() + min_alpha(a);
  const auto order = differences_by_seminorm(a.modulus());
  std::vector<Word> buf(a.words().size());
  r.xi3 = a.modulus() + 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto v = triple_size(a, order[i], order[j], buf);
      r.xi3 = std::min(r.xi3, v);
      if (v == r.xi2 && !r.witness) r.witness = std::pair{order[i], order[j]};
    }
  }
  return r;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> xi2_eq_xi3(const ResidueSet& a) {
  check_proper(a);
  // Both differences of a witness pair attain min alpha.
  const auto d = optimal_differences(a);
  const std::size_t xi2 = a.size() + alpha(a, d.front());
  std::vector<Word> buf(a.words().size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (triple_size(a, d[i], d[j], buf) == xi2) return std::pair{d[i], d[j]};
  return std::nullopt;
}

bool has_xi2_eq_xi3(const ResidueSet& a) { return xi2_eq_xi3(a).has_value(); }

namespace {

bool contains_nontrivial_coset(const ResidueSet& a) {
  const auto q = a.modulus();
  for (auto p : prime_divisors(q)) {
    const Subgroup h(q, static_cast<std::uint32_t>(p));
    const ResidueSet hs = h.elements();
    for (std::uint32_t t = 0; t < h.generator(); ++t)
      if (hs.translated(t).is_subset_of(a)) return true;
  }
  return false;
}

}  // namespace

ChainFamily extract_chain_structure(const ResidueSet& a_in, std::uint32_t d1_in,
                                    std::uint32_t d2_in) {
  const auto q = a_in.modulus();
  check_proper(a_in);
  d1_in %= q;
  d2_in %= q;
  if (d1_in == 0 || d2_in == 0 || d1_in == d2_in)
    throw InvalidArgument("chain extraction needs distinct nonzero d1, d2");
  if (contains_nontrivial_coset(a_in))
    throw InvalidArgument("chain extraction needs a set without nontrivial cosets: " +
                          a_in.to_string());

  ChainFamily f;
  f.q = q;
  const auto nd = normalize_difference(d1_in, q);
  f.dilation = mod_inverse(static_cast<std::uint32_t>(nd.coprime_part % q), q);
  f.d1 = static_cast<std::uint32_t>(nd.divisor_part % q);
  f.d2 = static_cast<std::uint32_t>((static_cast<std::uint64_t>(d2_in) * f.dilation) % q);
  f.set = a_in.dilated(f.dilation);
  const ResidueSet& a = f.set;
  const std::uint32_t d1 = f.d1, d2 = f.d2;
  f.subgroup_order = q / d1;

  {
    std::vector<Word> buf(a.words().size());
    const auto s12 = triple_size(a, d1, d2, buf);
    const ResidueSet x1 = a | a.translated(d1), x2 = a | a.translated(d2),
                     x12 = a.translated(d1) | a.translated(d2);
    f.pair_is_witness = s12 == x1.size() && x1 == x2 && x1 == x12;
  }
  f.xi3 = xi2_xi3(a).xi3;
  f.k = f.xi3 - a.size();

  // Gaps: maximal d1-runs of the complement in occupied cosets.
  std::vector<Gap> gaps;
  std::map<std::uint32_t, std::size_t> gap_of;  // element -> gap index
  for (std::uint32_t r = 0; r < d1; ++r) {
    bool occupied = false;
    for (std::uint32_t x = r; x < q && !occupied; x += d1) occupied = a.contains(x);
    if (!occupied) {
      f.empty_cosets.push_back(r);
      continue;
    }
    ++f.z;
  }
  {
    // Cosets missing A are full cosets of the complement, so the
    // progressions are exactly the gaps.
    const auto dec = decompose(a.complement(), d1);
    for (const auto& p : dec.progressions) {
      const std::size_t idx = gaps.size();
      gaps.push_back({p.start, p.length});
      for (std::uint32_t j = 0, x = p.start; j < p.length; ++j, x = (x + d1) % q) gap_of[x] = idx;
    }
  }

  auto gap_set = [&](const Gap& g) {
    ResidueSet s(q);
    for (std::uint32_t j = 0, x = g.start; j < g.length; ++j, x = (x + d1) % q) s.insert(x);
    return s;
  };

  // Predecessor links: (G - d2) ∩ A^c must be empty for |G| = 1, otherwise a
  // single gap one element shorter.
  std::vector<std::optional<std::size_t>> pred(gaps.size());
  std::vector<std::vector<std::size_t>> succ(gaps.size());
  bool cond_ii = true;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const ResidueSet shifted = gap_set(gaps[i]).translated(q - d2);
    const ResidueSet outside = shifted - a;
    if (outside.empty()) {
      if (gaps[i].length != 1) cond_ii = false;
      continue;
    }
    const auto it = gap_of.find(outside.min_element());
    if (it == gap_of.end() || gap_set(gaps[it->second]) != outside ||
        gaps[it->second].length + 1 != gaps[i].length) {
      cond_ii = false;
      continue;
    }
    pred[i] = it->second;
    succ[it->second].push_back(i);
  }
  for (const auto& s : succ)
    if (s.size() > 1) {
      cond_ii = false;
      f.violations.push_back("chain_branching");
      break;
    }

  std::vector<bool> used(gaps.size(), false);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (pred[i]) continue;
    std::vector<Gap> chain;
    for (std::optional<std::size_t> cur = i; cur && !used[*cur];) {
      used[*cur] = true;
      chain.push_back(gaps[*cur]);
      cur = succ[*cur].empty() ? std::nullopt : std::optional<std::size_t>(succ[*cur].front());
    }
    f.chains.push_back(std::move(chain));
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    cond_ii = false;
    f.violations.push_back("chain_cycle");
  }
  std::sort(f.chains.begin(), f.chains.end(), [&](const auto& x, const auto& y) {
    const auto gx = x.front().start, gy = y.front().start;
    return std::tuple(gx % d1, seminorm(gx, q), gx) < std::tuple(gy % d1, seminorm(gy, q), gy);
  });

  for (const auto& g : gaps) f.max_gap = std::max<std::size_t>(f.max_gap, g.length);
  f.condition_i = f.max_gap <= f.k;
  f.condition_ii = cond_ii;
  f.condition_iii = true;
  for (const auto& c : f.chains) {
    if (c.front().length != 1) f.condition_ii = false;
    if (!a.contains((c.front().start + q - d2) % q)) f.condition_iii = false;
  }
  f.condition_iv = true;
  {
    ResidueSet seen(q);
    for (const auto& g : gaps) {
      ResidueSet ext = gap_set(g);
      ext.insert(static_cast<std::uint32_t>((g.start + static_cast<std::uint64_t>(g.length) * d1) % q));
      if (seen.intersection_size(ext) != 0) f.condition_iv = false;
      seen |= ext;
    }
  }
  {
    ResidueSet removed(q);
    for (const auto& g : gaps) removed |= gap_set(g);
    for (auto r : f.empty_cosets)
      for (std::uint32_t x = r; x < q; x += d1) removed.insert(x);
    f.reconstructs = removed.complement() == a;
  }
  f.size_bound = 2 * a.size() + f.k * (f.k + 1) >=
                 2 * static_cast<std::size_t>(f.z) * f.subgroup_order;

  if (!f.condition_i) f.violations.push_back("condition_i");
  if (!f.condition_ii) f.violations.push_back("condition_ii");
  if (!f.condition_iii) f.violations.push_back("condition_iii");
  if (!f.condition_iv) f.violations.push_back("condition_iv");
  if (!f.reconstructs) f.violations.push_back("reconstruction");
  if (!f.size_bound) f.violations.push_back("size_bound");
  return f;
}

double Construction::density() const {
  return static_cast<double>(materialized.size()) / static_cast<double>(ground_max);
}

namespace {

ChainLayout make_chain(std::string label, std::int64_t offset, std::int64_t len, std::int64_t d) {
  ChainLayout c{std::move(label), offset, len, {}, {}};
  for (std::int64_t j = 0; j < len; ++j) {
    c.intervals.push_back({offset + j * d - j, offset + j * d});
    if (j > 0) c.trimmed.push_back({offset + j * d - j + 1, offset + j * d});
  }
  return c;
}

}  // namespace

Construction build_construction(std::uint32_t m, std::uint32_t max_m) {
  if (m < 2 || m > max_m || m > 15)
    throw InvalidArgument("build_construction needs 2 <= m <= " + std::to_string(std::min(max_m, 15U)));
  Construction s;
  s.m = m;
  s.d = std::int64_t{1} << m;
  s.ground_max = s.d * s.d;
  s.chains.push_back(make_chain("C0", 0, s.d, s.d));
  for (std::uint32_t l = 1; l + 1 <= m; ++l) {
    for (std::uint32_t i = 1; i + l <= m; ++i) {
      const std::int64_t len = std::int64_t{1} << (m + 1 - l - i);
      const std::int64_t off = s.d * ((std::int64_t{1} << (m + 1 - l)) -
                                      (std::int64_t{1} << (m + 2 - l - i)) - 1) +
                               len;
      s.chains.push_back(make_chain("B(l=" + std::to_string(l) + ",i=" + std::to_string(i) + ")",
                                    off, len, s.d));
    }
  }

  // Pairwise disjointness of all untrimmed intervals, by sweeping sorted starts.
  struct Tagged {
    IntegerInterval iv;
    std::size_t chain;
    std::size_t index;
  };
  std::vector<Tagged> all;
  for (std::size_t c = 0; c < s.chains.size(); ++c)
    for (std::size_t k = 0; k < s.chains[c].intervals.size(); ++k)
      all.push_back({s.chains[c].intervals[k], c, k});
  std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) {
    return std::pair(x.iv.lo, x.iv.hi) < std::pair(y.iv.lo, y.iv.hi);
  });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].iv.lo <= all[i - 1].iv.hi) {
      s.collisions.push_back(s.chains[all[i - 1].chain].label + "[" +
                             std::to_string(all[i - 1].index) + "] meets " +
                             s.chains[all[i].chain].label + "[" + std::to_string(all[i].index) + "]");
    }
  }
  s.disjoint = s.collisions.empty();

  for (const auto& c : s.chains)
    for (const auto& iv : c.trimmed)
      if (iv.lo < 0 || iv.hi > s.ground_max)
        s.out_of_range.push_back(c.label + " [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + "]");
  s.within_ground = s.out_of_range.empty();
  if (!s.within_ground) return s;

  for (const auto& c : s.chains)
    for (const auto& iv : c.trimmed)
      for (auto x = iv.lo; x <= iv.hi; ++x) s.materialized.push_back(static_cast<std::uint32_t>(x));
  std::sort(s.materialized.begin(), s.materialized.end());
  s.materialized.erase(std::unique(s.materialized.begin(), s.materialized.end()),
                       s.materialized.end());

  auto tri = [](std::uint64_t l) { return l * (l - 1) / 2; };
  s.closed_form_size = tri(static_cast<std::uint64_t>(s.d));
  for (std::uint32_t l = 1; l + 1 <= m; ++l)
    for (std::uint32_t i = 1; i + l <= m; ++i) s.closed_form_size += tri(std::uint64_t{1} << (m + 1 - l - i));
  return s;
}

Projection project_to_prime(const Construction& cons) {
  Projection p;
  p.p = static_cast<std::uint32_t>(next_prime(static_cast<std::uint64_t>(cons.ground_max)));
  p.in_short_interval = static_cast<double>(p.p) <=
                        static_cast<double>(cons.ground_max) + std::pow(2.0, 21.0 * cons.m / 20.0);
  p.image = ResidueSet(p.p);
  for (auto x : cons.materialized) p.image.insert(x % p.p);
  p.complement = p.image.complement();
  p.complement_density = static_cast<double>(p.complement.size()) / p.p;
  return p;
}

namespace {

struct MuScan {
  std::uint32_t best = 0;
  std::vector<ResidueSet> witnesses;
};

void finish_bounds(MuRecord& r) {
  const double p = r.p;
  r.sqrt_bound = std::sqrt(8 * p + 25) - 5;
  r.log4_bound = std::log(p) / std::log(4.0);
  r.sqrt_bound_applies = 3 * static_cast<std::uint64_t>(r.mu) < 2 * static_cast<std::uint64_t>(r.p);
  r.sqrt_bound_holds = r.mu + 1e-9 >= r.sqrt_bound;
  r.log4_bound_holds = r.mu > r.log4_bound;
  r.half_k_holds = true;
  for (const auto& w : r.witnesses) {
    if (3 * w.size() >= 2 * static_cast<std::size_t>(r.p)) continue;
    const auto x = xi2_xi3(w);
    if (2 * (x.xi3 - w.size()) > w.size()) r.half_k_holds = false;
  }
  std::sort(r.witnesses.begin(), r.witnesses.end());
  r.witnesses.erase(std::unique(r.witnesses.begin(), r.witnesses.end()), r.witnesses.end());
}

}  // namespace

MuRecord compute_mu(std::uint32_t p, MuStrategy strategy, std::uint32_t exhaustive_cap) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (p < 3) throw InvalidArgument("compute_mu needs p >= 3");
  MuRecord r;
  r.p = p;
  r.strategy = strategy;
  if (strategy == MuStrategy::exhaustive) {
    if (p > exhaustive_cap)
      throw BudgetExceeded("exhaustive mu needs p <= " + std::to_string(exhaustive_cap));
    // Translation invariance: only sets containing 0.
    r.mu = p;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); mask += 2) {
      ResidueSet a = ResidueSet::from_mask(p, mask);
      if (a.is_full()) continue;
      ++r.sets_examined;
      const auto sz = static_cast<std::uint32_t>(a.size());
      if (sz > r.mu || !has_xi2_eq_xi3(a)) continue;
      if (sz < r.mu) {
        r.mu = sz;
        r.witnesses.clear();
      }
      r.witnesses.push_back(affine_canonical_form(a));
    }
  } else {
    for (std::uint32_t s = 1; s < p && r.witnesses.empty(); ++s) {
      // Combinations of s-1 elements of [1, p-1], with 0 always present.
      std::vector<std::uint32_t> c(s - 1);
      std::iota(c.begin(), c.end(), 1U);
      while (true) {
        ResidueSet a = ResidueSet::from_elements(p, c);
        a.insert(0);
        ++r.sets_examined;
        if (has_xi2_eq_xi3(a)) {
          r.mu = s;
          r.witnesses.push_back(affine_canonical_form(a));
        }
        std::int64_t i = static_cast<std::int64_t>(c.size()) - 1;
        while (i >= 0 && c[i] == p - c.size() + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) break;
        ++c[i];
        for (auto j = static_cast<std::size_t>(i) + 1; j < c.size(); ++j) c[j] = c[j - 1] + 1;
      }
    }
  }
  finish_bounds(r);
  return r;
}

std::vector<MuTableRow> mu_density_table(const std::vector<std::uint32_t>& primes,
                                         const std::vector<std::uint32_t>& construction_ms) {
  std::vector<MuTableRow> rows;
  for (auto p : primes) {
    MuTableRow row{"exact", p, 0, 0, ""};
    try {
      const auto strat = p <= 19 ? MuStrategy::exhaustive : MuStrategy::bounded;
      const auto rec = compute_mu(p, strat);
      row.size = rec.mu;
      row.ratio = static_cast<double>(rec.mu) / p;
      row.note = strat == MuStrategy::exhaustive ? "exhaustive" : "bounded";
    } catch (const std::exception& e) {
      row.note = std::string("failed: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  for (auto m : construction_ms) {
    const auto cons = build_construction(m);
    const auto proj = project_to_prime(cons);
    MuTableRow row{"construction", proj.p, static_cast<std::uint32_t>(proj.complement.size()),
                   proj.complement_density, ""};
    row.note = "m=" + std::to_string(m) +
               (has_xi2_eq_xi3(proj.complement) ? "; xi2=xi3 holds" : "; xi2=xi3 fails") +
               "; upper bound on mu(p) only when it holds";
    rows.push_back(std::move(row));
  }
  rows.push_back({"ceiling", 0, 0, 5.0 / 18.0, "liminf mu(p)/p <= 5/18"});
  return rows;
}

ResidueSet crt_embed(const ResidueSet& a, std::uint32_t other_modulus) {
  const std::uint64_t q1 = a.modulus(), q2 = other_modulus;
  if (q2 == 0 || gcd(q1, q2) != 1) throw InvalidArgument("crt_embed needs coprime moduli");
  const std::uint64_t q = q1 * q2;
  if (q > (std::uint64_t{1} << 30)) throw InvalidArgument("crt_embed: product modulus too large");
  // x = a (mod q1), x = 0 (mod q2)  =>  x = a * q2 * (q2^{-1} mod q1).
  const std::uint64_t inv = q1 == 1 ? 0 : mod_inverse(static_cast<std::uint32_t>(q2 % q1), static_cast<std::uint32_t>(q1));
  ResidueSet out(static_cast<std::uint32_t>(q));
  for (auto e : a.elements())
    out.insert(static_cast<std::uint32_t>((e * q2 % q) * inv % q));
  return out;
}

}  // namespace zqadd
