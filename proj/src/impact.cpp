#include "zqadd/impact.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <span>

#include "zqadd/ap_structure.hpp"
#include "zqadd/digital_carry.hpp"
#include "zqadd/error.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/parallel.hpp"
#include "zqadd/rng.hpp"
#include "zqadd/zq_core.hpp"

namespace zqadd {

namespace {

void check_n(const ResidueSet& a, std::uint32_t n) {
  if (n > a.modulus())
    throw InvalidArgument("n = " + std::to_string(n) + " exceeds q = " + std::to_string(a.modulus()));
}

ResidueSet first_n(std::uint32_t q, std::uint32_t n) {
  ResidueSet s(q);
  for (std::uint32_t i = 0; i < n; ++i) s.insert(i);
  return s;
}

// Trivial cases shared by both searches: n <= 1 or A empty.
std::optional<ImpactResult> trivial_xi(const ResidueSet& a, std::uint32_t n) {
  const auto q = a.modulus();
  if (n == 0) return ImpactResult{0, 0, ResidueSet(q), 0, true};
  if (a.empty()) return ImpactResult{n, 0, first_n(q, n), 0, true};
  if (n == 1) return ImpactResult{1, a.size(), first_n(q, 1), 1, true};
  return std::nullopt;
}

}  // namespace

ImpactResult xi_naive(const ResidueSet& a, std::uint32_t n, std::uint64_t cap) {
  check_n(a, n);
  if (auto t = trivial_xi(a, n)) return *t;
  const auto q = a.modulus();
  if (binomial(q - 1, n - 1) > cap)
    throw BudgetExceeded("xi_naive: C(" + std::to_string(q - 1) + ", " + std::to_string(n - 1) +
                         ") exceeds the cap " + std::to_string(cap));

  // Combinations of n-1 elements of [1, q-1] in lexicographic order; each
  // sumset is rebuilt from scratch.
  std::vector<std::uint32_t> c(n - 1);
  for (std::uint32_t i = 0; i + 1 < n; ++i) c[i] = i + 1;
  ImpactResult best{n, q + 1, ResidueSet(q), 0, true};
  ResidueSet acc(q);
  while (true) {
    std::fill(acc.mutable_words().begin(), acc.mutable_words().end(), 0);
    bits::rotate_or(a.words(), acc.mutable_words(), q, 0);
    for (auto x : c) bits::rotate_or(a.words(), acc.mutable_words(), q, x);
    ++best.nodes_explored;
    const auto v = acc.size();
    if (v < best.value) {
      best.value = v;
      best.witness = ResidueSet::from_elements(q, c);
      best.witness.insert(0);
    }
    // Advance to the next combination.
    std::int64_t i = static_cast<std::int64_t>(n) - 2;
    while (i >= 0 && c[i] == q - (n - 1) + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++c[i];
    for (auto j = static_cast<std::size_t>(i) + 1; j < c.size(); ++j) c[j] = c[j - 1] + 1;
  }
  return best;
}

namespace {

struct BranchAndBound {
  const ResidueSet& a;
  std::uint32_t q;
  std::uint32_t n;
  std::size_t floor_value;  // max(|A|, n)
  SearchLimits limits;
  std::chrono::steady_clock::time_point started;
  std::vector<std::vector<Word>> stack;  // stack[d] = A + {0, b_1..b_d}
  std::vector<std::uint32_t> chosen;
  std::size_t best;
  std::vector<std::uint32_t> best_set;
  std::uint64_t nodes = 0;
  bool aborted = false;
  bool done = false;

  bool out_of_budget() {
    if (nodes >= limits.max_nodes) return true;
    if (limits.max_seconds > 0 && (nodes & 4095) == 0) {
      const std::chrono::duration<double> el = std::chrono::steady_clock::now() - started;
      if (el.count() > limits.max_seconds) return true;
    }
    return false;
  }

  void dfs(std::uint32_t depth, std::uint32_t from) {
    if (depth + 1 == n) {
      const auto v = bits::popcount(stack[depth]);
      if (v < best) {
        best = v;
        best_set = chosen;
        if (best == floor_value) done = true;
      }
      return;
    }
    const std::uint32_t need = n - 1 - depth;  // elements still to place
    for (std::uint32_t x = from; x + need <= q; ++x) {
      if (done || aborted) return;
      if (out_of_budget()) {
        aborted = true;
        return;
      }
      ++nodes;
      auto& next = stack[depth + 1];
      next = stack[depth];
      bits::rotate_or(a.words(), next, q, x);
      // Adding elements never shrinks the sumset.
      if (bits::popcount(next) >= best) continue;
      chosen.push_back(x);
      dfs(depth + 1, x + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

ImpactResult xi_search(const ResidueSet& a, std::uint32_t n, const SearchLimits& limits) {
  check_n(a, n);
  if (auto t = trivial_xi(a, n)) return *t;
  const auto q = a.modulus();
  BranchAndBound bb{a, q, n, std::max<std::size_t>(a.size(), n), limits,
                    std::chrono::steady_clock::now(), {}, {}, q + 1, {}, 0, false, false};
  bb.stack.assign(n, std::vector<Word>(a.words().begin(), a.words().end()));
  bb.dfs(0, 1);
  ImpactResult r;
  r.n = n;
  r.nodes_explored = bb.nodes;
  r.exact = !bb.aborted;
  if (bb.best_set.empty()) {
    // No leaf reached before the budget ran out; fall back to {0..n-1}.
    r.witness = first_n(q, n);
    r.value = sumset(a, r.witness).size();
  } else {
    r.value = bb.best;
    r.witness = ResidueSet::from_elements(q, bb.best_set);
    r.witness.insert(0);
  }
  return r;
}

SidonReport sidon_check(const ResidueSet& b) {
  if (b.empty()) throw InvalidArgument("sidon_check needs a nonempty set");
  SidonReport r;
  const auto q = b.modulus();
  for (std::uint32_t t = 1; t < q; ++t) {
    if (b.intersection_size(b.translated(t)) >= 2) {
      r.violating_shift = t;
      break;
    }
  }
  r.is_sidon = !r.violating_shift;
  r.double_sum_size = sumset(b, b).size();
  return r;
}

RuzsaReport ruzsa_bound_check(const ResidueSet& a, const ResidueSet& b) {
  if (a.empty()) throw InvalidArgument("ruzsa_bound_check needs nonempty A");
  const auto sid = sidon_check(b);
  if (!sid.is_sidon)
    throw InvalidArgument("ruzsa_bound_check needs a Sidon set B; shift " +
                          std::to_string(*sid.violating_shift) + " repeats a difference");
  RuzsaReport r;
  r.m = a.size();
  r.n = b.size();
  r.lhs = sumset(a, b).size();
  r.rhs_num = static_cast<std::uint64_t>(r.m) * r.n * r.n;
  r.rhs_den = r.m + r.n - 1;
  r.holds = static_cast<std::uint64_t>(r.lhs) * r.rhs_den >= r.rhs_num;
  return r;
}

namespace {

// Lexicographic order of the sorted element lists encoded by two masks.
bool lex_less(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t diff = x ^ y;
  if (!diff) return false;
  const std::uint64_t bit = diff & (~diff + 1);
  const bool mine = (x & bit) != 0;
  const std::uint64_t other = mine ? y : x;
  const bool other_has_more = (other & ~((bit << 1) - 1)) != 0;
  return mine == other_has_more;
}

// a/b < c/d
bool ratio_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return static_cast<unsigned __int128>(a) * d < static_cast<unsigned __int128>(c) * b;
}

}  // namespace

PluenneckeReport pluennecke_subset(const ResidueSet& a, const ResidueSet& b, std::size_t cap,
                                   std::uint64_t seed) {
  if (a.empty() || b.empty()) throw InvalidArgument("pluennecke_subset needs nonempty sets");
  if (cap > 24) throw InvalidArgument("pluennecke_subset: exhaustive cap above 24 is not supported");
  const auto q = a.modulus();
  PluenneckeReport r;
  r.beta_num = sumset(a, b).size();
  r.beta_den = a.size();
  const ResidueSet b2 = sumset(b, b);
  const auto elems = a.elements();
  const std::size_t nw = b2.words().size();

  auto subset_of = [&](std::uint64_t mask) {
    ResidueSet s(q);
    for (std::size_t i = 0; i < elems.size(); ++i)
      if ((mask >> i) & 1U) s.insert(elems[i]);
    return s;
  };

  std::uint64_t best_mask = 0;
  std::uint64_t best_num = 0, best_den = 1;
  auto consider = [&](std::uint64_t mask, std::uint64_t num, std::uint64_t den) {
    if (best_mask == 0 || ratio_less(num, den, best_num, best_den) ||
        (!ratio_less(best_num, best_den, num, den) && lex_less(mask, best_mask))) {
      best_mask = mask;
      best_num = num;
      best_den = den;
    }
  };

  if (elems.size() <= cap) {
    r.exact = true;
    const std::uint64_t total = std::uint64_t{1} << elems.size();
    std::vector<Word> table(total * nw, 0);
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      const std::uint64_t rest = mask & (mask - 1);
      const unsigned low = static_cast<unsigned>(__builtin_ctzll(mask));
      std::span<Word> cur(table.data() + mask * nw, nw);
      std::copy_n(table.data() + rest * nw, nw, cur.begin());
      bits::rotate_or(b2.words(), cur, q, elems[low]);
      consider(mask, bits::popcount(cur), std::popcount(mask));
    }
  } else {
    // Seeded local search; no optimality claim.
    CounterRng rng(seed, 0);
    const std::size_t k = elems.size();
    if (k > 64) throw InvalidArgument("pluennecke_subset: |A| > 64 not supported");
    const std::uint64_t full = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    auto eval = [&](std::uint64_t mask) {
      return std::pair<std::uint64_t, std::uint64_t>(sumset(subset_of(mask), b2).size(),
                                                     std::popcount(mask));
    };
    for (int restart = 0; restart < 64; ++restart) {
      std::uint64_t mask = restart == 0 ? full : 0;
      while (mask == 0) mask = rng() & full;
      auto [num, den] = eval(mask);
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t i = 0; i < k; ++i) {
          const std::uint64_t cand = mask ^ (std::uint64_t{1} << i);
          if (cand == 0) continue;
          auto [cn, cd] = eval(cand);
          if (ratio_less(cn, cd, num, den)) {
            mask = cand;
            num = cn;
            den = cd;
            improved = true;
          }
        }
      }
      consider(mask, num, den);
    }
  }
  r.best_subset = subset_of(best_mask);
  r.ratio_num = best_num;
  r.ratio_den = best_den;
  const auto lhs = static_cast<unsigned __int128>(r.ratio_num) * r.beta_den * r.beta_den;
  const auto rhs = static_cast<unsigned __int128>(r.beta_num) * r.beta_num * r.ratio_den;
  r.holds = lhs <= rhs;
  return r;
}

namespace {

constexpr double kSlack = 1e-9;

double positive_root(double a, double b, double c) {
  return (b + std::sqrt(b * b + 4 * a * c)) / (2 * a);
}

}  // namespace

RangeBounds range_bounds(std::int64_t m, std::int64_t k) {
  if (m <= 2) throw InvalidArgument("range_bounds needs m >= 3");
  if (k < 0) throw InvalidArgument("range_bounds needs k >= 0");
  RangeBounds r;
  r.m = m;
  r.k = k;
  const auto md = static_cast<double>(m), kd = static_cast<double>(k);
  r.bound1 = positive_root(md - 1, 2 * md + kd - 2, (md - 1) * (md + kd - 1));
  r.bound2 = positive_root(md - 2, 3 * md + 4 * kd - 4, 2 * md + 2 * (kd - 1) * (2 * md + kd - 1));
  r.hypothesis_range_end = (3 + std::sqrt(16 * kd + 1)) / 2;
  const auto n = static_cast<std::int64_t>(std::floor(r.bound1 + kSlack));
  const std::int64_t num = m + n + k - 1;
  r.beta_max = static_cast<double>(num) / md;
  r.beta_below_sqrt2 = num * num < 2 * m * m;
  r.bound2_within_one = r.bound2 <= r.hypothesis_range_end + 1 + kSlack;
  r.bound2_excludes_beyond =
      std::floor(r.bound2 + kSlack) <= std::floor(r.hypothesis_range_end + kSlack);
  return r;
}

RangeThresholds range_thresholds(std::int64_t k, std::int64_t horizon) {
  if (horizon < 3) throw InvalidArgument("range_thresholds needs horizon >= 3");
  RangeThresholds t;
  t.k = k;
  t.horizon = horizon;
  t.beta_threshold = t.stated_threshold = t.strict_threshold = horizon + 1;
  bool beta = true, stated = true, strict = true;
  for (std::int64_t m = horizon; m >= 3; --m) {
    const auto r = range_bounds(m, k);
    beta = beta && r.beta_below_sqrt2;
    stated = stated && r.bound2_within_one;
    strict = strict && r.bound2_excludes_beyond;
    if (beta) t.beta_threshold = m;
    if (stated) t.stated_threshold = m;
    if (strict) t.strict_threshold = m;
  }
  return t;
}

TheoremMainReport verify_theorem_main(std::int64_t m, std::int64_t q, std::int64_t k,
                                      const TheoremMainOptions& opt) {
  if (m < 3 || q < 1 || k < 0 || q > (1 << 20))
    throw InvalidArgument("verify_theorem_main: bad (m, q, k)");
  if (!prime_condition(m, q).accepted())
    throw InvalidArgument("(m, q) = (" + std::to_string(m) + ", " + std::to_string(q) +
                          ") fails the prime condition");
  TheoremMainReport rep;
  rep.m = m;
  rep.q = q;
  rep.k = k;
  const auto th = range_thresholds(k);
  rep.threshold = std::max(th.beta_threshold, th.stated_threshold);
  if (m < rep.threshold)
    throw InvalidArgument("m = " + std::to_string(m) + " is below the admissible threshold " +
                          std::to_string(rep.threshold) + " for k = " + std::to_string(k));
  rep.range_end = static_cast<std::uint32_t>(
      std::floor((3 + std::sqrt(16.0 * static_cast<double>(k) + 1)) / 2 + kSlack));
  const auto um = static_cast<std::uint32_t>(m), uq = static_cast<std::uint32_t>(q);
  const std::int64_t hi_window = std::min<std::int64_t>(opt.window_hi, q - m - k - 1);
  const std::uint64_t count = digital_set_count(um, uq);

  struct Outcome {
    bool hypothesis = false;
    std::vector<TheoremMainReport::Counterexample> bad;
    std::vector<std::string> skipped;
  };
  SearchLimits lim{opt.node_budget, 0};
  auto outcomes = parallel_map(opt.samples, opt.workers, [&](std::size_t i) {
    Outcome o;
    CounterRng rng(opt.seed, i);
    const auto w = digital_set_at(um, uq, rng.below(count));
    const ResidueSet& a = w.set;
    auto xi = [&](std::uint32_t n) -> std::optional<std::size_t> {
      if (n == 2) return a.size() + min_alpha(a);
      const auto r = xi_search(a, n, lim);
      if (!r.exact) {
        o.skipped.push_back(a.to_string() + " n=" + std::to_string(n) + ": node budget exhausted");
        return std::nullopt;
      }
      return r.value;
    };
    o.hypothesis = true;
    for (std::uint32_t n = 2; n <= rep.range_end && o.hypothesis; ++n) {
      const auto v = xi(n);
      if (!v) return o;
      o.hypothesis = static_cast<std::int64_t>(*v) >= n + m + k;
    }
    if (!o.hypothesis) return o;
    for (std::int64_t n = 2; n <= hi_window; ++n) {
      const auto v = xi(static_cast<std::uint32_t>(n));
      if (!v) continue;
      if (static_cast<std::int64_t>(*v) < n + m + k)
        o.bad.push_back({a, static_cast<std::uint32_t>(n), *v});
    }
    return o;
  });
  for (auto& o : outcomes) {
    ++rep.sampled;
    if (o.hypothesis) ++rep.hypothesis_met;
    else if (o.skipped.empty()) ++rep.vacuous;
    for (auto& c : o.bad) rep.counterexamples.push_back(std::move(c));
    for (auto& s : o.skipped) rep.skipped.push_back(std::move(s));
  }
  return rep;
}

}  // namespace zqadd
