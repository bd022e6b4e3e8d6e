#include "zqadd/ap_structure.hpp"

#include <algorithm>
#include <numeric>

#include "zqadd/error.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/zq_core.hpp"

namespace zqadd {

ResidueSet ApDecomposition::reassemble() const {
  const auto q = base.modulus();
  ResidueSet s(q);
  const std::uint32_t g = std::gcd(difference, q);
  for (auto r : full_cosets)
    for (std::uint32_t x = r % g; x < q; x += g) s.insert(x);
  for (const auto& p : progressions)
    for (std::uint64_t j = 0, x = p.start; j < p.length; ++j, x = (x + difference) % q)
      s.insert(static_cast<std::uint32_t>(x));
  return s;
}

std::uint32_t ApDecomposition::last(const Progression& p) const {
  const auto q = base.modulus();
  return static_cast<std::uint32_t>(
      (p.start + static_cast<std::uint64_t>(p.length - 1) * difference) % q);
}

ApDecomposition decompose(const ResidueSet& a, std::uint32_t t) {
  const auto q = a.modulus();
  t %= q;
  if (t == 0) throw InvalidArgument("decompose: difference must be nonzero mod q");
  if (a.empty()) throw InvalidArgument("decompose: empty set");
  ApDecomposition d{a, t, {}, {}};
  const std::uint32_t g = std::gcd(t, q);
  const std::uint32_t len = q / g;
  auto step = [&](std::uint32_t x) { return static_cast<std::uint32_t>((x + std::uint64_t{t}) % q); };

  for (std::uint32_t r = 0; r < g; ++r) {
    // Find a gap in the coset to start walking from.
    std::uint32_t x = r;
    std::uint32_t j = 0;
    while (j < len && a.contains(x)) {
      x = step(x);
      ++j;
    }
    if (j == len) {
      d.full_cosets.push_back(r);
      continue;
    }
    std::uint32_t run_start = 0, run_len = 0;
    for (std::uint32_t i = 0; i < len; ++i) {
      x = step(x);
      if (a.contains(x)) {
        if (run_len++ == 0) run_start = x;
      } else if (run_len) {
        d.progressions.push_back({run_start, run_len});
        run_len = 0;
      }
    }
  }
  std::sort(d.progressions.begin(), d.progressions.end(),
            [](const Progression& l, const Progression& r) { return l.start < r.start; });
  return d;
}

std::size_t alpha(const ResidueSet& a, std::uint32_t t) {
  std::vector<Word> scratch(a.words().size());
  return bits::rotated_excess(a.words(), a.modulus(), t % a.modulus(), scratch);
}

std::vector<std::size_t> alpha_profile(const ResidueSet& a) {
  const auto q = a.modulus();
  if (a.empty() || a.is_full())
    throw InvalidArgument("alpha profile needs a nonempty proper subset: " + a.to_string());
  std::vector<std::size_t> prof(q, 0);
  std::vector<Word> scratch(a.words().size());
  for (std::uint32_t t = 1; t <= q / 2; ++t) {
    prof[t] = bits::rotated_excess(a.words(), q, t, scratch);
    prof[q - t] = prof[t];
  }
  return prof;
}

std::size_t min_alpha(const ResidueSet& a) {
  const auto prof = alpha_profile(a);
  return *std::min_element(prof.begin() + 1, prof.end());
}

std::vector<std::uint32_t> differences_by_seminorm(std::uint32_t q) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 1; x <= q / 2; ++x) {
    out.push_back(x);
    if (q - x != x) out.push_back(q - x);
  }
  return out;
}

std::vector<std::uint32_t> optimal_differences(const ResidueSet& a) {
  const auto prof = alpha_profile(a);
  const auto best = *std::min_element(prof.begin() + 1, prof.end());
  std::vector<std::uint32_t> out;
  for (auto t : differences_by_seminorm(a.modulus()))
    if (prof[t] == best) out.push_back(t);
  return out;
}

std::vector<std::pair<std::uint32_t, ApDecomposition>> find_multi_decompositions(
    const ResidueSet& a) {
  std::vector<std::pair<std::uint32_t, ApDecomposition>> out;
  for (auto t : optimal_differences(a)) out.emplace_back(t, decompose(a, t));
  return out;
}

bool coset_density_ok(const ResidueSet& a) {
  for (const auto& h : proper_subgroups(a.modulus())) {
    const ResidueSet hs = h.elements();
    for (std::uint32_t t = 0; t < h.generator(); ++t)
      if (2 * a.intersection_size(hs.translated(t)) >= h.order()) return false;
  }
  return true;
}

std::string_view to_string(UniquenessClass c) {
  switch (c) {
    case UniquenessClass::unique_pm_d: return "unique_pm_d";
    case UniquenessClass::exception_interval_plus_point: return "exception_interval_plus_point";
    case UniquenessClass::exception_point_plus_interval: return "exception_point_plus_interval";
    case UniquenessClass::other: return "other";
  }
  return "other";
}

bool contained_in_proper_coset(const ResidueSet& a) {
  if (a.empty()) return true;
  // A lies in one coset of <g> iff every difference a - a0 is a multiple of g;
  // that holds for some proper g iff gcd(q, all differences) > 1.
  const auto q = a.modulus();
  const auto a0 = a.min_element();
  std::uint32_t g = q;
  for (auto e : a.elements()) g = std::gcd(g, e - a0);
  return g > 1;
}

namespace {

// (c, s) with c*A + s == target, least c then least s.
std::optional<std::pair<std::uint32_t, std::uint32_t>> affine_match(const ResidueSet& a,
                                                                    const ResidueSet& target) {
  const auto q = a.modulus();
  if (a.size() != target.size()) return std::nullopt;
  const auto t0 = target.min_element();
  for (auto c : units(q)) {
    const ResidueSet d = a.dilated(c);
    std::optional<std::uint32_t> best;
    for (auto e : d.elements()) {
      const std::uint32_t s = (t0 + q - e) % q;
      if (d.translated(s) == target && (!best || s < *best)) best = s;
    }
    if (best) return std::pair{c, *best};
  }
  return std::nullopt;
}

}  // namespace

UniquenessVerdict check_uniqueness(const ResidueSet& a) {
  const auto q = a.modulus();
  if (a.size() <= 2) throw InvalidArgument("check_uniqueness needs |A| > 2");
  const auto prof = alpha_profile(a);
  const auto best = *std::min_element(prof.begin() + 1, prof.end());
  if (best != 2)
    throw InvalidArgument("check_uniqueness needs xi(2) = |A| + 2, got min alpha " +
                          std::to_string(best));
  UniquenessVerdict v;
  v.base = a;
  for (std::uint32_t x = 1; x < q; ++x)
    if (prof[x] == 2) v.difference_set.push_back(x);
  v.q_odd = q % 2 == 1;
  v.q_above_100 = q > 100;
  v.size_in_range = a.size() > 4 && a.size() + 4 < q;
  v.not_in_proper_coset = !contained_in_proper_coset(a);

  const auto& ds = v.difference_set;
  if ((ds.size() == 2 && ds[0] + ds[1] == q) || (ds.size() == 1 && 2 * ds[0] == q)) {
    v.classification = UniquenessClass::unique_pm_d;
    return v;
  }
  const auto l = static_cast<std::uint32_t>(a.size() - 1);
  if (l + 2 <= q) {
    ResidueSet ip = interval(0, l - 1, q);
    ip.insert((l + 1) % q);
    ResidueSet pi = interval(2, l + 1, q);
    pi.insert(0);
    const auto m1 = affine_match(a, ip);
    const auto m2 = affine_match(a, pi);
    if (m1 && (!m2 || m1->first <= m2->first)) {
      v.classification = UniquenessClass::exception_interval_plus_point;
      v.affine_witness = m1;
    } else if (m2) {
      v.classification = UniquenessClass::exception_point_plus_interval;
      v.affine_witness = m2;
    }
  }
  return v;
}

std::string_view to_string(StabilityStatus s) {
  switch (s) {
    case StabilityStatus::stable: return "stable";
    case StabilityStatus::unstable: return "unstable";
    case StabilityStatus::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

struct StabilitySearch {
  const ResidueSet& base;
  std::size_t k;
  const std::vector<std::uint32_t>& diffs;
  bool strict;
  ResidueSet work;
  std::vector<Word> scratch;
  std::vector<std::uint32_t> toggled;
  std::uint64_t checked = 0;
  std::optional<StabilityReport::Witness> witness;

  bool test() {
    for (auto d : diffs) {
      ++checked;
      const auto al = bits::rotated_excess(work.words(), work.modulus(), d, scratch);
      if (al < k) {
        witness = StabilityReport::Witness{d, toggled, work, al};
        return true;
      }
    }
    return false;
  }

  // Toggles `left` more residues, all >= from.
  bool recurse(std::uint32_t from, std::size_t left, std::size_t removed, std::size_t added) {
    if (left == 0) return test();
    for (std::uint32_t x = from; x < work.modulus(); ++x) {
      const bool in = base.contains(x);
      if (strict && (in ? removed : added) == k) continue;
      work.toggle(x);
      toggled.push_back(x);
      const bool hit = recurse(x + 1, left - 1, removed + in, added + !in);
      toggled.pop_back();
      work.toggle(x);
      if (hit) return true;
    }
    return false;
  }
};

}  // namespace

StabilityReport stability(const ResidueSet& a, bool strict_reading, std::uint64_t budget) {
  const auto q = a.modulus();
  StabilityReport r;
  r.strict_reading = strict_reading;
  const auto prof = alpha_profile(a);
  r.k = *std::min_element(prof.begin() + 1, prof.end());
  for (auto t : differences_by_seminorm(q))
    if (prof[t] == r.k) r.optimal_differences.push_back(t);

  const std::size_t max_toggles = strict_reading ? std::min<std::size_t>(2 * r.k, q) : r.k;
  std::uint64_t count = 0;
  for (std::size_t j = 0; j <= max_toggles; ++j) {
    const auto c = binomial(q, j);
    if (c > budget || count + c > budget) {
      r.status = StabilityStatus::indeterminate;
      return r;
    }
    count += c;
  }
  if (count * r.optimal_differences.size() > budget) {
    r.status = StabilityStatus::indeterminate;
    return r;
  }

  StabilitySearch s{a, r.k, r.optimal_differences, strict_reading, a,
                    std::vector<Word>(a.words().size()), {}, 0, std::nullopt};
  bool hit = false;
  for (std::size_t j = 0; j <= max_toggles && !hit; ++j) hit = s.recurse(0, j, 0, 0);
  r.neighbours_checked = s.checked;
  r.witness = s.witness;
  r.status = hit ? StabilityStatus::unstable : StabilityStatus::stable;
  return r;
}

ResidueSet multi_component_family(std::uint32_t k, std::uint32_t q) {
  if (k == 0 || q % k != 0) throw InvalidArgument("multi_component_family needs k | q, k >= 1");
  if (q < k * (k + 3))
    throw InvalidArgument("multi_component_family needs q >= k(k+3) so the intervals are disjoint");
  ResidueSet s = interval(0, 2 * k - 1, q);
  for (std::uint32_t i = 1; i < k; ++i) {
    const std::int64_t base = static_cast<std::int64_t>(i) * (q / k);
    s |= interval(base + i, base + k + 1 + i, q);
  }
  return s;
}

std::optional<MultiComponentInstance> find_stable_multi_component(std::uint32_t k,
                                                                  std::uint32_t q_limit) {
  for (std::uint32_t q = k * (k + 3); q <= q_limit; q += k) {
    const ResidueSet s = multi_component_family(k, q);
    if (min_alpha(s) != k) continue;
    auto rep = stability(s);
    if (rep.stable()) return MultiComponentInstance{k, q, s, std::move(rep)};
  }
  return std::nullopt;
}

}  // namespace zqadd
