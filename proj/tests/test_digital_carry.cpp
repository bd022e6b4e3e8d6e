#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "zqadd/digital_carry.hpp"
#include "zqadd/error.hpp"
#include "zqadd/zq_core.hpp"

using namespace zqadd;
using oracle::Elems;
using oracle::rs;

namespace {

// Carry of a1 + a2 in Z_m, centred, computed straight from the definition.
int carry_of(std::uint32_t a1, std::uint32_t a2, const Elems& a, std::uint32_t m, std::uint32_t q) {
  const auto s = (a1 + a2) % q;
  std::uint32_t rep = 0;
  for (auto x : a)
    if (x % m == s % m) rep = x;
  const std::uint32_t mm = m * m;
  // (a1 + a2 - rep) is divisible by m; divide in Z_{m^2} then reduce mod m.
  const std::int64_t diff = (static_cast<std::int64_t>(a1) + a2 - rep) % mm;
  std::int64_t c = ((diff + mm) % mm / m) % m;
  if (c > static_cast<std::int64_t>(m) / 2) c -= m;
  return static_cast<int>(c);
}

}  // namespace

TEST_SUITE("digital_carry") {
  TEST_CASE("digital examples") {
    CHECK(is_digital(rs(8, {0, 3})));
    CHECK_FALSE(is_digital(rs(8, {0, 2})));
    const auto w = is_digital(rs(8, {0, 3}));
    REQUIRE(w);
    CHECK(w->m == 2);
    CHECK(w->residue_map == std::vector<std::uint32_t>{0, 3});
    CHECK_FALSE(is_digital(rs(9, {0, 1})));
  }

  TEST_CASE("prime condition") {
    CHECK(prime_condition(6, 36).accepted());
    CHECK_FALSE(prime_condition(2, 6).accepted());
    CHECK(prime_condition(4, 8).accepted());
    CHECK_FALSE(prime_condition(4, 4).accepted());
  }

  TEST_CASE("carry example") {
    const auto c = carry_stats(*is_digital(rs(4, {0, 1})));
    CHECK(c.distinct_carries == std::vector<int>{0, 1});
    CHECK(c.nonzero_pair_count == 1);
  }

  TEST_CASE("carry table matches the definition") {
    oracle::Gen g(31);
    for (int i = 0; i < 100; ++i) {
      const auto m = g.between(2, 6);
      const auto q = m * m;
      const auto w = digital_set_at(m, q, g.next() % digital_set_count(m, q));
      const auto a = w.set.elements();
      const auto c = carry_stats(w);
      std::set<int> distinct;
      std::size_t nonzero = 0;
      for (std::uint32_t r1 = 0; r1 < m; ++r1)
        for (std::uint32_t r2 = 0; r2 < m; ++r2) {
          const int want = carry_of(w.residue_map[r1], w.residue_map[r2], a, m, q);
          CHECK(c.carry_table[r1 * m + r2] == want);
          distinct.insert(want);
          nonzero += want != 0;
        }
      CHECK(c.distinct_carries == std::vector<int>(distinct.begin(), distinct.end()));
      CHECK(c.nonzero_pair_count == nonzero);
    }
  }

  TEST_CASE("digital enumeration") {
    CHECK(digital_set_count(2, 4) == 4);
    CHECK(digital_set_count(5, 25) == 3125);
    CHECK(digital_set_count(4, 8) == 16);
    std::vector<ResidueSet> seen;
    enumerate_digital_sets(3, 9, [&](const DigitalSetWitness& w) {
      seen.push_back(w.set);
      return true;
    });
    REQUIRE(seen.size() == 27);
    for (std::uint64_t i = 0; i < seen.size(); ++i) {
      CHECK(digital_set_at(3, 9, i).set == seen[i]);
      CHECK(is_digital(seen[i]));
    }
    // brute force: every 3-subset of Z_9 that is a complete residue system mod 3
    std::size_t brute = 0;
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
      const auto e = oracle::from_mask(9, mask);
      if (e.size() != 3) continue;
      std::set<std::uint32_t> res;
      for (auto x : e) res.insert(x % 3);
      brute += res.size() == 3;
    }
    CHECK(brute == 27);
    CHECK_THROWS_AS(enumerate_digital_sets(5, 25, [](const DigitalSetWitness&) { return true; }, 100),
                    BudgetExceeded);
  }

  TEST_CASE("carry extremality") {
    const std::size_t orbit_distinct[] = {18, 32, 100, 72};
    const std::size_t orbit_nonzero[] = {3, 8, 10, 12};
    const std::size_t min_nonzero[] = {2, 4, 6, 9};
    for (std::uint32_t m = 3; m <= 6; ++m) {
      const auto r = verify_carry_extremality(m);
      CHECK(r.passed());
      CHECK(r.min_distinct == 2);
      CHECK(r.min_nonzero_pairs == min_nonzero[m - 3]);
      CHECK(r.interval_orbit_size == orbit_distinct[m - 3]);
      CHECK(r.balanced_orbit_size == orbit_nonzero[m - 3]);
    }
  }

  TEST_CASE("interval normal form matches the affine oracle") {
    oracle::Gen g(32);
    for (int i = 0; i < 200; ++i) {
      const auto q = g.between(3, 24);
      const auto a = g.nonempty_subset(q);
      const auto nf = interval_normal_form(rs(q, a));
      CHECK(nf.has_value() == oracle::affine_interval(a, q));
      if (nf) {
        const auto [c, d] = *nf;
        CHECK(AffineMap(q, c, d).apply(rs(q, a)) == interval(0, a.size() - 1, q));
      }
    }
  }

  TEST_CASE("two translate cover matches brute force") {
    oracle::Gen g(33);
    for (int i = 0; i < 200; ++i) {
      const auto q = g.between(2, 18);
      const auto a = g.nonempty_subset(q);
      const auto two = oracle::sumset(a, a, q);
      std::optional<std::pair<std::uint32_t, std::uint32_t>> want;
      for (std::uint32_t x = 0; x < q && !want; ++x)
        for (std::uint32_t y = x; y < q && !want; ++y) {
          const auto cover = oracle::sumset(a, {x, y}, q);
          if (std::includes(cover.begin(), cover.end(), two.begin(), two.end())) want = {x, y};
        }
      CHECK(two_translate_cover(rs(q, a)) == want);
    }
  }

  TEST_CASE("digsetteo smoke") {
    DigsetteoOptions opt;
    opt.samples = 20;
    opt.seed = 7;
    const auto r = verify_digsetteo(16, 32, opt);
    CHECK(r.prime_condition);
    CHECK(r.guard_met);
    CHECK(r.examined == 20);
    CHECK(r.oracle_mismatches.empty());
    CHECK(r.passed());
  }
}
