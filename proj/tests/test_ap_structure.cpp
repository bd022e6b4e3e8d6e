#include <doctest.h>

#include "oracles.hpp"
#include "zqadd/ap_structure.hpp"
#include "zqadd/error.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/zq_core.hpp"

using namespace zqadd;
using oracle::Elems;
using oracle::rs;

TEST_SUITE("ap_structure") {
  TEST_CASE("decomposition examples") {
    const auto d = decompose(rs(12, {0, 1, 2, 7, 8}), 1);
    CHECK(d.progressions == std::vector<Progression>{{0, 3}, {7, 2}});
    CHECK(d.alpha() == 2);
    CHECK(d.full_cosets.empty());

    const auto c = decompose(rs(12, {0, 3, 6, 9}), 3);
    CHECK(c.full_cosets == std::vector<std::uint32_t>{0});
    CHECK(c.progressions.empty());

    const auto p = decompose(rs(7, {0, 1, 3}), 3);
    CHECK(p.progressions == std::vector<Progression>{{0, 2}, {1, 1}});
    CHECK(p.last(p.progressions[0]) == 3);

    // alpha_6 = 1: (A+6) \ A = {6}
    CHECK(min_alpha(rs(12, {0, 1, 2, 7, 8})) == 1);
  }

  TEST_CASE("decomposition reassembles and counts alpha") {
    oracle::Gen g(11);
    for (int i = 0; i < 400; ++i) {
      const auto q = g.between(2, 90);
      const auto a = g.nonempty_subset(q);
      const auto t = g.between(1, q - 1);
      const auto d = decompose(rs(q, a), t);
      CHECK(d.reassemble() == rs(q, a));
      CHECK(d.alpha() == oracle::alpha(a, t, q));
      CHECK(alpha(rs(q, a), t) == oracle::alpha(a, t, q));
    }
  }

  TEST_CASE("alpha profile identity |A+{0,t}| = |A| + alpha_t") {
    oracle::Gen g(12);
    for (int i = 0; i < 200; ++i) {
      const auto q = g.between(3, 40);
      auto a = g.nonempty_subset(q);
      if (a.size() == q) a.pop_back();
      const auto prof = alpha_profile(rs(q, a));
      for (std::uint32_t t = 1; t < q; ++t)
        CHECK(oracle::sumset(a, {0, t}, q).size() == a.size() + prof[t]);
    }
    CHECK_THROWS_AS(alpha_profile(ResidueSet(5)), InvalidArgument);
    CHECK_THROWS_AS(alpha_profile(ResidueSet::full(5)), InvalidArgument);
  }

  TEST_CASE("differences by seminorm") {
    CHECK(differences_by_seminorm(7) == std::vector<std::uint32_t>{1, 6, 2, 5, 3, 4});
    CHECK(differences_by_seminorm(6) == std::vector<std::uint32_t>{1, 5, 2, 4, 3});
  }

  TEST_CASE("optimal differences attain min alpha") {
    oracle::Gen g(13);
    for (int i = 0; i < 200; ++i) {
      const auto q = g.between(3, 50);
      auto a = g.nonempty_subset(q);
      if (a.size() == q) a.pop_back();
      const auto set = rs(q, a);
      const auto m = min_alpha(set);
      const auto opt = optimal_differences(set);
      REQUIRE_FALSE(opt.empty());
      for (auto t : opt) CHECK(alpha(set, t) == m);
      for (std::uint32_t t = 1; t < q; ++t) CHECK(alpha(set, t) >= m);
    }
  }

  TEST_CASE("coset containment") {
    CHECK(contained_in_proper_coset(rs(12, {1, 4, 10})));
    CHECK_FALSE(contained_in_proper_coset(rs(12, {0, 1})));
    CHECK(coset_density_ok(rs(13, {0, 1, 5})));
    CHECK_FALSE(coset_density_ok(rs(12, {0, 1, 5})));  // H = {0, 6} already has |H|/2 = 1
    CHECK_FALSE(coset_density_ok(rs(15, {0, 5, 10})));
  }

  TEST_CASE("uniqueness examples") {
    Elems a{0, 1, 2, 3, 4, 50, 51, 52};
    const auto v = check_uniqueness(rs(101, a));
    CHECK(v.hypotheses_met());
    CHECK(v.classification == UniquenessClass::unique_pm_d);

    // Interval plus a point one step past its end: [0, 5] ∪ {7}.
    const auto e = check_uniqueness(rs(101, {0, 1, 2, 3, 4, 5, 7}));
    CHECK(e.classification == UniquenessClass::exception_interval_plus_point);
    REQUIRE(e.affine_witness);
    const auto [c, s] = *e.affine_witness;
    CHECK(AffineMap(101, c, s).apply(rs(101, {0, 1, 2, 3, 4, 5, 7})) == rs(101, {0, 1, 2, 3, 4, 5, 7}));
  }

  TEST_CASE("uniqueness difference set matches brute force") {
    oracle::Gen g(14);
    int seen = 0;
    for (int i = 0; i < 400 && seen < 40; ++i) {
      const std::uint32_t q = 101;
      // two progressions with a common random difference
      const auto d = g.between(1, 100);
      const auto l1 = g.between(2, 20), l2 = g.between(1, 20);
      const auto s2 = g.between(l1 + 1, 80);
      Elems a;
      for (std::uint32_t j = 0; j < l1; ++j) a.push_back(j * d % q);
      for (std::uint32_t j = 0; j < l2; ++j) a.push_back((s2 + j) * d % q);
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      const auto set = rs(q, a);
      if (set.size() <= 2 || min_alpha(set) != 2) continue;
      ++seen;
      const auto v = check_uniqueness(set);
      std::vector<std::uint32_t> brute;
      for (std::uint32_t x = 1; x < q; ++x)
        if (oracle::sumset(a, {0, x}, q).size() == a.size() + 2) brute.push_back(x);
      CHECK(v.difference_set == brute);
    }
    CHECK(seen > 10);
  }

  TEST_CASE("stability examples") {
    const auto r = stability(interval(0, 5, 20));
    CHECK(r.k == 1);
    CHECK(r.stable());
    const auto f = find_stable_multi_component(4, 60);
    REQUIRE(f);
    CHECK(f->q == 56);
    CHECK(f->report.optimal_differences == std::vector<std::uint32_t>{1, 55, 15, 41});
    CHECK(multi_component_family(2, 10).elements() == Elems{0, 1, 2, 3, 6, 7, 8, 9});
  }

  TEST_CASE("stability witness is a real improvement") {
    oracle::Gen g(15);
    for (int i = 0; i < 60; ++i) {
      const auto q = g.between(6, 16);
      auto a = g.nonempty_subset(q);
      if (a.size() >= q - 1 || a.size() < 2) continue;
      const auto set = rs(q, a);
      const auto r = stability(set);
      CHECK(r.k == min_alpha(set));
      if (r.witness) {
        CHECK(r.witness->modified_alpha < r.k);
        CHECK(alpha(r.witness->modified, r.witness->difference) == r.witness->modified_alpha);
      }
    }
  }
}
