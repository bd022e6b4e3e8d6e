#include <doctest.h>

#include "oracles.hpp"
#include "zqadd/ap_structure.hpp"
#include "zqadd/error.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/zq_core.hpp"

using namespace zqadd;
using oracle::Elems;
using oracle::rs;

TEST_SUITE("impact") {
  TEST_CASE("xi example") {
    const auto r = xi_naive(rs(7, {0, 1, 3}), 2);
    CHECK(r.value == 5);
    CHECK(r.exact);
    CHECK(r.witness.elements() == Elems{0, 1});
    CHECK(xi_search(rs(7, {0, 1, 3}), 2).value == 5);
  }

  TEST_CASE("xi naive and search agree with brute force") {
    oracle::Gen g(21);
    for (int i = 0; i < 150; ++i) {
      const auto q = g.between(1, 11);
      const auto a = g.nonempty_subset(q);
      const auto n = g.between(1, q);
      const auto want = oracle::xi(a, n, q);
      const auto naive = xi_naive(rs(q, a), n);
      const auto search = xi_search(rs(q, a), n);
      CHECK(naive.value == want);
      CHECK(search.value == want);
      CHECK(search.exact);
      CHECK(search.witness == naive.witness);
      CHECK(naive.witness.size() == n);
      CHECK(naive.witness.contains(0));
      CHECK(sumset(rs(q, a), naive.witness).size() == want);
    }
  }

  TEST_CASE("xi witness is lexicographically least") {
    oracle::Gen g(22);
    for (int i = 0; i < 60; ++i) {
      const auto q = g.between(2, 10);
      const auto a = g.nonempty_subset(q);
      const auto n = g.between(1, q);
      const auto r = xi_naive(rs(q, a), n);
      // first mask with bit 0 set, popcount n and the optimal value in lex order of element lists
      std::vector<Elems> optima;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << q); mask += 2) {
        if (static_cast<std::uint32_t>(__builtin_popcountll(mask)) != n) continue;
        const auto b = oracle::from_mask(q, mask);
        if (oracle::sumset(a, b, q).size() == r.value) optima.push_back(b);
      }
      REQUIRE_FALSE(optima.empty());
      CHECK(r.witness.elements() == *std::min_element(optima.begin(), optima.end()));
    }
  }

  TEST_CASE("xi2 equals |A| + min alpha") {
    oracle::Gen g(23);
    for (int i = 0; i < 150; ++i) {
      const auto q = g.between(3, 24);
      auto a = g.nonempty_subset(q);
      if (a.size() == q) a.pop_back();
      CHECK(xi_search(rs(q, a), 2).value == a.size() + min_alpha(rs(q, a)));
    }
  }

  TEST_CASE("search budget is reported") {
    SearchLimits lim;
    lim.max_nodes = 5;
    const auto r = xi_search(rs(40, {0, 1, 5, 11, 20, 33}), 6, lim);
    CHECK_FALSE(r.exact);
    CHECK(r.value >= 6);
    CHECK_THROWS_AS(xi_naive(rs(64, {0, 1}), 20, 1000), BudgetExceeded);
  }

  TEST_CASE("sidon examples") {
    const auto s = sidon_check(rs(8, {0, 1, 3}));
    CHECK(s.is_sidon);
    CHECK(s.double_sum_size == 6);
    const auto n = sidon_check(rs(8, {0, 1, 2}));
    CHECK_FALSE(n.is_sidon);
    CHECK(n.violating_shift == 1u);
    oracle::Gen g(24);
    for (int i = 0; i < 300; ++i) {
      const auto q = g.between(1, 40);
      const auto b = g.nonempty_subset(q);
      CHECK(sidon_check(rs(q, b)).is_sidon == oracle::sidon(b, q));
    }
  }

  TEST_CASE("ruzsa bound on Sidon sets") {
    CHECK_THROWS_AS(ruzsa_bound_check(rs(8, {0}), rs(8, {0, 1, 2})), InvalidArgument);
    oracle::Gen g(25);
    int checked = 0;
    for (int i = 0; i < 2000 && checked < 200; ++i) {
      const auto q = g.between(2, 40);
      const auto b = g.nonempty_subset(q);
      if (!oracle::sidon(b, q)) continue;
      const auto a = g.nonempty_subset(q);
      const auto r = ruzsa_bound_check(rs(q, a), rs(q, b));
      ++checked;
      CHECK(r.lhs == oracle::sumset(a, b, q).size());
      CHECK(r.holds);
    }
    CHECK(checked > 50);
  }

  TEST_CASE("pluennecke example and property") {
    const auto p = pluennecke_subset(rs(8, {0, 1}), rs(8, {0, 1}));
    CHECK(p.beta_num == 3);
    CHECK(p.beta_den == 2);
    CHECK(p.exact);
    CHECK(p.holds);
    oracle::Gen g(26);
    for (int i = 0; i < 100; ++i) {
      const auto q = g.between(2, 20);
      auto a = g.nonempty_subset(q);
      if (a.size() > 10) a.resize(10);
      const auto b = g.nonempty_subset(q);
      const auto r = pluennecke_subset(rs(q, a), rs(q, b));
      CHECK(r.holds);
      // brute-force minimum ratio
      const auto bb = oracle::sumset(b, b, q);
      std::uint64_t bn = q + 1, bd = 1;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << a.size()); ++mask) {
        Elems sub;
        for (std::size_t j = 0; j < a.size(); ++j)
          if ((mask >> j) & 1U) sub.push_back(a[j]);
        const std::uint64_t num = oracle::sumset(sub, bb, q).size(), den = sub.size();
        if (num * bd < bn * den) bn = num, bd = den;
      }
      CHECK(r.ratio_num * bd == bn * r.ratio_den);
    }
  }

  TEST_CASE("range thresholds") {
    const auto t0 = range_thresholds(0);
    CHECK(t0.beta_threshold == 5);
    CHECK(t0.stated_threshold == 4);
    CHECK(t0.strict_threshold == 5);
    const auto t1 = range_thresholds(1);
    CHECK(t1.beta_threshold == 10);
    CHECK(t1.stated_threshold == 9);
    CHECK(t1.strict_threshold == 17);
    const auto b = range_bounds(5, 0);
    CHECK(b.beta_below_sqrt2);
    CHECK(b.hypothesis_range_end == doctest::Approx(2.0));
  }
}
