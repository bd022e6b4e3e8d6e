#include <doctest.h>

#include "oracles.hpp"
#include "zqadd/error.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/residue_set.hpp"
#include "zqadd/zq_core.hpp"

using namespace zqadd;
using oracle::Elems;
using oracle::rs;

TEST_SUITE("zq_core") {
  TEST_CASE("residue set basics") {
    const auto a = rs(70, {0, 5, 63, 64, 69});
    CHECK(a.size() == 5);
    CHECK(a.contains(64));
    CHECK_FALSE(a.contains(1));
    CHECK(a.translated(1).elements() == Elems{0, 1, 6, 64, 65});
    CHECK(a.negated().elements() == Elems{0, 1, 6, 7, 65});
    CHECK(a.complement().size() == 65);
    CHECK(ResidueSet::full(70).is_full());
    CHECK(parse_residue_set("0,1,3", 7) == rs(7, {0, 1, 3}));
    const std::int64_t ints[] = {-1, 8, 15};
    CHECK(ResidueSet::from_integers(7, ints).elements() == Elems{1, 6});
    CHECK_THROWS_AS(rs(7, {7}), InvalidArgument);
  }

  TEST_CASE("sumset examples") {
    CHECK(sumset(rs(5, {0, 1}), rs(5, {0, 2})).elements() == Elems{0, 1, 2, 3});
    CHECK(interval(10, 2, 12).elements() == Elems{0, 1, 2, 10, 11});
    CHECK(seminorm(7, 12) == 5);
    CHECK(seminorm(0, 12) == 0);
    CHECK(period_group(rs(12, {0, 3, 6, 9})).order() == 4);
    CHECK_THROWS_AS(period_group(ResidueSet(12)), InvalidArgument);
    CHECK_THROWS_AS(sumset(rs(5, {0}), rs(6, {0})), InvalidArgument);
  }

  TEST_CASE("sumset matches brute force") {
    oracle::Gen g(1);
    for (int i = 0; i < 400; ++i) {
      const auto q = g.between(1, 130);
      const auto a = g.subset(q), b = g.subset(q);
      CHECK(sumset(rs(q, a), rs(q, b)).elements() == oracle::sumset(a, b, q));
    }
  }

  TEST_CASE("translation and dilation match brute force") {
    oracle::Gen g(2);
    for (int i = 0; i < 300; ++i) {
      const auto q = g.between(1, 140);
      const auto a = g.subset(q);
      const auto t = g.below(q);
      CHECK(rs(q, a).translated(t).elements() == oracle::translate(a, t, q));
      const auto c = g.below(q);
      std::set<std::uint32_t> img;
      for (auto x : a) img.insert(static_cast<std::uint32_t>((std::uint64_t{c} * x) % q));
      CHECK(rs(q, a).dilated(c).elements() == Elems(img.begin(), img.end()));
    }
  }

  TEST_CASE("period group matches brute force") {
    oracle::Gen g(3);
    for (int i = 0; i < 300; ++i) {
      const auto q = g.between(1, 48);
      const auto a = g.nonempty_subset(q);
      const auto h = period_group(rs(q, a));
      CHECK(h.order() == oracle::period_order(a, q));
      CHECK(rs(q, a).translated(h.generator()) == rs(q, a));
    }
  }

  TEST_CASE("kneser holds on random pairs") {
    CHECK(kneser_check(rs(7, {0, 1}), rs(7, {0, 1})).lhs == 3);
    CHECK(kneser_check(rs(7, {0, 1}), rs(7, {0, 1})).rhs == 3);
    oracle::Gen g(4);
    for (int i = 0; i < 300; ++i) {
      const auto q = g.between(1, 60);
      const auto a = g.nonempty_subset(q), b = g.nonempty_subset(q);
      const auto r = kneser_check(rs(q, a), rs(q, b));
      CHECK(r.holds);
      CHECK(r.lhs == oracle::sumset(a, b, q).size());
      CHECK(r.lhs >= r.rhs);
    }
  }

  TEST_CASE("normalize difference") {
    const auto r = normalize_difference(6, 4);
    CHECK(r.value == 10);
    CHECK(r.divisor_part == 2);
    CHECK(r.coprime_part == 5);
    const auto s = normalize_difference(3, 12);
    CHECK(s.value == 39);
    CHECK(s.divisor_part == 3);
    CHECK(s.coprime_part == 13);
    const auto z = normalize_difference(24, 12);
    CHECK(z.zero_convention);
    CHECK(z.value == 12);
    oracle::Gen g(5);
    for (int i = 0; i < 500; ++i) {
      const auto q = g.between(2, 500);
      const std::int64_t a = static_cast<std::int64_t>(g.below(4000)) - 2000;
      const auto n = normalize_difference(a, q);
      CHECK(n.value == n.divisor_part * n.coprime_part);
      CHECK(static_cast<std::int64_t>(n.value % q) == ((a % q) + q) % q);
      CHECK(q % n.divisor_part == 0);
      CHECK(gcd(n.coprime_part, q) == 1);
    }
  }

  TEST_CASE("affine maps") {
    const AffineMap f(12, 5, 3);
    CHECK(f(1) == 8);
    const auto inv = f.inverse();
    for (std::uint32_t x = 0; x < 12; ++x) CHECK(inv(f(x)) == x);
    CHECK_THROWS_AS(AffineMap(12, 4, 0), InvalidArgument);
    oracle::Gen g(6);
    for (int i = 0; i < 100; ++i) {
      const auto q = g.between(2, 20);
      const auto a = rs(q, g.nonempty_subset(q));
      const auto units = oracle::units(q);
      const AffineMap h(q, units[g.below(static_cast<std::uint32_t>(units.size()))], g.below(q));
      CHECK(affine_canonical_form(h.apply(a)) == affine_canonical_form(a));
    }
  }

  TEST_CASE("subgroups") {
    const auto subs = proper_subgroups(12);
    std::vector<std::uint32_t> orders;
    for (const auto& h : subs) orders.push_back(h.order());
    CHECK(orders == std::vector<std::uint32_t>{2, 3, 4, 6});
    CHECK(Subgroup(12, 4).elements().elements() == Elems{0, 3, 6, 9});
    CHECK_THROWS_AS(Subgroup(12, 5), InvalidArgument);
  }

  TEST_CASE("subgroup lemma on a small digital set") {
    // A = {0, 3} in Z_8 is digital with m = 2; H of order 4 is <2>.
    const auto rep = subgroup_lemma_check(rs(8, {0, 3}), Subgroup(8, 4));
    CHECK(rep.smallest_prime == 2);
    CHECK(rep.sumset_with_subgroup == 8);
    CHECK(rep.gcd_bound == 8);
    CHECK(rep.coset_bound);
    CHECK(rep.expansion_bound);
    CHECK(rep.subsets_exhaustive);
    CHECK_THROWS_AS(subgroup_lemma_check(rs(8, {0, 2}), Subgroup(8, 4)), InvalidArgument);
  }

  TEST_CASE("number theory") {
    CHECK(factorize(360) == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(next_prime(64) == 67);
    CHECK(binomial(31, 4) == 31465);
    CHECK(mod_inverse(5, 12) == 5);
    CHECK(units(8) == std::vector<std::uint32_t>{1, 3, 5, 7});
    for (std::uint64_t n = 1; n < 300; ++n) {
      std::uint64_t prod = 1;
      for (auto [p, e] : factorize(n))
        for (unsigned i = 0; i < e; ++i) prod *= p;
      CHECK(prod == n);
    }
  }
}
