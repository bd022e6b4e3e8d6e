#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zqadd/ap_structure.hpp"
#include "zqadd/chains.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/number_theory.hpp"
#include "zqadd/zq_core.hpp"

using namespace zqadd;
using oracle::Elems;
using oracle::rs;

TEST_SUITE("chains") {
  TEST_CASE("xi2 and xi3 against brute force") {
    oracle::Gen g(41);
    for (int i = 0; i < 150; ++i) {
      const auto q = g.between(4, 20);
      auto a = g.nonempty_subset(q);
      if (a.size() == q) a.pop_back();
      const auto set = rs(q, a);
      const auto r = xi2_xi3(set);
      CHECK(r.xi2 == oracle::xi(a, 2, q));
      // xi3 as min over B = {0, d1, d2}
      std::size_t best = q;
      for (std::uint32_t d1 = 1; d1 < q; ++d1)
        for (std::uint32_t d2 = d1 + 1; d2 < q; ++d2)
          best = std::min(best, oracle::sumset(a, {0, d1, d2}, q).size());
      CHECK(r.xi3 == best);
      CHECK(has_xi2_eq_xi3(set) == r.equal());
      if (r.witness) {
        const auto [d1, d2] = *r.witness;
        CHECK(oracle::sumset(a, {0, d1, d2}, q).size() == r.xi2);
      }
    }
  }

  TEST_CASE("construction at m = 3") {
    const auto c = build_construction(3);
    CHECK(c.disjoint);
    CHECK(c.within_ground);
    CHECK(c.materialized.size() == 36);
    CHECK(c.closed_form_size == 36);
    const auto p = project_to_prime(c);
    CHECK(p.p == 67);
    CHECK(p.in_short_interval);
    CHECK(p.complement.size() == 31);
    const auto fam = extract_chain_structure(p.complement, 1, 8);
    CHECK(fam.ok());
    const auto x = xi2_xi3(p.complement);
    CHECK(x.xi2 == 43);
    CHECK(x.xi3 == 43);
  }

  TEST_CASE("construction sizes match closed form") {
    for (std::uint32_t m = 2; m <= 8; ++m) {
      const auto c = build_construction(m);
      CHECK(c.disjoint);
      CHECK(c.within_ground);
      CHECK(c.materialized.size() == c.closed_form_size);
      CHECK(std::is_sorted(c.materialized.begin(), c.materialized.end()));
    }
    CHECK(std::abs(build_construction(8).density() - 13.0 / 18.0) < 0.02);
  }

  TEST_CASE("chain structure on random equal instances") {
    oracle::Gen g(42);
    int found = 0;
    for (int i = 0; i < 3000 && found < 40; ++i) {
      const auto q = g.between(6, 30);
      auto a = g.nonempty_subset(q);
      if (a.size() < 2 || a.size() + 2 >= q) continue;
      const auto set = rs(q, a);
      bool has_coset = false;
      for (std::uint32_t p = 2; p <= q; ++p) {
        if (q % p != 0 || !is_prime(p)) continue;
        for (std::uint32_t t = 0; t < q / p; ++t)
          has_coset = has_coset || Subgroup(q, p).elements().translated(t).is_subset_of(set);
      }
      if (has_coset) continue;
      const auto w = xi2_eq_xi3(set);
      if (!w) continue;
      ++found;
      const auto fam = extract_chain_structure(set, w->first, w->second);
      CHECK_MESSAGE(fam.ok(), set.to_string());
      CHECK(fam.reconstructs);
    }
    CHECK(found > 5);
  }

  TEST_CASE("mu values") {
    const std::uint32_t primes[] = {5, 7, 11, 13};
    const std::uint32_t want[] = {4, 4, 8, 7};
    for (int i = 0; i < 4; ++i) {
      const auto e = compute_mu(primes[i], MuStrategy::exhaustive);
      const auto b = compute_mu(primes[i], MuStrategy::bounded);
      CHECK(e.mu == want[i]);
      CHECK(b.mu == want[i]);
      CHECK(e.witnesses == b.witnesses);
      CHECK(e.bounds_hold());
    }
  }

  TEST_CASE("mu against brute force at p = 7") {
    const std::uint32_t p = 7;
    std::uint32_t best = p + 1;
    for (std::uint64_t mask = 1; mask < (1U << p); ++mask) {
      const auto a = oracle::from_mask(p, mask);
      if (a.size() == p) continue;
      if (oracle::xi(a, 2, p) == oracle::xi(a, 3, p))
        best = std::min<std::uint32_t>(best, static_cast<std::uint32_t>(a.size()));
    }
    CHECK(compute_mu(p, MuStrategy::exhaustive).mu == best);
  }

  TEST_CASE("crt embedding") {
    const auto e = crt_embed(rs(3, {1}), 4);
    REQUIRE(e.size() == 1);
    CHECK(e.elements()[0] % 3 == 1);
    CHECK(e.elements()[0] % 4 == 0);
    CHECK(e.modulus() == 12);
  }
}
