#include "zqadd/number_theory.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "zqadd/error.hpp"

namespace zqadd {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p < 2) return 0;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  while (!is_prime(n)) ++n;
  return n;
}

std::uint64_t smallest_prime_divisor(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("smallest_prime_divisor: n < 2");
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> units(std::uint32_t q) {
  std::vector<std::uint32_t> out;
  if (q == 1) return {0};
  for (std::uint32_t u = 1; u < q; ++u)
    if (std::gcd(u, q) == 1) out.push_back(u);
  return out;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t q) {
  std::int64_t r0 = q, r1 = a % q, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t t = r0 / r1;
    std::tie(r0, r1) = std::pair(r1, r0 - t * r1);
    std::tie(s0, s1) = std::pair(s1, s0 - t * s1);
  }
  if (r0 != 1) {
    if (q == 1) return 0;
    throw InvalidArgument("mod_inverse: " + std::to_string(a) + " is not a unit mod " +
                          std::to_string(q));
  }
  s0 %= static_cast<std::int64_t>(q);
  if (s0 < 0) s0 += q;
  return static_cast<std::uint32_t>(s0);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace zqadd
