#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace zqadd {

using PrimePower = std::pair<std::uint64_t, unsigned>;  // (p, exponent)

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

// Trial division; moduli here are desk-scale.
std::vector<PrimePower> factorize(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
unsigned valuation(std::uint64_t n, std::uint64_t p);

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);  // least prime >= n
std::uint64_t smallest_prime_divisor(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint32_t> units(std::uint32_t q);
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t q);  // throws if not a unit

// C(n, k) saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace zqadd
