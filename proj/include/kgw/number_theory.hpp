#pragma once

#include <cstdint>
#include <vector>

namespace kgw {

bool is_prime(std::int64_t n) noexcept;

// Representative of a mod m in [0, m). m > 0.
std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept;

// Distinct prime divisors of |n| in increasing order; empty for |n| <= 1.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

// x with x = a1 (mod m1), x = a2 (mod m2), 0 <= x < m1*m2. Moduli must be
// coprime; throws NonCoprimeModuli otherwise and Overflow if m1*m2 does not
// fit.
std::int64_t crt_pair(std::int64_t a1, std::int64_t m1, std::int64_t a2, std::int64_t m2);

}  // namespace kgw
