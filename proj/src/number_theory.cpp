#include "kgw/number_theory.hpp"

#include <numeric>
#include <string>

#include "kgw/errors.hpp"
#include "kgw/rational.hpp"

namespace kgw {

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t f = 3; f <= n / f; f += 2) {
        if (n % f == 0) return false;
    }
    return true;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 0) n = -n;
    for (std::int64_t f = 2; f <= n / f; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t crt_pair(std::int64_t a1, std::int64_t m1, std::int64_t a2, std::int64_t m2) {
    if (std::gcd(m1, m2) != 1) {
        throw Error(ErrorCode::NonCoprimeModuli,
                    "moduli " + std::to_string(m1) + " and " + std::to_string(m2) + " are not coprime");
    }
    std::int64_t product = 0;
    if (__builtin_mul_overflow(m1, m2, &product)) {
        throw Error(ErrorCode::Overflow, "combined modulus does not fit in 64 bits");
    }
    a1 = mod_floor(a1, m1);
    a2 = mod_floor(a2, m2);
    // Garner step in arbitrary precision: x = a1 + m1 * ((a2 - a1) * m1^{-1} mod m2).
    Integer inv;
    Integer big_m1(static_cast<long>(m1)), big_m2(static_cast<long>(m2));
    mpz_invert(inv.get_mpz_t(), big_m1.get_mpz_t(), big_m2.get_mpz_t());
    Integer diff = Integer(static_cast<long>(a2)) - Integer(static_cast<long>(a1));
    Integer t = diff * inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), big_m2.get_mpz_t());
    Integer x = Integer(static_cast<long>(a1)) + big_m1 * t;
    Integer big_prod(static_cast<long>(product));
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), big_prod.get_mpz_t());
    return x.get_si();
}

}  // namespace kgw
