#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kgw/cyclotomic.hpp"
#include "kgw/hodge_poly.hpp"
#include "kgw/rational.hpp"

namespace kgw::test {

inline std::optional<std::uint64_t>& seed_flag() {
    static std::optional<std::uint64_t> value;
    return value;
}

// Pinned default; --seed N or KGW_TEST_SEED explore other draws (the flag wins).
inline std::uint64_t seed() {
    if (seed_flag()) return *seed_flag();
    if (const char* env = std::getenv("KGW_TEST_SEED")) return std::stoull(env);
    return 20261016ULL;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(seed());
    return engine;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational random_rational(long bound = 1000, long max_den = 7) {
    return make_rational(uniform(-bound, bound), uniform(1, max_den));
}

inline CyclotomicNumber random_cyclotomic(unsigned p, long bound = 1000) {
    std::vector<Rational> coeffs;
    for (unsigned i = 0; i + 1 < p; ++i) coeffs.push_back(random_rational(bound));
    return CyclotomicNumber::from_coefficients(p, coeffs);
}

inline CyclotomicNumber random_nonzero_cyclotomic(unsigned p, long bound = 1000) {
    for (;;) {
        CyclotomicNumber c = random_cyclotomic(p, bound);
        if (!c.is_zero()) return c;
    }
}

inline HodgePolynomial random_hodge_polynomial(unsigned p, int degree, long bound = 50) {
    std::vector<CyclotomicNumber> coeffs;
    for (int i = 0; i <= degree; ++i) coeffs.push_back(random_cyclotomic(p, bound));
    return HodgePolynomial(p, coeffs);
}

inline double relative_error(std::complex<double> value, std::complex<double> target) {
    const double scale = std::max(std::abs(target), 1e-12);
    return std::abs(value - target) / scale;
}

}  // namespace kgw::test
