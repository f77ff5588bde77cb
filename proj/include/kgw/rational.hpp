#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kgw {

using Integer = mpz_class;
using Rational = mpq_class;

// Always "num/den", including "n/1" for integers. Used for every rational that
// leaves the process so that outputs are byte-stable.
std::string to_fraction_string(const Rational& r);

// Accepts "n", "-n", "n/d". Throws kgw::Error(InvalidConfig) on malformed input.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& r);

// num/den in lowest terms (the two-argument mpq constructor does not reduce).
Rational make_rational(long num, long den);
Rational make_rational(const Integer& num, const Integer& den);

}  // namespace kgw
