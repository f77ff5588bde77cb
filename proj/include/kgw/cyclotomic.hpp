#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kgw/rational.hpp"

namespace kgw {

/// Element of the prime-conductor cyclotomic field Q(z), z a primitive p-th
/// root of unity, stored on the power basis 1, z, ..., z^{p-2}.
///
/// The representative is canonical: z^{p-1} is always rewritten through
/// Phi_p(z) = 0, and the coefficients are held as integers over one positive
/// common denominator with no common factor. Equality is therefore plain
/// coefficient equality. Values are immutable once built; every operation
/// returns a fresh value, so instances can be shared freely across threads.
class CyclotomicNumber {
public:
    /// Zero of Q(z_p). Throws NotPrime unless p is prime.
    explicit CyclotomicNumber(unsigned prime);
    CyclotomicNumber(unsigned prime, const Rational& value);
    CyclotomicNumber(unsigned prime, long value) : CyclotomicNumber(prime, Rational(value)) {}

    /// z^e for any integer e (reduced mod p).
    static CyclotomicNumber zeta_power(unsigned prime, std::int64_t exponent);

    /// 1/(1 - z^e) in closed form. Throws DivisionByZero when p | e.
    static CyclotomicNumber inverse_one_minus_zeta_power(unsigned prime, std::int64_t exponent);

    /// Accepts p-1 coefficients (already on the power basis) or p
    /// coefficients (the redundant basis mod X^p - 1, reduced here).
    static CyclotomicNumber from_coefficients(unsigned prime, std::span<const Rational> coeffs);

    unsigned prime() const noexcept { return prime_; }
    std::size_t dimension() const noexcept { return numerators_.size(); }

    Rational coeff(std::size_t i) const;
    std::vector<Rational> coefficients() const;

    bool is_zero() const noexcept;
    bool is_rational() const noexcept;
    /// The rational value; throws NonRationalCoefficient if not rational.
    Rational to_rational() const;

    CyclotomicNumber operator-() const;
    CyclotomicNumber& operator+=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator-=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator*=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator/=(const CyclotomicNumber& rhs);

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }

    CyclotomicNumber scaled(const Rational& r) const;

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_p over Q[x]. Throws DivisionByZero for zero.
    CyclotomicNumber inverse() const;

    /// Galois automorphism z -> z^k, 1 <= k <= p-1.
    CyclotomicNumber conjugate(unsigned k) const;

    /// Tr_{Q(z)/Q} = p*a_0 - (a_0 + ... + a_{p-2}).
    Rational trace() const;

    /// Complex embedding z -> exp(2 pi i k / p).
    std::complex<double> embed(unsigned k = 1) const;

    /// "a0 + a1*z + ..." with exact rationals, zero terms omitted; "0" for zero.
    std::string to_string() const;

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

private:
    CyclotomicNumber(unsigned prime, std::vector<Integer> numerators, Integer denominator);

    void check_same_field(const CyclotomicNumber& other) const;
    void canonicalize();
    // Fold a length-p numerator vector on the redundant basis into p-1 slots.
    static std::vector<Integer> reduce_redundant(std::vector<Integer> redundant);

    unsigned prime_;
    std::vector<Integer> numerators_;
    Integer denominator_;
};

enum class CycOp { add, sub, mul, div };

CyclotomicNumber cyc_arith(const CyclotomicNumber& a, const CyclotomicNumber& b, CycOp op);

/// z -> z^k. Throws IndexOutOfRange unless 1 <= k <= p-1.
CyclotomicNumber galois_conj(const CyclotomicNumber& a, long k);

Rational trace_to_rational(const CyclotomicNumber& a);

}  // namespace kgw
