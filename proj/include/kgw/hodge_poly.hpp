#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "kgw/cyclotomic.hpp"

namespace kgw {

/// Polynomial in the Hodge variable q with coefficients in Q(z_p).
/// Trailing zeros are trimmed; the zero polynomial has no coefficients.
class HodgePolynomial {
public:
    explicit HodgePolynomial(unsigned prime) : prime_(prime) {}
    HodgePolynomial(unsigned prime, std::vector<CyclotomicNumber> coeffs);

    /// Rational-coefficient polynomial, e.g. rational(p, {1, 0, 0, 0, -1}) = 1 - q^4.
    static HodgePolynomial rational(unsigned prime, std::initializer_list<long> coeffs);
    static HodgePolynomial rational(unsigned prime, const std::vector<Rational>& coeffs);
    static HodgePolynomial constant(const CyclotomicNumber& c);

    unsigned prime() const noexcept { return prime_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<CyclotomicNumber>& coefficients() const noexcept { return coeffs_; }
    /// Coefficient of q^i (zero beyond the degree).
    CyclotomicNumber coeff(std::size_t i) const;

    bool has_rational_coefficients() const noexcept;

    HodgePolynomial operator-() const;
    friend HodgePolynomial operator+(const HodgePolynomial& a, const HodgePolynomial& b);
    friend HodgePolynomial operator-(const HodgePolynomial& a, const HodgePolynomial& b);
    friend HodgePolynomial operator*(const HodgePolynomial& a, const HodgePolynomial& b);
    HodgePolynomial scaled(const CyclotomicNumber& c) const;

    CyclotomicNumber evaluate(const CyclotomicNumber& q) const;
    CyclotomicNumber evaluate(const Rational& q) const;

    HodgePolynomial conjugate(unsigned k) const;

    /// Euclidean division over Q(z_p)[q]. Throws DivisionByZero for b = 0.
    struct DivMod;
    DivMod divmod(const HodgePolynomial& divisor) const;

    /// Monic gcd (zero if both are zero).
    static HodgePolynomial gcd(HodgePolynomial a, HodgePolynomial b);

    std::string to_string() const;

    friend bool operator==(const HodgePolynomial& a, const HodgePolynomial& b);

private:
    void trim();
    void check_same_field(const HodgePolynomial& other) const;

    unsigned prime_;
    std::vector<CyclotomicNumber> coeffs_;
};

struct HodgePolynomial::DivMod {
    HodgePolynomial quotient;
    HodgePolynomial remainder;
};

/// numerator / denominator in q. Never reduced implicitly: the canonical
/// prefactor (1-q^4-q^6)/((1-q^4)(1-q^6)) has to survive for reporting, so
/// lowest terms are only taken on an explicit normalized() call.
class HodgeRationalFunction {
public:
    explicit HodgeRationalFunction(unsigned prime);
    /// Throws DivisionByZero for a zero denominator.
    HodgeRationalFunction(HodgePolynomial numerator, HodgePolynomial denominator);
    static HodgeRationalFunction polynomial(HodgePolynomial numerator);

    unsigned prime() const noexcept { return numerator_.prime(); }
    const HodgePolynomial& numerator() const noexcept { return numerator_; }
    const HodgePolynomial& denominator() const noexcept { return denominator_; }

    /// Denominator lies in Q[q]; required by the congruence stage.
    bool has_rational_denominator() const noexcept { return denominator_.has_rational_coefficients(); }
    bool is_zero() const noexcept { return numerator_.is_zero(); }

    /// Same denominators add numerators directly, otherwise cross-multiply.
    friend HodgeRationalFunction operator+(const HodgeRationalFunction& f, const HodgeRationalFunction& g);
    friend HodgeRationalFunction operator*(const HodgeRationalFunction& f, const HodgeRationalFunction& g);
    HodgeRationalFunction scaled(const CyclotomicNumber& c) const;

    /// Throws DivisionByZero if the denominator vanishes at q.
    CyclotomicNumber evaluate(const Rational& q) const;
    CyclotomicNumber evaluate(const CyclotomicNumber& q) const;

    HodgeRationalFunction conjugate(unsigned k) const;

    /// Divides numerator and denominator by f when both are exactly divisible.
    /// Returns whether a cancellation happened.
    bool cancel_common_factor(const HodgePolynomial& f);

    /// Lowest terms with a monic denominator.
    HodgeRationalFunction normalized() const;

    /// Equality as rational functions (cross-multiplication).
    bool equivalent_to(const HodgeRationalFunction& other) const;

    friend bool operator==(const HodgeRationalFunction& a, const HodgeRationalFunction& b) {
        return a.numerator_ == b.numerator_ && a.denominator_ == b.denominator_;
    }

private:
    HodgePolynomial numerator_;
    HodgePolynomial denominator_;
};

enum class HodgeOp { add, mul };

HodgeRationalFunction hodge_rat_arith(const HodgeRationalFunction& f, const HodgeRationalFunction& g, HodgeOp op);

}  // namespace kgw
