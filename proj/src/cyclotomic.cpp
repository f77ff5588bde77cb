#include "kgw/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "kgw/errors.hpp"
#include "kgw/number_theory.hpp"

namespace kgw {

namespace {

using RationalPoly = std::vector<Rational>;  // ascending degree, trimmed

void trim(RationalPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// (quotient, remainder) of a / b over Q; b nonzero and trimmed.
std::pair<RationalPoly, RationalPoly> divmod(RationalPoly a, const RationalPoly& b) {
    trim(a);
    RationalPoly quotient;
    if (a.size() < b.size()) return {quotient, a};
    quotient.assign(a.size() - b.size() + 1, Rational(0));
    const Rational lead_inv = 1 / b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i] == 0) continue;
        Rational factor = a[i] * lead_inv;
        quotient[i - (b.size() - 1)] = factor;
        for (std::size_t j = 0; j < b.size(); ++j) {
            a[i - (b.size() - 1) + j] -= factor * b[j];
        }
    }
    a.resize(b.size() - 1);
    trim(a);
    return {quotient, a};
}

RationalPoly multiply(const RationalPoly& a, const RationalPoly& b) {
    if (a.empty() || b.empty()) return {};
    RationalPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

RationalPoly subtract(RationalPoly a, const RationalPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

void require_prime(unsigned prime) {
    if (!is_prime(prime)) {
        throw Error(ErrorCode::NotPrime, "cyclotomic conductor " + std::to_string(prime) + " is not prime");
    }
}

}  // namespace

CyclotomicNumber::CyclotomicNumber(unsigned prime) : prime_(prime), denominator_(1) {
    require_prime(prime);
    numerators_.assign(prime - 1, Integer(0));
}

CyclotomicNumber::CyclotomicNumber(unsigned prime, const Rational& value) : CyclotomicNumber(prime) {
    numerators_[0] = value.get_num();
    denominator_ = value.get_den();
}

CyclotomicNumber::CyclotomicNumber(unsigned prime, std::vector<Integer> numerators, Integer denominator)
    : prime_(prime), numerators_(std::move(numerators)), denominator_(std::move(denominator)) {
    canonicalize();
}

CyclotomicNumber CyclotomicNumber::zeta_power(unsigned prime, std::int64_t exponent) {
    require_prime(prime);
    std::vector<Integer> redundant(prime, Integer(0));
    redundant[static_cast<std::size_t>(mod_floor(exponent, prime))] = 1;
    return CyclotomicNumber(prime, reduce_redundant(std::move(redundant)), Integer(1));
}

CyclotomicNumber CyclotomicNumber::inverse_one_minus_zeta_power(unsigned prime, std::int64_t exponent) {
    require_prime(prime);
    const std::int64_t j = mod_floor(exponent, prime);
    if (j == 0) throw Error(ErrorCode::DivisionByZero, "1 - z^0 is zero");
    // sum_{i<p} i z^i = -p/(1 - z), applied to z^j.
    std::vector<Integer> redundant(prime, Integer(0));
    for (std::int64_t i = 1; i < static_cast<std::int64_t>(prime); ++i) {
        redundant[static_cast<std::size_t>(mod_floor(i * j, prime))] = -i;
    }
    return CyclotomicNumber(prime, reduce_redundant(std::move(redundant)), Integer(prime));
}

CyclotomicNumber CyclotomicNumber::from_coefficients(unsigned prime, std::span<const Rational> coeffs) {
    require_prime(prime);
    if (coeffs.size() != prime - 1 && coeffs.size() != prime) {
        throw Error(ErrorCode::IndexOutOfRange, "expected " + std::to_string(prime - 1) + " or " +
                                                    std::to_string(prime) + " coefficients, got " +
                                                    std::to_string(coeffs.size()));
    }
    Integer common(1);
    for (const auto& c : coeffs) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> redundant(prime, Integer(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        redundant[i] = coeffs[i].get_num() * (common / coeffs[i].get_den());
    }
    return CyclotomicNumber(prime, reduce_redundant(std::move(redundant)), common);
}

std::vector<Integer> CyclotomicNumber::reduce_redundant(std::vector<Integer> redundant) {
    // z^{p-1} = -(1 + z + ... + z^{p-2})
    const Integer top = redundant.back();
    redundant.pop_back();
    if (top != 0) {
        for (auto& c : redundant) c -= top;
    }
    return redundant;
}

void CyclotomicNumber::canonicalize() {
    Integer g = denominator_;
    for (const auto& c : numerators_) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (denominator_ < 0) g = -abs(g);
    if (g != 1 && g != 0) {
        for (auto& c : numerators_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(denominator_.get_mpz_t(), denominator_.get_mpz_t(), g.get_mpz_t());
    }
    if (is_zero()) denominator_ = 1;
}

void CyclotomicNumber::check_same_field(const CyclotomicNumber& other) const {
    if (prime_ != other.prime_) {
        throw Error(ErrorCode::ConductorMismatch,
                    "Q(z_" + std::to_string(prime_) + ") vs Q(z_" + std::to_string(other.prime_) + ")");
    }
}

Rational CyclotomicNumber::coeff(std::size_t i) const {
    if (i >= numerators_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "coefficient index " + std::to_string(i));
    }
    Rational r(numerators_[i], denominator_);
    r.canonicalize();
    return r;
}

std::vector<Rational> CyclotomicNumber::coefficients() const {
    std::vector<Rational> out;
    out.reserve(numerators_.size());
    for (std::size_t i = 0; i < numerators_.size(); ++i) out.push_back(coeff(i));
    return out;
}

bool CyclotomicNumber::is_zero() const noexcept {
    for (const auto& c : numerators_) {
        if (c != 0) return false;
    }
    return true;
}

bool CyclotomicNumber::is_rational() const noexcept {
    for (std::size_t i = 1; i < numerators_.size(); ++i) {
        if (numerators_[i] != 0) return false;
    }
    return true;
}

Rational CyclotomicNumber::to_rational() const {
    if (!is_rational()) {
        throw Error(ErrorCode::NonRationalCoefficient, to_string() + " is not rational");
    }
    return coeff(0);
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber out = *this;
    for (auto& c : out.numerators_) c = -c;
    return out;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& rhs) {
    check_same_field(rhs);
    if (denominator_ == rhs.denominator_) {
        for (std::size_t i = 0; i < numerators_.size(); ++i) numerators_[i] += rhs.numerators_[i];
    } else {
        for (std::size_t i = 0; i < numerators_.size(); ++i) {
            numerators_[i] = numerators_[i] * rhs.denominator_ + rhs.numerators_[i] * denominator_;
        }
        denominator_ *= rhs.denominator_;
    }
    canonicalize();
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& rhs) { return *this += -rhs; }

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& rhs) {
    check_same_field(rhs);
    const std::size_t n = numerators_.size();
    std::vector<Integer> redundant(prime_, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (numerators_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (rhs.numerators_[j] == 0) continue;
            std::size_t slot = i + j;
            if (slot >= prime_) slot -= prime_;
            mpz_addmul(redundant[slot].get_mpz_t(), numerators_[i].get_mpz_t(), rhs.numerators_[j].get_mpz_t());
        }
    }
    numerators_ = reduce_redundant(std::move(redundant));
    denominator_ *= rhs.denominator_;
    canonicalize();
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& rhs) {
    check_same_field(rhs);
    return *this *= rhs.inverse();
}

CyclotomicNumber CyclotomicNumber::scaled(const Rational& r) const {
    CyclotomicNumber out = *this;
    for (auto& c : out.numerators_) c *= r.get_num();
    out.denominator_ *= r.get_den();
    out.canonicalize();
    return out;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in Q(z_" + std::to_string(prime_) + ")");
    if (is_rational()) return CyclotomicNumber(prime_, Rational(1) / coeff(0));

    RationalPoly r0(prime_, Rational(1));  // Phi_p
    RationalPoly r1;
    for (const auto& c : numerators_) r1.emplace_back(c);
    trim(r1);
    RationalPoly s0;
    RationalPoly s1{Rational(1)};
    // Invariant: s_i * a_num = r_i (mod Phi_p). r1 is kept monic.
    auto make_monic = [](RationalPoly& r, RationalPoly& s) {
        const Rational lead = r.back();
        for (auto& c : r) c /= lead;
        for (auto& c : s) c /= lead;
    };
    make_monic(r1, s1);
    while (r1.size() > 1) {
        auto [quotient, remainder] = divmod(r0, r1);
        RationalPoly next_s = subtract(s0, multiply(quotient, s1));
        r0 = std::move(r1);
        s0 = std::move(s1);
        r1 = std::move(remainder);
        s1 = std::move(next_s);
        if (r1.empty()) {
            // Phi_p is irreducible, so this would mean a non-unit: unreachable for a != 0.
            throw Error(ErrorCode::DivisionByZero, "non-trivial gcd with Phi_p");
        }
        make_monic(r1, s1);
    }
    // r1 == 1 now, so s1 is the inverse of the integer numerator polynomial.
    std::vector<Rational> redundant(prime_, Rational(0));
    for (std::size_t i = 0; i < s1.size(); ++i) redundant[i % prime_] += s1[i] * denominator_;
    return from_coefficients(prime_, redundant);
}

CyclotomicNumber CyclotomicNumber::conjugate(unsigned k) const {
    if (k < 1 || k >= prime_) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "Galois index " + std::to_string(k) + " outside 1.." + std::to_string(prime_ - 1));
    }
    std::vector<Integer> redundant(prime_, Integer(0));
    for (std::size_t i = 0; i < numerators_.size(); ++i) {
        redundant[(i * k) % prime_] = numerators_[i];
    }
    return CyclotomicNumber(prime_, reduce_redundant(std::move(redundant)), denominator_);
}

Rational CyclotomicNumber::trace() const {
    Integer sum(0);
    for (const auto& c : numerators_) sum += c;
    Rational r(numerators_[0] * prime_ - sum, denominator_);
    r.canonicalize();
    return r;
}

std::complex<double> CyclotomicNumber::embed(unsigned k) const {
    std::complex<double> acc(0.0, 0.0);
    const double den = denominator_.get_d();
    for (std::size_t i = 0; i < numerators_.size(); ++i) {
        if (numerators_[i] == 0) continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * k) % prime_) / prime_;
        acc += (numerators_[i].get_d() / den) * std::polar(1.0, angle);
    }
    return acc;
}

std::string CyclotomicNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < numerators_.size(); ++i) {
        if (numerators_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coeff(i).get_str();
        if (i == 1) os << "*z";
        if (i > 1) os << "*z^" << i;
    }
    return first ? "0" : os.str();
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a.prime_ == b.prime_ && a.denominator_ == b.denominator_ && a.numerators_ == b.numerators_;
}

CyclotomicNumber cyc_arith(const CyclotomicNumber& a, const CyclotomicNumber& b, CycOp op) {
    switch (op) {
        case CycOp::add: return a + b;
        case CycOp::sub: return a - b;
        case CycOp::mul: return a * b;
        case CycOp::div:
            if (a.prime() != b.prime()) {
                throw Error(ErrorCode::ConductorMismatch, "division across conductors");
            }
            return a / b;
    }
    return a;
}

CyclotomicNumber galois_conj(const CyclotomicNumber& a, long k) {
    if (k < 1 || k >= static_cast<long>(a.prime())) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "Galois index " + std::to_string(k) + " outside 1.." + std::to_string(a.prime() - 1));
    }
    return a.conjugate(static_cast<unsigned>(k));
}

Rational trace_to_rational(const CyclotomicNumber& a) { return a.trace(); }

}  // namespace kgw
