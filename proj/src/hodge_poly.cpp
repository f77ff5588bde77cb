#include "kgw/hodge_poly.hpp"

#include <sstream>
#include <utility>

#include "kgw/errors.hpp"

namespace kgw {

HodgePolynomial::HodgePolynomial(unsigned prime, std::vector<CyclotomicNumber> coeffs)
    : prime_(prime), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (c.prime() != prime_) throw Error(ErrorCode::ConductorMismatch, "polynomial coefficient conductor");
    }
    trim();
}

HodgePolynomial HodgePolynomial::rational(unsigned prime, std::initializer_list<long> coeffs) {
    std::vector<CyclotomicNumber> out;
    for (long c : coeffs) out.emplace_back(prime, c);
    return HodgePolynomial(prime, std::move(out));
}

HodgePolynomial HodgePolynomial::rational(unsigned prime, const std::vector<Rational>& coeffs) {
    std::vector<CyclotomicNumber> out;
    for (const auto& c : coeffs) out.emplace_back(prime, c);
    return HodgePolynomial(prime, std::move(out));
}

HodgePolynomial HodgePolynomial::constant(const CyclotomicNumber& c) { return HodgePolynomial(c.prime(), {c}); }

void HodgePolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void HodgePolynomial::check_same_field(const HodgePolynomial& other) const {
    if (prime_ != other.prime_) throw Error(ErrorCode::ConductorMismatch, "Hodge polynomials over different fields");
}

CyclotomicNumber HodgePolynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : CyclotomicNumber(prime_);
}

bool HodgePolynomial::has_rational_coefficients() const noexcept {
    for (const auto& c : coeffs_) {
        if (!c.is_rational()) return false;
    }
    return true;
}

HodgePolynomial HodgePolynomial::operator-() const {
    HodgePolynomial out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

HodgePolynomial operator+(const HodgePolynomial& a, const HodgePolynomial& b) {
    a.check_same_field(b);
    std::vector<CyclotomicNumber> out(std::max(a.coeffs_.size(), b.coeffs_.size()), CyclotomicNumber(a.prime_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return HodgePolynomial(a.prime_, std::move(out));
}

HodgePolynomial operator-(const HodgePolynomial& a, const HodgePolynomial& b) { return a + (-b); }

HodgePolynomial operator*(const HodgePolynomial& a, const HodgePolynomial& b) {
    a.check_same_field(b);
    if (a.is_zero() || b.is_zero()) return HodgePolynomial(a.prime_);
    std::vector<CyclotomicNumber> out(a.coeffs_.size() + b.coeffs_.size() - 1, CyclotomicNumber(a.prime_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return HodgePolynomial(a.prime_, std::move(out));
}

HodgePolynomial HodgePolynomial::scaled(const CyclotomicNumber& c) const {
    if (c.prime() != prime_) throw Error(ErrorCode::ConductorMismatch, "scalar conductor");
    std::vector<CyclotomicNumber> out;
    out.reserve(coeffs_.size());
    for (const auto& x : coeffs_) out.push_back(x * c);
    return HodgePolynomial(prime_, std::move(out));
}

CyclotomicNumber HodgePolynomial::evaluate(const CyclotomicNumber& q) const {
    CyclotomicNumber acc(prime_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + coeffs_[i];
    return acc;
}

CyclotomicNumber HodgePolynomial::evaluate(const Rational& q) const {
    CyclotomicNumber acc(prime_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc.scaled(q) + coeffs_[i];
    return acc;
}

HodgePolynomial HodgePolynomial::conjugate(unsigned k) const {
    std::vector<CyclotomicNumber> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.conjugate(k));
    return HodgePolynomial(prime_, std::move(out));
}

HodgePolynomial::DivMod HodgePolynomial::divmod(const HodgePolynomial& divisor) const {
    check_same_field(divisor);
    if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<CyclotomicNumber> rem = coeffs_;
    const std::size_t dsize = divisor.coeffs_.size();
    if (rem.size() < dsize) return {HodgePolynomial(prime_), *this};
    std::vector<CyclotomicNumber> quot(rem.size() - dsize + 1, CyclotomicNumber(prime_));
    const CyclotomicNumber lead = divisor.coeffs_.back();
    const bool unit_lead = lead == CyclotomicNumber(prime_, 1L);
    const CyclotomicNumber lead_inv = unit_lead ? lead : lead.inverse();
    for (std::size_t i = rem.size(); i-- >= dsize;) {
        if (rem[i].is_zero()) continue;
        CyclotomicNumber factor = unit_lead ? rem[i] : rem[i] * lead_inv;
        const std::size_t shift = i - (dsize - 1);
        for (std::size_t j = 0; j < dsize; ++j) rem[shift + j] -= factor * divisor.coeffs_[j];
        quot[shift] = std::move(factor);
    }
    rem.resize(dsize - 1, CyclotomicNumber(prime_));
    return {HodgePolynomial(prime_, std::move(quot)), HodgePolynomial(prime_, std::move(rem))};
}

HodgePolynomial HodgePolynomial::gcd(HodgePolynomial a, HodgePolynomial b) {
    a.check_same_field(b);
    while (!b.is_zero()) {
        HodgePolynomial r = a.divmod(b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.coeffs_.back().inverse());
}

std::string HodgePolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[i].to_string() << ")";
        if (i == 1) os << "*q";
        if (i > 1) os << "*q^" << i;
    }
    return os.str();
}

bool operator==(const HodgePolynomial& a, const HodgePolynomial& b) {
    return a.prime_ == b.prime_ && a.coeffs_ == b.coeffs_;
}

HodgeRationalFunction::HodgeRationalFunction(unsigned prime)
    : numerator_(prime), denominator_(HodgePolynomial::rational(prime, {1})) {}

HodgeRationalFunction::HodgeRationalFunction(HodgePolynomial numerator, HodgePolynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (numerator_.prime() != denominator_.prime()) {
        throw Error(ErrorCode::ConductorMismatch, "numerator and denominator over different fields");
    }
    if (denominator_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
}

HodgeRationalFunction HodgeRationalFunction::polynomial(HodgePolynomial numerator) {
    const unsigned p = numerator.prime();
    return HodgeRationalFunction(std::move(numerator), HodgePolynomial::rational(p, {1}));
}

HodgeRationalFunction operator+(const HodgeRationalFunction& f, const HodgeRationalFunction& g) {
    if (f.prime() != g.prime()) throw Error(ErrorCode::ConductorMismatch, "rational function sum");
    if (f.denominator_ == g.denominator_) {
        return HodgeRationalFunction(f.numerator_ + g.numerator_, f.denominator_);
    }
    return HodgeRationalFunction(f.numerator_ * g.denominator_ + g.numerator_ * f.denominator_,
                                 f.denominator_ * g.denominator_);
}

HodgeRationalFunction operator*(const HodgeRationalFunction& f, const HodgeRationalFunction& g) {
    if (f.prime() != g.prime()) throw Error(ErrorCode::ConductorMismatch, "rational function product");
    return HodgeRationalFunction(f.numerator_ * g.numerator_, f.denominator_ * g.denominator_);
}

HodgeRationalFunction HodgeRationalFunction::scaled(const CyclotomicNumber& c) const {
    return HodgeRationalFunction(numerator_.scaled(c), denominator_);
}

CyclotomicNumber HodgeRationalFunction::evaluate(const Rational& q) const {
    CyclotomicNumber den = denominator_.evaluate(q);
    if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "denominator vanishes at q = " + q.get_str());
    return numerator_.evaluate(q) / den;
}

CyclotomicNumber HodgeRationalFunction::evaluate(const CyclotomicNumber& q) const {
    CyclotomicNumber den = denominator_.evaluate(q);
    if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "denominator vanishes at q = " + q.to_string());
    return numerator_.evaluate(q) / den;
}

HodgeRationalFunction HodgeRationalFunction::conjugate(unsigned k) const {
    return HodgeRationalFunction(numerator_.conjugate(k), denominator_.conjugate(k));
}

bool HodgeRationalFunction::cancel_common_factor(const HodgePolynomial& f) {
    if (f.degree() < 1) return false;
    auto num = numerator_.divmod(f);
    if (!num.remainder.is_zero()) return false;
    auto den = denominator_.divmod(f);
    if (!den.remainder.is_zero()) return false;
    numerator_ = std::move(num.quotient);
    denominator_ = std::move(den.quotient);
    return true;
}

HodgeRationalFunction HodgeRationalFunction::normalized() const {
    if (numerator_.is_zero()) return HodgeRationalFunction(prime());
    HodgePolynomial g = HodgePolynomial::gcd(numerator_, denominator_);
    HodgePolynomial num = numerator_.divmod(g).quotient;
    HodgePolynomial den = denominator_.divmod(g).quotient;
    const CyclotomicNumber lead_inv = den.coefficients().back().inverse();
    return HodgeRationalFunction(num.scaled(lead_inv), den.scaled(lead_inv));
}

bool HodgeRationalFunction::equivalent_to(const HodgeRationalFunction& other) const {
    return numerator_ * other.denominator_ == other.numerator_ * denominator_;
}

HodgeRationalFunction hodge_rat_arith(const HodgeRationalFunction& f, const HodgeRationalFunction& g, HodgeOp op) {
    return op == HodgeOp::add ? f + g : f * g;
}

}  // namespace kgw
