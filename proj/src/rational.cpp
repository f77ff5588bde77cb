#include "kgw/rational.hpp"

#include "kgw/errors.hpp"

namespace kgw {

std::string to_fraction_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw Error(ErrorCode::InvalidConfig, "empty rational literal");
    }
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
        throw Error(ErrorCode::InvalidConfig, "malformed rational literal '" + s + "'");
    }
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Rational make_rational(long num, long den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace kgw
