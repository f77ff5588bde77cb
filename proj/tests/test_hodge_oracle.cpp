#include <doctest.h>

#include <map>

#include "kgw/errors.hpp"
#include "kgw/hodge_oracle.hpp"
#include "support.hpp"

using namespace kgw;

namespace {

// (1 - q q1)(1 - q^4 - q^6 - q1^2 q^6 - q1^2 q^8 - q1^4 q^8 + q^2 q1^2 + q^4 q1^4 + q^6 q1^6 + q^8 q1^8),
// keyed by (q1 power, q power). Transcribed independently of the library table.
std::map<std::pair<int, int>, long> display_numerator() {
    const std::map<std::pair<int, int>, long> inner{
        {{0, 0}, 1},  {{0, 4}, -1}, {{0, 6}, -1}, {{2, 6}, -1}, {{2, 8}, -1},
        {{4, 8}, -1}, {{2, 2}, 1},  {{4, 4}, 1},  {{6, 6}, 1},  {{8, 8}, 1},
    };
    std::map<std::pair<int, int>, long> out;
    for (const auto& [key, c] : inner) {
        out[key] += c;
        out[{key.first + 1, key.second + 1}] -= c;
    }
    return out;
}

// The display as a function of q at a given q1.
HodgeRationalFunction display_at(const CyclotomicNumber& q1, unsigned p) {
    std::vector<CyclotomicNumber> coeffs(10, CyclotomicNumber(p));
    for (const auto& [key, c] : display_numerator()) {
        CyclotomicNumber term(p, c);
        for (int i = 0; i < key.first; ++i) term *= q1;
        coeffs[static_cast<std::size_t>(key.second)] += term;
    }
    const CyclotomicNumber one(p, 1L);
    CyclotomicNumber q1_4 = one;
    for (int i = 0; i < 4; ++i) q1_4 *= q1;
    CyclotomicNumber q1_6 = q1_4 * q1 * q1;
    const CyclotomicNumber scale = ((one - q1_4) * (one - q1_6)).inverse();
    return HodgeRationalFunction(HodgePolynomial(p, coeffs).scaled(scale), canonical_denominator(p));
}

// q1^a coefficient of the display: expand 1/((1 - q1^4)(1 - q1^6)) by counting 4i + 6j = n.
HodgeRationalFunction coefficient_oracle(int a, unsigned p) {
    auto count = [](int n) {
        long c = 0;
        for (int i = 0; 4 * i <= n; ++i) {
            if ((n - 4 * i) % 6 == 0) ++c;
        }
        return c;
    };
    std::vector<Rational> q_coeffs(10, Rational(0));
    for (const auto& [key, c] : display_numerator()) {
        if (key.first <= a) q_coeffs[static_cast<std::size_t>(key.second)] += Rational(c * count(a - key.first));
    }
    return HodgeRationalFunction(HodgePolynomial::rational(p, q_coeffs), canonical_denominator(p));
}

HodgeRationalFunction subset_expansion(const std::vector<CyclotomicNumber>& cs, unsigned p) {
    HodgeRationalFunction total(HodgePolynomial(p), canonical_denominator(p));
    const std::size_t n = cs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        CyclotomicNumber weight(p, 1L);
        int size = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1U) {
                weight *= cs[i];
                ++size;
            }
        }
        if (size % 2) weight = -weight;
        total = total + coefficient_oracle(size, p).scaled(weight);
    }
    return total;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("closed form at q1 = 0") {
    const unsigned p = 41;
    const HodgeRationalFunction f = chi_hodge_psi(CyclotomicNumber(p), p);
    CHECK(f.equivalent_to(canonical_prefactor(p)));
    CHECK(f.denominator() == canonical_denominator(p));
    CHECK(f.evaluate(Rational(0)) == CyclotomicNumber(p, 1L));
}

TEST_CASE("closed form matches the transcribed display") {
    const unsigned p = 41;
    for (long e = 1; e < 41; e += 7) {
        const CyclotomicNumber q1 = CyclotomicNumber::zeta_power(p, e);
        CHECK(chi_hodge_psi(q1, p).equivalent_to(display_at(q1, p)));
    }
    for (int trial = 0; trial < 3; ++trial) {
        const CyclotomicNumber q1 = kgw::test::random_cyclotomic(p, 3);
        CHECK(chi_hodge_psi(q1, p).equivalent_to(display_at(q1, p)));
    }
}

TEST_CASE("q1 coefficients of the generating function") {
    const unsigned p = 41;
    for (unsigned a = 0; a <= 9; ++a) CHECK(lee_qu_coefficient(a, p).equivalent_to(coefficient_oracle(a, p)));
    // d/dq1 at q1 = 0 is -q times the q1 = 0 value.
    const HodgeRationalFunction minus_q(HodgePolynomial::rational(p, {0, -1}), HodgePolynomial::rational(p, {1}));
    CHECK(lee_qu_coefficient(1, p).equivalent_to(minus_q * canonical_prefactor(p)));
}

TEST_CASE("product display") {
    const unsigned p = 41;
    CHECK(chi_hodge_product({}, p).equivalent_to(canonical_prefactor(p)));
    const CyclotomicNumber c = CyclotomicNumber::zeta_power(p, 5);
    const HodgeRationalFunction linear(HodgePolynomial(p, {CyclotomicNumber(p, 1L), c}),
                                       HodgePolynomial::rational(p, {1}));
    CHECK(chi_hodge_product({c}, p).equivalent_to(canonical_prefactor(p) * linear));
    CHECK(chi_hodge_product({c, c}, p).denominator() == canonical_denominator(p));
}

TEST_CASE("product display equals the subset expansion for up to three factors") {
    const unsigned p = 41;
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t size = static_cast<std::size_t>(trial % 4);
        std::vector<CyclotomicNumber> cs;
        for (std::size_t i = 0; i < size; ++i) cs.push_back(kgw::test::random_cyclotomic(p, 50));
        CHECK(chi_hodge_product(cs, p).equivalent_to(subset_expansion(cs, p)));
    }
    // Four factors reach the Psi^4 coefficient, where the two displays part ways.
    std::vector<CyclotomicNumber> four;
    for (long e : {1, 2, 3, 4}) four.push_back(CyclotomicNumber::zeta_power(p, e));
    CHECK_FALSE(chi_hodge_product(four, p).equivalent_to(subset_expansion(four, p)));
}

TEST_CASE("Galois naturality") {
    const unsigned p = 41;
    const CyclotomicNumber q1 = CyclotomicNumber::zeta_power(p, 3) + CyclotomicNumber(p, 2L);
    for (unsigned k : {2u, 17u, 40u}) {
        CHECK(chi_hodge_psi(q1.conjugate(k), p) == chi_hodge_psi(q1, p).conjugate(k));
    }
}

TEST_CASE("vertex dispatch") {
    const unsigned p = 41;
    const CyclotomicNumber q1 = CyclotomicNumber::zeta_power(p, 9);
    const CyclotomicNumber c = CyclotomicNumber::zeta_power(p, 30);

    VertexChiRequest psi_only{true, q1, {}};
    CHECK(chi_vertex(psi_only, p).equivalent_to(chi_hodge_psi(q1, p)));

    VertexChiRequest product_only{true, std::nullopt, {c}};
    CHECK(chi_vertex(product_only, p).equivalent_to(chi_hodge_product({c}, p)));

    // chi((1 - c Psi)/(1 - q1 Psi)/(1 - q E)) = G(q1) - c (G(q1) - G_0)/q1.
    VertexChiRequest both{true, q1, {c}};
    const HodgeRationalFunction g = display_at(q1, p);
    const HodgeRationalFunction tail = (g + coefficient_oracle(0, p).scaled(CyclotomicNumber(p, -1L)))
                                           .scaled(q1.inverse());
    CHECK(chi_vertex(both, p).equivalent_to(g + tail.scaled(-c)));

    VertexChiRequest off{false, std::nullopt, {c}};
    const HodgeRationalFunction at_zero = chi_vertex(off, p);
    CHECK(at_zero.denominator() == HodgePolynomial::rational(p, {1}));
    CHECK(at_zero.numerator().degree() <= 0);
    CHECK(at_zero.evaluate(Rational(0)) == chi_hodge_product({c}, p).evaluate(Rational(0)));
}

TEST_CASE("poles at unit roots") {
    const unsigned p = 41;
    CHECK(code_of([&] { chi_hodge_psi(CyclotomicNumber(p, 1L), p); }) == ErrorCode::PoleAtUnitRoot);
    CHECK(code_of([&] { chi_hodge_psi(CyclotomicNumber(p, -1L), p); }) == ErrorCode::PoleAtUnitRoot);
    const unsigned five = 5;
    CHECK_NOTHROW(chi_hodge_psi(CyclotomicNumber::zeta_power(five, 1), five));
}
