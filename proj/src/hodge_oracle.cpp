#include "kgw/hodge_oracle.hpp"

#include <array>

#include "kgw/errors.hpp"

namespace kgw {

namespace {

struct Term {
    int q1_degree;
    int q_degree;
    long coeff;
};

// 1 - q^4 - q^6 - q1^2 q^6 - q1^2 q^8 - q1^4 q^8 + q^2 q1^2 + q^4 q1^4 + q^6 q1^6 + q^8 q1^8
constexpr std::array<Term, 10> kLeeQuInner{{
    {0, 0, 1}, {0, 4, -1}, {0, 6, -1}, {2, 6, -1}, {2, 8, -1},
    {4, 8, -1}, {2, 2, 1}, {4, 4, 1}, {6, 6, 1}, {8, 8, 1},
}};

constexpr int kMaxQ1Degree = 9;
constexpr int kMaxQDegree = 9;

// Integer coefficients of (1 - q q1) * inner, indexed [q1 degree][q degree].
using Bivariate = std::array<std::array<long, kMaxQDegree + 1>, kMaxQ1Degree + 1>;

const Bivariate& lee_qu_numerator() {
    static const Bivariate table = [] {
        Bivariate t{};
        for (const auto& term : kLeeQuInner) {
            t[term.q1_degree][term.q_degree] += term.coeff;
            t[term.q1_degree + 1][term.q_degree + 1] -= term.coeff;
        }
        return t;
    }();
    return table;
}

// Number of (x, y) >= 0 with 4x + 6y = n: coefficients of 1/((1-x^4)(1-x^6)).
long partitions_4_6(unsigned n) {
    long count = 0;
    for (unsigned x = 0; 4 * x <= n; ++x) {
        if ((n - 4 * x) % 6 == 0) ++count;
    }
    return count;
}

HodgeRationalFunction over_canonical(HodgePolynomial numerator) {
    const unsigned p = numerator.prime();
    return HodgeRationalFunction(std::move(numerator), canonical_denominator(p));
}

HodgeRationalFunction at_q_zero(const HodgeRationalFunction& f) {
    return HodgeRationalFunction::polynomial(HodgePolynomial::constant(f.evaluate(Rational(0))));
}

// Elementary symmetric polynomials e_0..e_m of the values.
std::vector<CyclotomicNumber> elementary_symmetric(const std::vector<CyclotomicNumber>& values, unsigned prime) {
    std::vector<CyclotomicNumber> e{CyclotomicNumber(prime, 1L)};
    for (const auto& v : values) {
        e.emplace_back(prime);
        for (std::size_t a = e.size() - 1; a > 0; --a) e[a] += e[a - 1] * v;
    }
    return e;
}

}  // namespace

HodgePolynomial canonical_denominator(unsigned prime) {
    return HodgePolynomial::rational(prime, {1, 0, 0, 0, -1}) * HodgePolynomial::rational(prime, {1, 0, 0, 0, 0, 0, -1});
}

HodgePolynomial canonical_prefactor_numerator(unsigned prime) {
    return HodgePolynomial::rational(prime, {1, 0, 0, 0, -1, 0, -1});
}

HodgeRationalFunction canonical_prefactor(unsigned prime) { return over_canonical(canonical_prefactor_numerator(prime)); }

HodgeRationalFunction chi_hodge_psi(const CyclotomicNumber& q1, unsigned prime) {
    if (q1.prime() != prime) throw Error(ErrorCode::ConductorMismatch, "q1 conductor");
    const CyclotomicNumber one(prime, 1L);
    CyclotomicNumber q1_pow2 = q1 * q1;
    CyclotomicNumber q1_pow4 = q1_pow2 * q1_pow2;
    CyclotomicNumber q1_pow6 = q1_pow4 * q1_pow2;
    const CyclotomicNumber f4 = one - q1_pow4;
    const CyclotomicNumber f6 = one - q1_pow6;
    if (f4.is_zero()) throw Error(ErrorCode::PoleAtUnitRoot, "q1^4 = 1 for q1 = " + q1.to_string());
    if (f6.is_zero()) throw Error(ErrorCode::PoleAtUnitRoot, "q1^6 = 1 for q1 = " + q1.to_string());
    const CyclotomicNumber clear = (f4 * f6).inverse();

    std::vector<CyclotomicNumber> q1_powers{one};
    for (int i = 1; i <= kMaxQ1Degree; ++i) q1_powers.push_back(q1_powers.back() * q1);

    const Bivariate& table = lee_qu_numerator();
    std::vector<CyclotomicNumber> coeffs(kMaxQDegree + 1, CyclotomicNumber(prime));
    for (int i = 0; i <= kMaxQ1Degree; ++i) {
        for (int j = 0; j <= kMaxQDegree; ++j) {
            if (table[i][j] != 0) coeffs[j] += q1_powers[i].scaled(Rational(table[i][j]));
        }
    }
    for (auto& c : coeffs) c *= clear;
    return over_canonical(HodgePolynomial(prime, std::move(coeffs)));
}

HodgeRationalFunction chi_hodge_product(const std::vector<CyclotomicNumber>& cs, unsigned prime) {
    HodgePolynomial numerator = canonical_prefactor_numerator(prime);
    for (const auto& c : cs) {
        if (c.prime() != prime) throw Error(ErrorCode::ConductorMismatch, "Psi coefficient conductor");
        numerator = numerator * HodgePolynomial(prime, {CyclotomicNumber(prime, 1L), c});
    }
    return over_canonical(std::move(numerator));
}

HodgeRationalFunction lee_qu_coefficient(unsigned a, unsigned prime) {
    const Bivariate& table = lee_qu_numerator();
    std::vector<Rational> coeffs(kMaxQDegree + 1, Rational(0));
    for (unsigned i = 0; i <= a && i <= static_cast<unsigned>(kMaxQ1Degree); ++i) {
        const long weight = partitions_4_6(a - i);
        if (weight == 0) continue;
        for (int j = 0; j <= kMaxQDegree; ++j) coeffs[j] += Rational(table[i][j] * weight);
    }
    return over_canonical(HodgePolynomial::rational(prime, coeffs));
}

HodgeRationalFunction chi_vertex(const VertexChiRequest& request, unsigned prime) {
    HodgeRationalFunction value(prime);
    if (!request.psi_denominator) {
        value = chi_hodge_product(request.psi_numerators, prime);
    } else if (request.psi_numerators.empty()) {
        value = chi_hodge_psi(*request.psi_denominator, prime);
    } else {
        const CyclotomicNumber& q1 = *request.psi_denominator;
        const HodgeRationalFunction full = chi_hodge_psi(q1, prime);
        const CyclotomicNumber q1_inv = q1.inverse();
        const auto e = elementary_symmetric(request.psi_numerators, prime);

        // H_a = q1^{-a} (G(q1) - sum_{b<a} q1^b G_b), all over the canonical denominator.
        HodgePolynomial total(prime);
        HodgePolynomial head(prime);  // sum_{b<a} q1^b G_b
        CyclotomicNumber q1_pow(prime, 1L);
        CyclotomicNumber q1_inv_pow(prime, 1L);
        for (std::size_t a = 0; a < e.size(); ++a) {
            HodgePolynomial tail = (full.numerator() - head).scaled(q1_inv_pow);
            const CyclotomicNumber sign = a % 2 == 0 ? e[a] : -e[a];
            total = total + tail.scaled(sign);
            head = head + lee_qu_coefficient(static_cast<unsigned>(a), prime).numerator().scaled(q1_pow);
            q1_pow *= q1;
            q1_inv_pow *= q1_inv;
        }
        value = over_canonical(std::move(total));
    }
    return request.hodge ? value : at_q_zero(value);
}

}  // namespace kgw
