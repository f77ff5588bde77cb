#include <doctest.h>

#include "kgw/errors.hpp"
#include "kgw/fjrw_formal.hpp"
#include "support.hpp"

using namespace kgw;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidConfig;
}

// x/(e^x - 1) = sum B_n x^n / n!, B_1 = -1/2.
const std::vector<Rational> kBernoulli{Rational(1),  make_rational(-1, 2), make_rational(1, 6), Rational(0),
                                       make_rational(-1, 30), Rational(0), make_rational(1, 42)};

Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= Rational(i);
    return f;
}

TRational t_power(long a) { return TRational::monomial(Rational(1), a); }

const std::vector<long> kLoopWeights{1, -4, 16, -64, 256};

}  // namespace

TEST_CASE("rational functions in t") {
    const TRational one(Rational(1));
    CHECK((TRational::one_minus_t_pow(3) * TRational::inverse_one_minus_t_pow(3)).equivalent_to(one));
    // 1/(1 - t^-2) = -t^2/(1 - t^2).
    CHECK(TRational::inverse_one_minus_t_pow(-2).equivalent_to(t_power(2).scaled(Rational(-1)) *
                                                               TRational::inverse_one_minus_t_pow(2)));
    // (1 - t^6)/(1 - t^2) = 1 + t^2 + t^4, cancelled to a polynomial.
    const TRational q = TRational::one_minus_t_pow(6) * TRational::inverse_one_minus_t_pow(2);
    CHECK(q.is_polynomial());
    CHECK(q.equivalent_to(one + t_power(2) + t_power(4)));
    const TRational s = TRational::sum({t_power(1), TRational::inverse_one_minus_t_pow(1), t_power(-1).scaled(Rational(3))});
    CHECK(s.equivalent_to(t_power(1) + TRational::inverse_one_minus_t_pow(1) + t_power(-1).scaled(Rational(3))));
    CHECK((q - q).is_zero());
}

TEST_CASE("local expansions at 1 and at roots of unity") {
    // (1 - t)^2 / (1 - t^3) = (1 - t)/(1 + t + t^2): simple zero at 1 with leading 1/3 in (1 - t).
    const TRational f = TRational::one_minus_t_pow(1) * TRational::one_minus_t_pow(1) * TRational::inverse_one_minus_t_pow(3);
    const auto at_one = expand_at_one(f);
    CHECK(at_one.order == 1);
    CHECK(at_one.leading == make_rational(1, 3));

    const auto at_root = expand_at_root(TRational::inverse_one_minus_t_pow(41), 41, 3);
    CHECK(at_root.order == -1);
    CHECK(expand_at_root(TRational::one_minus_t_pow(82), 41, 1).order == 1);
    const auto regular = expand_at_root(TRational::inverse_one_minus_t_pow(5), 41, 1);
    CHECK(regular.order == 0);
    CHECK(regular.leading == CyclotomicNumber::inverse_one_minus_zeta_power(41, 5));
    CHECK(expand_at_root(TRational(), 41, 1).zero);
}

TEST_CASE("characteristic class of a line bundle") {
    const int trunc = 6;
    for (long a : {1L, 3L, -2L}) {
        const auto series = cclass_root_series(a, 1, trunc);
        REQUIRE(series.size() == static_cast<std::size_t>(trunc + 1));
        // x + (1 - t^a) x/(e^x - 1).
        for (int n = 0; n <= trunc; ++n) {
            TRational expected = TRational::one_minus_t_pow(a).scaled(kBernoulli[n] / factorial(n));
            if (n == 1) expected = expected + TRational(Rational(1));
            CHECK(series[n].equivalent_to(expected));
        }
    }
    CHECK(cclass_root_series(1, 1, trunc)[0].equivalent_to(TRational::one_minus_t_pow(1)));
}

TEST_CASE("t = 1 on a positive bundle leaves the first Chern class") {
    const auto values = evaluate_at_one(cclass(parse_bundle("a:1"), 1, 6));
    for (const auto& [monomial, c] : values) CHECK(c == (monomial == std::vector<int>{1} ? Rational(1) : Rational(0)));
    CHECK(values.at({1}) == 1);
}

TEST_CASE("characteristic class is multiplicative") {
    const int trunc = 4;
    const TSeries ab = cclass(parse_bundle("a:1,b:-1"), 3, trunc);
    const TSeries product = cclass(parse_bundle("a:1"), 3, trunc) * cclass(parse_bundle("b:-1"), 3, trunc);
    CHECK(ab.equivalent_to(product));

    // Multiplicity 2 is the truncated square of multiplicity 1.
    const auto single = cclass_root_series(5, 1, trunc);
    const auto doubled = cclass_root_series(5, 2, trunc);
    for (int n = 0; n <= trunc; ++n) {
        std::vector<TRational> terms;
        for (int i = 0; i <= n; ++i) terms.push_back(single[i] * single[n - i]);
        CHECK(doubled[n].equivalent_to(TRational::sum(terms)));
    }
    // Multiplicity -1 inverts the series.
    const auto inverse = cclass_root_series(5, -1, trunc);
    for (int n = 0; n <= trunc; ++n) {
        std::vector<TRational> terms;
        for (int i = 0; i <= n; ++i) terms.push_back(single[i] * inverse[n - i]);
        CHECK(TRational::sum(terms).equivalent_to(TRational(Rational(n == 0 ? 1 : 0))));
    }
    CHECK(code_of([] { cclass_root_series(0, -1, 4); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("poles of negative bundles sit at 1, not at primitive roots") {
    const TSeries negative = cclass(parse_bundle("a:-1"), 3, 6);
    for (unsigned k : {1u, 2u, 40u}) CHECK_FALSE(find_pole_at_root(negative, 41, k).has_value());
    CHECK_FALSE(find_pole_at_primitive_roots(negative, 41).has_value());
    CHECK_NOTHROW(evaluate_t(negative, 41, 1));
    const auto pole = find_pole_at_one(negative);
    REQUIRE(pole.has_value());
    CHECK(pole->order > 0);
    CHECK(code_of([&] { evaluate_at_one(negative); }) == ErrorCode::PoleAtEvaluationPoint);

    // A weight divisible by 41 puts the pole at the primitive roots.
    const TSeries bad = cclass(parse_bundle("a:-1"), 41, 3);
    CHECK(find_pole_at_root(bad, 41, 1).has_value());
    CHECK(code_of([&] { evaluate_t(bad, 41, 1); }) == ErrorCode::PoleAtEvaluationPoint);

    const TSeries positive = cclass_product(parse_bundle("a:2,b:1"), kLoopWeights, 3);
    CHECK_FALSE(find_pole_at_one(positive).has_value());
    CHECK_FALSE(find_pole_at_primitive_roots(positive, 41).has_value());
    for (const auto& m : positive.monomials()) CHECK(positive.coefficient(m).is_polynomial());
}

TEST_CASE("substitution commutes with Galois conjugation") {
    const TSeries s = cclass_product(parse_bundle("a:1,b:-1"), kLoopWeights, 2);
    const EvaluatedSeries base = evaluate_t(s, 41, 3);
    for (unsigned j : {2u, 7u, 40u}) {
        const EvaluatedSeries moved = evaluate_t(s, 41, (3 * j) % 41);
        REQUIRE(moved.coefficients.size() == base.coefficients.size());
        for (const auto& [m, c] : base.coefficients) CHECK(galois_conj(c, j) == moved.coefficients.at(m));
    }
}

TEST_CASE("conjugate sum over the loop weights") {
    const B41Report empty = b41_combination(FormalBundle{}, kLoopWeights, 8);
    REQUIRE(empty.coefficients.size() == 1);
    CHECK(empty.coefficients.begin()->second == -40);
    CHECK(empty.invariance.pass);
    CHECK(empty.invariance.reduced == std::vector<std::int64_t>{1, 37, 16, 18, 10});

    // Random small bundle: each summed coefficient is minus the Galois trace of the k = 1 value.
    FormalBundle bundle;
    const char* labels[] = {"a", "b"};
    for (const char* label : labels) {
        int m = 0;
        while (m == 0) m = static_cast<int>(kgw::test::uniform(-2, 2));
        bundle.roots.push_back({label, m});
    }
    const B41Report report = b41_combination(bundle, kLoopWeights, 2);
    const EvaluatedSeries at_one = evaluate_t(cclass_product(bundle, kLoopWeights, 2), 41, 1);
    REQUIRE(report.coefficients.size() == at_one.coefficients.size());
    for (const auto& [m, c] : at_one.coefficients) CHECK(report.coefficients.at(m) == -trace_to_rational(c));
    CHECK(b41_combination(bundle, kLoopWeights, 2, 41, Execution::serial).coefficients == report.coefficients);

    CHECK(code_of([] { b41_combination(FormalBundle{}, {41, 1, 1, 1, 1}, 2); }) == ErrorCode::WeightNotCoprime);
}

TEST_CASE("loop invariance of the weight tuple") {
    const InvarianceCheck loop = loop_invariance_check(kLoopWeights, 41, 5);
    CHECK(loop.pass);
    CHECK(loop.reduced == std::vector<std::int64_t>{1, 37, 16, 18, 10});
    CHECK(loop_invariance_check({1, 37, 16, 18, 10}, 41, 5).pass);
    CHECK_FALSE(loop_invariance_check({1, 37, 16, 18, 6}, 41, 5).pass);
}

TEST_CASE("lambda classes against Adams operations") {
    CHECK(lambda_vs_adams_identity(parse_bundle("a:1"), 4, 4).equal);
    const IdentityReport empty = lambda_vs_adams_identity(FormalBundle{}, 4, 4);
    CHECK(empty.equal);
    CHECK(empty.mismatches == 0);
    const IdentityReport mixed = lambda_vs_adams_identity(parse_bundle("a:2,b:-1"), 5, 4);
    CHECK(mixed.equal);
    CHECK(mixed.coefficients_compared > 0);
}

TEST_CASE("Bernoulli numbers") {
    const auto b = bernoulli_numbers(6);
    CHECK(b == kBernoulli);
}

TEST_CASE("bundle parsing") {
    const FormalBundle b = parse_bundle("a:1,b:-2");
    REQUIRE(b.roots.size() == 2);
    CHECK(b.roots[1].label == "b");
    CHECK(b.roots[1].multiplicity == -2);
    CHECK(parse_bundle("").roots.empty());
    CHECK(code_of([] { parse_bundle("a:0"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_bundle("a:1,a:2"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_bundle("a"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_bundle("a:1,b:1,c:1,d:1,e:1,f:1,g:1,h:1"); }) == ErrorCode::InvalidConfig);
}
