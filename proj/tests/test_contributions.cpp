#include <doctest.h>

#include <complex>
#include <numbers>

#include "kgw/congruence.hpp"
#include "kgw/contributions.hpp"
#include "kgw/errors.hpp"
#include "kgw/hodge_oracle.hpp"
#include "kgw/symmetry.hpp"

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

EngineParams quintic(unsigned k, bool hodge = true) {
    return make_engine_params(compute_loop_data(4, 5), 41, k, hodge);
}

bool adjacent(int i, int j) { return (j - i + 5) % 5 == 1 || (i - j + 5) % 5 == 1; }

// Edge formula written out in complex doubles from the raw exponents.
std::complex<double> edge_oracle(int i, int j, const std::vector<std::int64_t>& e, int d, unsigned p) {
    auto t = [&](std::int64_t exponent) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent) / p;
        return std::complex<double>(std::cos(angle), std::sin(angle));
    };
    const std::complex<double> ti = t(e[i]);
    const std::complex<double> tj = t(e[j]);
    const std::complex<double> w = std::pow(t(e[0]), d - 1) * t(e[1]);
    std::complex<double> value = 1.0;
    for (int a = 0; a <= d; ++a) value *= 1.0 - std::pow(ti, a) * std::pow(tj, d - a) / w;
    value /= 2.0 - tj / ti - ti / tj;
    for (std::size_t m = 0; m < e.size(); ++m) {
        if (static_cast<int>(m) == i || static_cast<int>(m) == j) continue;
        const std::complex<double> tm = t(e[m]);
        value /= 1.0 - ti / tm - tj / tm + ti * tj / (tm * tm);
    }
    return value;
}

}  // namespace

TEST_CASE("engine parameters for the quintic loop") {
    const EngineParams params = quintic(1);
    CHECK(params.exponents == std::vector<std::int64_t>{0, 1, 38, 13, 31});
    CHECK(params.w_exponent == 1);
    CHECK(params.w == CyclotomicNumber::zeta_power(41, 1));
    for (std::size_t j = 0; j < 5; ++j) CHECK(params.t[j] == CyclotomicNumber::zeta_power(41, params.exponents[j]));
    CHECK(code_of([] { make_engine_params_from_exponents(5, 41, 1, {0, 1, 1, 3, 4}); }) == ErrorCode::WeightCollision);
}

TEST_CASE("edges between adjacent fixed points vanish") {
    for (unsigned k : {1u, 2u, 40u}) {
        const EngineParams params = quintic(k);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                if (i == j) continue;
                const EdgeEvaluation e = evaluate_edge(i, j, params);
                CAPTURE(i);
                CAPTURE(j);
                if (adjacent(i, j)) {
                    CHECK(e.value.is_zero());
                    REQUIRE(e.vanishing_numerator_factors.size() == 1);
                    const auto expected = (j == (i + 1) % 5) ? std::pair{4, 1} : std::pair{1, 4};
                    CHECK(e.vanishing_numerator_factors.front() == expected);
                } else {
                    CHECK_FALSE(e.value.is_zero());
                    CHECK(e.vanishing_numerator_factors.empty());
                }
                CHECK(e.denominator.size() == 4);
            }
        }
    }
}

TEST_CASE("edge values agree with the complex oracle") {
    for (unsigned k : {1u, 7u}) {
        const EngineParams params = quintic(k);
        for (auto [i, j] : {std::pair{0, 2}, std::pair{2, 0}, std::pair{1, 3}, std::pair{4, 1}}) {
            const auto exact = edge_contrib(i, j, params).embed(1);
            const auto target = edge_oracle(i, j, params.exponents, 5, 41);
            CHECK(relative_deviation(exact, target) < 1e-9);
        }
    }
}

TEST_CASE("edges under the order-5 Fermat action") {
    const EngineParams params = make_engine_params(compute_loop_data(4, 5), 5, 1);
    CHECK(params.exponents == std::vector<std::int64_t>{0, 1, 2, 3, 4});
    // a (i - j) = 1 mod 5 always has a solution, so every ordered pair carries a zero factor.
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (i == j) continue;
            const EdgeEvaluation e = evaluate_edge(i, j, params);
            CHECK(e.value.is_zero());
            CHECK(e.vanishing_numerator_factors.size() == 1);
        }
    }
    GraphSumRequest request;
    request.p = 5;
    CHECK(sum_over_graphs(request).numerator().is_zero());
}

TEST_CASE("Psi factor lists after cancellation") {
    const EngineParams params = quintic(1);
    for (const auto& g : enumerate_graphs(1, 0, 1, 4)) {
        const int i1 = g.vertices[0].fixed_point;
        const int i2 = g.vertices[1].fixed_point;
        const VertexFactors vf = flag_and_vertex_factors(g, params);
        CHECK(vf.before.numerator_coeffs.size() == 4);
        CHECK(vf.before.denominator_coeffs.size() == 2);
        CHECK(vf.hodge_parameter == params.t[i1] * params.t[(i1 + 1) % 5].inverse());
        CAPTURE(i1);
        CAPTURE(i2);
        if (i2 == (i1 + 1) % 5) {
            CHECK(vf.after.numerator_coeffs.size() == 3);
            CHECK(vf.after.denominator_coeffs.size() == 1);
        } else {
            CHECK(vf.after.numerator_coeffs.size() == 2);
            CHECK(vf.after.denominator_coeffs.empty());
        }
    }
}

TEST_CASE("graph contributions carry the canonical prefactor") {
    for (unsigned k : {1u, 3u, 29u}) {
        const EngineParams params = quintic(k);
        for (const auto& g : enumerate_graphs(1, 0, 1, 4)) {
            const int i1 = g.vertices[0].fixed_point;
            const int i2 = g.vertices[1].fixed_point;
            const GraphContribution c = evaluate_graph(g, params);
            if (adjacent(i1, i2)) {
                CHECK(c.total.numerator().is_zero());
                continue;
            }
            // edge * (1 - q^4 - q^6)/((1 - q^4)(1 - q^6)) * prod over the two survivors of (1 + (t_i1/t_m) q).
            std::vector<CyclotomicNumber> cs;
            for (int m = 0; m < 5; ++m) {
                if (m != i1 && m != i2 && m != (i1 + 1) % 5) cs.push_back(params.t[i1] / params.t[m]);
            }
            REQUIRE(cs.size() == 2);
            const HodgeRationalFunction expected = chi_hodge_product(cs, 41).scaled(edge_contrib(i1, i2, params));
            CHECK(c.total.equivalent_to(expected));
            CHECK(c.total.denominator() == canonical_denominator(41));
        }
    }
}

TEST_CASE("reduced numerator has degree at most two") {
    GraphSumRequest request;
    const HodgeRationalFunction b1 = sum_over_graphs(request);
    const PrefactorSplit split = split_prefactor(b1);
    CHECK(split.descriptor == kCanonicalPrefactor);
    CHECK(split.reduced.degree() <= 2);
}

TEST_CASE("switching the Hodge insertion off keeps the q = 0 value") {
    GraphSumRequest on;
    GraphSumRequest off;
    off.hodge_insertion = false;
    const HodgeRationalFunction b_on = sum_over_graphs(on);
    const HodgeRationalFunction b_off = sum_over_graphs(off);
    CHECK(b_off.denominator() == HodgePolynomial::rational(41, {1}));
    CHECK(b_off.evaluate(Rational(0)) == b_on.evaluate(Rational(0)));
}

TEST_CASE("Galois conjugation of the graph sum") {
    GraphSumRequest r1;
    GraphSumRequest r2;
    r2.k = 2;
    GraphSumRequest r5;
    r5.k = 5;
    const HodgeRationalFunction b1 = sum_over_graphs(r1);
    CHECK(sum_over_graphs(r2) == b1.conjugate(2));
    CHECK(sum_over_graphs(r5) == b1.conjugate(5));
}

TEST_CASE("serial and parallel kernels agree exactly") {
    GraphSumRequest request;
    CHECK(sum_over_graphs(request, Execution::serial) == sum_over_graphs(request, Execution::parallel));
    const EngineParams params = quintic(3);
    const auto graphs = enumerate_graphs(1, 0, 1, 4);
    const auto serial = evaluate_graphs(graphs, params, Execution::serial);
    const auto parallel = evaluate_graphs(graphs, params, Execution::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t g = 0; g < serial.size(); ++g) CHECK(serial[g].total == parallel[g].total);
}

TEST_CASE("interpolation recovers the reduced numerator") {
    const EngineParams params = quintic(1);
    const auto graphs = enumerate_graphs(1, 0, 1, 4);
    const HodgePolynomial interpolated = numerator_by_interpolation(graphs, params);
    const PrefactorSplit split = split_prefactor(sum_over_graphs(graphs, params));
    CHECK(interpolated == split.reduced);
}

TEST_CASE("engine errors") {
    const EngineParams params = quintic(1);
    CHECK(code_of([&] { evaluate_edge(0, 2, params, 2); }) == ErrorCode::UnsupportedEdgeDegree);
    CHECK(code_of([&] { evaluate_edge(0, 5, params); }) == ErrorCode::IndexOutOfRange);
    GraphSumRequest bad;
    bad.p = 7;
    CHECK(code_of([&] { sum_over_graphs(bad); }) == ErrorCode::PreconditionFailure);
    GraphSumRequest genus_two;
    genus_two.g = 2;
    CHECK(code_of([&] { sum_over_graphs(genus_two); }) == ErrorCode::UnsupportedCase);
}
