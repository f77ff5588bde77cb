#include <doctest.h>

#include "kgw/congruence.hpp"
#include "kgw/errors.hpp"
#include "kgw/hodge_oracle.hpp"
#include "kgw/number_theory.hpp"
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

const CaseMeta kQuintic{1, 0, 1, 4, 5, "loop"};

const HodgeRationalFunction& flagship_b1() {
    static const HodgeRationalFunction b1 = sum_over_graphs(GraphSumRequest{});
    return b1;
}

CongruenceResult part(std::int64_t modulus, std::vector<std::int64_t> residues, std::string realization = "loop") {
    CongruenceResult r;
    r.modulus = modulus;
    r.residues = std::move(residues);
    r.prefactor = std::string(kCanonicalPrefactor);
    r.meta = kQuintic;
    r.meta.realization = std::move(realization);
    return r;
}

}  // namespace

TEST_CASE("flagship invariant mod 41") {
    const CongruenceResult r = invariant_mod_p(flagship_b1(), 41, kQuintic);
    CHECK(r.modulus == 41);
    CHECK(r.residues == std::vector<std::int64_t>{2, 16, 38});
    CHECK(r.exact_traces == std::vector<Integer>{Integer(-80), Integer(590), Integer(-85)});
    CHECK(r.prefactor == kCanonicalPrefactor);
    CHECK(r.meta == kQuintic);
}

TEST_CASE("trace from the explicit orbit matches the trace formula") {
    std::vector<HodgeRationalFunction> orbit;
    for (unsigned k = 1; k < 41; ++k) orbit.push_back(flagship_b1().conjugate(k));
    CHECK(invariant_from_orbit(orbit, 41, kQuintic) == invariant_mod_p(flagship_b1(), 41, kQuintic));
    orbit.pop_back();
    CHECK(code_of([&] { invariant_from_orbit(orbit, 41); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("invariant is unchanged by conjugating the input") {
    const CongruenceResult base = invariant_mod_p(flagship_b1(), 41, kQuintic);
    for (unsigned k : {2u, 13u, 40u}) CHECK(invariant_mod_p(flagship_b1().conjugate(k), 41, kQuintic) == base);
}

TEST_CASE("zero input") {
    const HodgeRationalFunction zero(HodgePolynomial(41), canonical_denominator(41));
    const CongruenceResult r = invariant_mod_p(zero, 41);
    CHECK(r.residues == std::vector<std::int64_t>{0});
    CHECK(r.prefactor == kCanonicalPrefactor);
}

TEST_CASE("prefactor recognition") {
    const unsigned p = 41;
    const HodgePolynomial c = HodgePolynomial::rational(p, {2, -1, 3});
    const PrefactorSplit canonical = split_prefactor(
        HodgeRationalFunction(c * canonical_prefactor_numerator(p), canonical_denominator(p)));
    CHECK(canonical.descriptor == kCanonicalPrefactor);
    CHECK(canonical.reduced == c);

    const PrefactorSplit unit = split_prefactor(HodgeRationalFunction(c, HodgePolynomial::rational(p, {2})));
    CHECK(unit.descriptor == kUnitPrefactor);
    CHECK(unit.reduced == HodgePolynomial::rational(p, {1, make_rational(-1, 2), make_rational(3, 2)}));

    CHECK(code_of([&] { split_prefactor(HodgeRationalFunction(c, canonical_denominator(p))); }) ==
          ErrorCode::UnregisteredPrefactor);
    CHECK(code_of([&] { split_prefactor(HodgeRationalFunction(c, HodgePolynomial::rational(p, {1, 1}))); }) ==
          ErrorCode::UnregisteredPrefactor);
    const HodgePolynomial irrational(p, {CyclotomicNumber(p, 1L), CyclotomicNumber::zeta_power(p, 1)});
    CHECK(code_of([&] { split_prefactor(HodgeRationalFunction(c, irrational)); }) ==
          ErrorCode::NonRationalDenominator);
}

TEST_CASE("a perturbed weight breaks integrality") {
    const auto graphs = enumerate_graphs(1, 0, 1, 4);
    const EngineParams good = make_engine_params(compute_loop_data(4, 5), 41, 1);
    CHECK_NOTHROW(invariant_mod_p(sum_over_graphs(graphs, good), 41));

    EngineParams bad = good;
    bad.t[3] = bad.t[3].scaled(Rational(2));
    CHECK(code_of([&] { invariant_mod_p(sum_over_graphs(graphs, bad), 41); }) == ErrorCode::NonIntegralTrace);

    EngineParams bad_w = good;
    bad_w.w = bad_w.w.scaled(Rational(3));
    CHECK(code_of([&] { invariant_mod_p(sum_over_graphs(graphs, bad_w), 41); }) == ErrorCode::NonIntegralTrace);
}

TEST_CASE("CRT combination") {
    const CongruenceResult mod41 = part(41, {2, 16, 38});
    const CongruenceResult mod5 = part(5, {0, 0, 0}, "fermat");
    const CongruenceResult both = crt_combine({mod41, mod5});
    CHECK(both.modulus == 205);
    CHECK(both.residues == std::vector<std::int64_t>{125, 180, 120});
    CHECK(both.meta.realization == "fermat+loop");
    CHECK(both.exact_traces.empty());
    CHECK(crt_combine({mod5, mod41}) == both);
    CHECK(crt_combine({mod41}) == mod41);

    CHECK(crt_combine({part(3, {1}), part(5, {2, 4})}).residues == std::vector<std::int64_t>{7, 9});

    CHECK(code_of([&] { crt_combine({mod41, part(82, {0, 0, 0})}); }) == ErrorCode::NonCoprimeModuli);
    CongruenceResult unit = mod5;
    unit.prefactor = std::string(kUnitPrefactor);
    CHECK(code_of([&] { crt_combine({mod41, unit}); }) == ErrorCode::PrefactorMismatch);
    CongruenceResult other = mod5;
    other.meta.beta = 2;
    CHECK(code_of([&] { crt_combine({mod41, other}); }) == ErrorCode::MetaMismatch);
    CHECK(code_of([] { crt_combine({}); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("CRT is associative and commutative") {
    const std::int64_t moduli[] = {3, 5, 7, 11, 13, 41};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<CongruenceResult> parts;
        for (int i = 0; i < 3; ++i) {
            const std::int64_t m = moduli[kgw::test::uniform(0, 5)];
            bool clash = false;
            for (const auto& q : parts) clash = clash || q.modulus == m;
            if (clash) continue;
            std::vector<std::int64_t> res;
            for (long j = 0, len = kgw::test::uniform(0, 3); j < len; ++j) res.push_back(kgw::test::uniform(-50, 50));
            parts.push_back(part(m, res));
        }
        if (parts.size() < 3) continue;
        const auto& [a, b, c] = std::tie(parts[0], parts[1], parts[2]);
        const CongruenceResult flat = crt_combine({a, b, c});
        CHECK(crt_combine({crt_combine({a, b}), c}) == flat);
        CHECK(crt_combine({a, crt_combine({b, c})}) == flat);
        CHECK(crt_combine({c, a, b}) == flat);
        CHECK(flat.modulus == a.modulus * b.modulus * c.modulus);
        for (const auto& q : parts) {
            for (std::size_t i = 0; i < flat.residues.size(); ++i) {
                const std::int64_t r = i < q.residues.size() ? q.residues[i] : 0;
                CHECK(mod_floor(flat.residues[i], q.modulus) == mod_floor(r, q.modulus));
            }
        }
    }
}

TEST_CASE("numeric cross-check against the floating-point pipeline") {
    CHECK(CyclotomicNumber(41, make_rational(3, 2)).embed(1) == std::complex<double>(1.5, 0.0));
    const CrosscheckReport report = numeric_crosscheck(GraphSumRequest{}, false);
    CHECK(report.pass);
    CHECK(report.b1_max_relative_deviation <= 1e-9);
    CHECK(report.trace_max_relative_deviation <= 1e-8);
    CHECK(relative_deviation({0.0, 0.0}, {0.0, 0.0}) == 0.0);
}
